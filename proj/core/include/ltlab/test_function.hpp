#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ltlab {

namespace rule {
/// F(x) = value
struct Constant {
    double value = 0.0;
    bool operator==(const Constant&) const = default;
};
/// F(x) = 1{x <= level}; left continuous.
struct Indicator {
    double level = 0.0;
    bool operator==(const Indicator&) const = default;
};
/// F(x) = x
struct Linear {
    bool operator==(const Linear&) const = default;
};
/// F(x) = sum_i weights[i] * 1{x <= levels[i]}, levels strictly increasing.
struct StepCombo {
    std::vector<double> levels;
    std::vector<double> weights;
    std::vector<double> tail_sums;  // tail_sums[i] = sum_{k >= i} weights[k]; one extra trailing 0
    bool operator==(const StepCombo&) const = default;
};
/// F(x) = |x - center|^alpha, alpha in (1/2, 1].
struct Holder {
    double alpha = 1.0;
    double center = 0.0;
    bool operator==(const Holder&) const = default;
};
/// F(x) = cos(x)
struct Cosine {
    bool operator==(const Cosine&) const = default;
};
}  // namespace rule

using SpaceRule =
    std::variant<rule::Constant, rule::Indicator, rule::Linear, rule::StepCombo, rule::Holder, rule::Cosine>;

/// Time factor g(s) of a product function g(s) * h(x).
enum class TimeFactor { one, identity, exp_decay };

enum class Arity { space_only, time_space };

/// Catalog test function F(s, x) = g(s) * h(x) with exact evaluation and an
/// exact window mean (1/eps) * int_x^{x+eps} F(s, y) dy.
class TestFunction {
public:
    static TestFunction constant(double c);
    static TestFunction indicator(double level);
    static TestFunction linear();
    static TestFunction step_combo(std::vector<double> levels, std::vector<double> weights);
    static TestFunction holder(double alpha, double center);
    static TestFunction cosine();
    static TestFunction product(TimeFactor g, const TestFunction& h);

    /// Parses the catalog syntax produced by to_string(), e.g.
    /// "indicator(0)", "step_combo(-0.5:1, 0.25:-2)", "product(exp_decay, cosine)".
    static TestFunction parse(std::string_view text);
    std::string to_string() const;

    Arity arity() const { return time_ == TimeFactor::one ? Arity::space_only : Arity::time_space; }
    TimeFactor time_factor() const { return time_; }
    const SpaceRule& space_rule() const { return space_; }

    double operator()(double x) const { return space_value(x); }
    double operator()(double s, double x) const { return time_value(s) * space_value(x); }

    /// Exact (1/eps) * int_x^{x+eps} F(s, y) dy.
    double window_mean(double s, double x, double eps) const;

    /// Points where F(s, .) fails to be smooth or monotone (jumps, kinks).
    std::vector<double> breakpoints() const;

    /// Bound on |F(s, x) - F(s, y)| / |x - y| for s in [0, t], if finite.
    std::optional<double> lipschitz_x(double t) const;

    bool operator==(const TestFunction&) const = default;

private:
    TestFunction(TimeFactor g, SpaceRule h) : time_(g), space_(std::move(h)) {}

    double time_value(double s) const;
    double space_value(double x) const;

    TimeFactor time_ = TimeFactor::one;
    SpaceRule space_;
};

std::string to_string(TimeFactor g);

}  // namespace ltlab
