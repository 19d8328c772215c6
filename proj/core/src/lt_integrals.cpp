#include "ltlab/lt_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltlab/detail/compensated_sum.hpp"
#include "ltlab/errors.hpp"

namespace ltlab {
namespace {

void require_empty_margins(std::span<const double> values, const char* who) {
    if (values.empty() || values.front() != 0.0 || values.back() != 0.0) {
        throw RangeError(std::string(who) + ": local time reaches the space grid boundary");
    }
}

void require_space_only(const TestFunction& f, const char* who) {
    if (f.arity() != Arity::space_only) {
        throw InvalidArgument(std::string(who) + ": F must be a space-only function");
    }
}

template <class Bracket>
double qv_weighted_sum(const Path& path, double t, Bracket bracket) {
    const std::size_t k = path.grid.index_of(t);
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < k; ++i) {
        sum.add(bracket(path.grid.point(i), path.values[i]) * path.qv_increment(i));
    }
    return sum.value();
}

void require_positive_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("estimator: eps must be positive");
}

}  // namespace

std::string to_string(Variant v) {
    switch (v) {
        case Variant::forward: return "forward";
        case Variant::backward: return "backward";
        case Variant::symmetric: return "symmetric";
    }
    return "forward";
}

std::string to_string(SignConvention c) { return c == SignConvention::resolved ? "resolved" : "paper"; }

Variant parse_variant(const std::string& s) {
    if (s == "forward") return Variant::forward;
    if (s == "backward") return Variant::backward;
    if (s == "symmetric") return Variant::symmetric;
    throw InvalidArgument("unknown variant '" + s + "'");
}

SignConvention parse_sign_convention(const std::string& s) {
    if (s == "resolved") return SignConvention::resolved;
    if (s == "paper") return SignConvention::paper;
    throw InvalidArgument("unknown sign convention '" + s + "'");
}

EstimatorResult EstimatorResult::make(double epsilon, double lhs, double rhs, Variant v, SignConvention c) {
    EstimatorResult r{epsilon, lhs, rhs, std::abs(lhs - rhs), 0.0, v, c};
    r.rel_err = r.abs_err / std::max(std::abs(rhs), kRelErrFloor);
    return r;
}

double stieltjes_space_integral(const std::function<double(double)>& f, const LocalTimeField& field) {
    require_empty_margins(field.values, "stieltjes_space_integral");
    detail::CompensatedSum sum;
    double prev = 0.0;
    for (std::size_t j = 0; j < field.values.size(); ++j) {
        const double dl = field.values[j] - prev;
        if (dl != 0.0) sum.add(f(field.space.edge(j)) * dl);
        prev = field.values[j];
    }
    return sum.value();
}

double stieltjes_space_integral(const TestFunction& f, const LocalTimeField& field) {
    require_space_only(f, "stieltjes_space_integral");
    return stieltjes_space_integral([&f](double x) { return f(x); }, field);
}

double lhs_forward(const TestFunction& f, const Path& path, double eps, double t) {
    require_positive_eps(eps);
    return qv_weighted_sum(path, t, [&](double s, double x) { return f(s, x) - f(s, x + eps); }) / eps;
}

double lhs_backward(const TestFunction& f, const Path& path, double eps, double t) {
    require_positive_eps(eps);
    return qv_weighted_sum(path, t, [&](double s, double x) { return f(s, x) - f(s, x - eps); }) / eps;
}

double lhs_symmetric(const TestFunction& f, const Path& path, double eps, double t) {
    require_positive_eps(eps);
    return qv_weighted_sum(path, t, [&](double s, double x) { return f(s, x - eps) - f(s, x + eps); }) /
           (2.0 * eps);
}

double lhs(Variant v, const TestFunction& f, const Path& path, double eps, double t) {
    switch (v) {
        case Variant::forward: return lhs_forward(f, path, eps, t);
        case Variant::backward: return lhs_backward(f, path, eps, t);
        case Variant::symmetric: return lhs_symmetric(f, path, eps, t);
    }
    return 0.0;
}

IdentityCheck identity_check(const TestFunction& f, const Path& path, const SpaceGrid& space, int m, double t) {
    require_space_only(f, "identity_check");
    if (m < 1) throw InvalidArgument("identity_check: m must be >= 1");
    const std::size_t k = path.grid.index_of(t);
    const auto um = static_cast<std::size_t>(m);
    const auto [lo, hi] = path_range(path, k);
    if (!space.contains(lo) || !space.contains(hi) || space.bin_of(lo) < um ||
        space.bin_of(hi) + um >= space.n_bins()) {
        std::ostringstream msg;
        msg << "identity_check: space grid needs " << m << " empty bin(s) on each side of the path range";
        throw RangeError(msg.str());
    }
    const double width = space.width();
    const double eps = static_cast<double>(m) * width;
    auto f_edge = [&](std::size_t j) { return f(space.x_min() + static_cast<double>(j) * width); };

    detail::CompensatedSum left;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t b = space.bin_of(path.values[i]);
        left.add((f_edge(b) - f_edge(b + um)) * path.qv_increment(i));
    }

    const LocalTimeField field = occupation_local_time(path, space, t);
    auto mollified = [&](double x) {
        // x is a left edge x_j; recover j exactly from the grid.
        const auto j = static_cast<std::size_t>(std::llround((x - space.x_min()) / width));
        double h = 0.0;
        for (std::size_t q = j; q < j + um; ++q) h += f_edge(q);
        return h / static_cast<double>(m);
    };

    IdentityCheck r;
    r.lhs = left.value() / eps;
    r.rhs = stieltjes_space_integral(mollified, field);
    r.defect = std::abs(r.lhs - r.rhs);
    r.rel_defect = r.defect / std::max(1.0, std::abs(r.rhs));
    return r;
}

double two_param_integral(const TestFunction& f, const LocalTimeSheet& sheet) {
    const auto& space = sheet.space();
    const auto& times = sheet.checkpoints();
    require_empty_margins(sheet.row(sheet.n_rows() - 1), "two_param_integral");
    detail::CompensatedSum sum;
    for (const auto& inc : sheet.increments()) {
        const double s = times[inc.row];
        const double d = inc.mass / space.width();
        // D(k, j) enters rect(k, j) with + and rect(k, j + 1) with -.
        sum.add((f(s, space.edge(inc.bin)) - f(s, space.edge(inc.bin + 1))) * d);
    }
    return sum.value();
}

OccupationCheck occupation_formula_check(const TestFunction& f, const Path& path, const LocalTimeSheet& sheet) {
    const double t = sheet.checkpoints().back();
    OccupationCheck r;
    r.lhs = qv_weighted_sum(path, t, [&](double s, double x) { return f(s, x); });
    const auto& space = sheet.space();
    const auto& times = sheet.checkpoints();
    detail::CompensatedSum sum;
    for (const auto& inc : sheet.increments()) sum.add(f(times[inc.row], space.edge(inc.bin)) * inc.mass);
    r.rhs = sum.value();
    r.defect = std::abs(r.lhs - r.rhs);
    return r;
}

double theorem_rhs(Variant v, SignConvention c, double integral) {
    switch (v) {
        case Variant::forward: return c == SignConvention::resolved ? integral : -integral;
        case Variant::backward: return -integral;
        case Variant::symmetric: return integral;
    }
    return integral;
}

void validate_eps_ladder(std::span<const double> eps_ladder, double bin_width) {
    if (eps_ladder.empty()) throw InvalidArgument("eps_ladder: empty");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] >= bin_width)) {
            std::ostringstream msg;
            msg << "eps_ladder: eps " << eps_ladder[i] << " is below the bin width " << bin_width;
            throw InvalidArgument(msg.str());
        }
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])) {
            throw InvalidArgument("eps_ladder: must be strictly decreasing");
        }
    }
}

double local_time_integral(const TestFunction& f, const Path& path, const SpaceGrid& space, double t) {
    if (f.arity() == Arity::space_only) {
        return stieltjes_space_integral(f, occupation_local_time(path, space, t));
    }
    return two_param_integral(f, dense_local_time_sheet(path, space, t));
}

std::vector<EstimatorResult> theorem_convergence(const TestFunction& f, Variant v, const Path& path,
                                                 std::span<const double> eps_ladder, const SpaceGrid& space,
                                                 double t, SignConvention c) {
    validate_eps_ladder(eps_ladder, space.width());
    const double integral = local_time_integral(f, path, space, t);
    const double rhs = theorem_rhs(v, c, integral);
    std::vector<EstimatorResult> out;
    out.reserve(eps_ladder.size());
    for (double eps : eps_ladder) {
        out.push_back(EstimatorResult::make(eps, lhs(v, f, path, eps, t), rhs, v, c));
    }
    return out;
}

}  // namespace ltlab
