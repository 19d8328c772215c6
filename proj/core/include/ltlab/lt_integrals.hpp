#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ltlab/grid.hpp"
#include "ltlab/local_time.hpp"
#include "ltlab/test_function.hpp"

namespace ltlab {

enum class Variant { forward, backward, symmetric };

/// Sign attached to the local-time side of the forward formula.
/// `resolved`: (1/eps) int {F(X) - F(X + eps)} d<X> -> +int F d_x L.
/// `paper`:    the same limit with the printed minus sign, -int F d_x L.
/// Backward and symmetric variants carry the same sign under both conventions.
enum class SignConvention { resolved, paper };

std::string to_string(Variant v);
std::string to_string(SignConvention c);
Variant parse_variant(const std::string& s);
SignConvention parse_sign_convention(const std::string& s);

inline constexpr double kRelErrFloor = 1e-8;

struct EstimatorResult {
    double epsilon = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    Variant variant = Variant::forward;
    SignConvention sign_convention = SignConvention::resolved;

    /// Fills abs_err = |lhs - rhs| and rel_err = abs_err / max(|rhs|, 1e-8).
    static EstimatorResult make(double epsilon, double lhs, double rhs, Variant v, SignConvention c);
};

/// sum_j F(x_j) (L^{x_j} - L^{x_{j-1}}), L^{x_{-1}} = 0, x_j the left bin edges.
/// The first and last bins must be empty (RangeError otherwise) so that the
/// trailing increment -L^{x_last} vanishes.
double stieltjes_space_integral(const std::function<double(double)>& f, const LocalTimeField& field);
double stieltjes_space_integral(const TestFunction& f, const LocalTimeField& field);

/// (1/eps) sum_{s_i < t} {F(s_i, X_i) - F(s_i, X_i + eps)} dqv_i
double lhs_forward(const TestFunction& f, const Path& path, double eps, double t);
/// (1/eps) sum_{s_i < t} {F(s_i, X_i) - F(s_i, X_i - eps)} dqv_i
double lhs_backward(const TestFunction& f, const Path& path, double eps, double t);
/// (1/(2 eps)) sum_{s_i < t} {F(s_i, X_i - eps) - F(s_i, X_i + eps)} dqv_i
double lhs_symmetric(const TestFunction& f, const Path& path, double eps, double t);

double lhs(Variant v, const TestFunction& f, const Path& path, double eps, double t);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double defect = 0.0;
    double rel_defect = 0.0;  // defect / max(1, |rhs|)
};

/// Discrete form of int H_eps d_x L = (1/eps) int {F(X) - F(X + eps)} d<X>
/// with eps = m * width and F binned to left bin edges:
///   lhs = (1/eps) sum_i {F(x_{b_i}) - F(x_{b_i + m})} dqv_i,   b_i = bin of X_i,
///   rhs = sum_j H_j (L_j - L_{j-1}),   H_j = (1/m) sum_{k=j}^{j+m-1} F(x_k).
/// Summation by parts makes the two sides equal term by term; neither side
/// carries an index shift. Requires m empty bins on both sides of the path
/// range (RangeError) and a space-only F.
IdentityCheck identity_check(const TestFunction& f, const Path& path, const SpaceGrid& space, int m, double t);

/// sum_k sum_j F(s_k, x_j) rect(k, j), with rect(k, j) = D(k, j) - D(k, j - 1) and
/// D(k, j) = L_{s_{k+1}}^{x_j} - L_{s_k}^{x_j}. First and last bins of the
/// final row must be empty (RangeError).
double two_param_integral(const TestFunction& f, const LocalTimeSheet& sheet);

struct OccupationCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double defect = 0.0;
};

/// lhs = sum_{s_i < t} f(s_i, X_i) dqv_i;
/// rhs = sum_j width * sum_k f(s_k, x_j) (L_{s_{k+1}}^{x_j} - L_{s_k}^{x_j}),
/// with t the sheet's last checkpoint.
OccupationCheck occupation_formula_check(const TestFunction& f, const Path& path, const LocalTimeSheet& sheet);

/// Local-time side of the variant's limit: +I for forward (resolved), -I for
/// forward (paper), -I for backward, +I for symmetric, where I is
/// stieltjes_space_integral on the field at t for space-only F and
/// two_param_integral on the dense sheet otherwise.
double theorem_rhs(Variant v, SignConvention c, double integral);

/// One EstimatorResult per eps. The ladder must be strictly decreasing with
/// every eps >= the bin width (InvalidArgument otherwise).
std::vector<EstimatorResult> theorem_convergence(const TestFunction& f, Variant v, const Path& path,
                                                 std::span<const double> eps_ladder, const SpaceGrid& space,
                                                 double t, SignConvention c = SignConvention::resolved);

/// The local-time integral I used by theorem_convergence.
double local_time_integral(const TestFunction& f, const Path& path, const SpaceGrid& space, double t);

void validate_eps_ladder(std::span<const double> eps_ladder, double bin_width);

}  // namespace ltlab
