#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltlab/test_function.hpp"

namespace ltlab {

/// Grid-restricted p-variation: the maximum of sum |F(x_{i_{k+1}}) - F(x_{i_k})|^p
/// over all increasing index chains i_0 < ... < i_r of the samples.
///
/// Computed by the O(n^2) recursion best[j] = max_{i<j} best[i] + |x_j - x_i|^p.
/// Because floating-point addition is monotone, the result is bit-identical to
/// the maximum over explicitly enumerated chains summed left to right.
/// Throws InvalidArgument for p < 1 or fewer than two samples.
double p_variation(std::span<const double> samples, double p);

enum class WindowRule { exact, midpoint };

/// H_eps(s, x) = (1/eps) * int_x^{x+eps} F(s, y) dy.
class Mollifier {
public:
    /// Composite midpoint substeps. The window-mean error is at most
    /// V(F on window) / substeps for bounded-variation F and
    /// eps^2 * max|F''| / (24 * substeps^2) for C^2 pieces.
    static constexpr int kMidpointSubsteps = 256;

    Mollifier(TestFunction f, double eps, WindowRule rule = WindowRule::exact);

    double operator()(double x) const { return (*this)(0.0, x); }
    double operator()(double s, double x) const;

    double eps() const { return eps_; }
    const TestFunction& base() const { return f_; }

private:
    TestFunction f_;
    double eps_;
    WindowRule rule_;
};

/// Space mollifier; exact closed form for every catalog entry unless
/// `rule` asks for the midpoint quadrature.
Mollifier mollify_1d(const TestFunction& f, double eps, WindowRule rule = WindowRule::exact);
/// Per-time-slice mollifier of a time-space function.
Mollifier mollify_2d(const TestFunction& f, double eps, WindowRule rule = WindowRule::exact);

struct ContractionResult {
    double v_f = 0.0;
    double v_h = 0.0;
    bool ok = false;
};

/// Compares the p-variation of H_eps with that of F.
///
/// F is sampled on all points; H_eps on the points x with x + eps <= samples.back(),
/// the last eps of the grid being the margin H reads F from. Breakpoints of F
/// should be among the samples (see sample_points_with_breakpoints).
/// ok = v_h <= v_f * (1 + 1e-9).
ContractionResult mollifier_contraction_check(const TestFunction& f, double eps, double p,
                                              std::span<const double> samples);

/// Uniform points on [lo, hi] merged with F's breakpoints inside the interval.
std::vector<double> sample_points_with_breakpoints(const TestFunction& f, double lo, double hi,
                                                   std::size_t n_points);

/// Values of F(s_k, x_j) on a rows x cols lattice, row-major (rows = time).
struct Lattice {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double at(std::size_t k, std::size_t j) const { return values[k * cols + j]; }

    static Lattice sample(const TestFunction& f, std::span<const double> times,
                          std::span<const double> xs);
};

/// F(s_{k+1}, x_{j+1}) - F(s_{k+1}, x_j) - F(s_k, x_{j+1}) + F(s_k, x_j)
double rectangular_increment(const Lattice& lattice, std::size_t k, std::size_t j);

/// Fixed-grid (p, q)-variation functional
/// ( sum_k ( sum_j |rect(k, j)|^p )^{q/p} )^{1/q}; no supremum over partitions.
double pq_variation_grid(const Lattice& lattice, double p, double q);

}  // namespace ltlab
