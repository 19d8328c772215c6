#include "ltlab/variation.hpp"

#include <algorithm>
#include <cmath>

#include "ltlab/errors.hpp"

namespace ltlab {

double p_variation(std::span<const double> samples, double p) {
    if (!(p >= 1.0)) throw InvalidArgument("p_variation: p must be >= 1");
    if (samples.size() < 2) throw InvalidArgument("p_variation: need at least two samples");
    const std::size_t n = samples.size();
    std::vector<double> best(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        double b = 0.0;
        for (std::size_t i = 0; i < j; ++i) {
            const double d = std::abs(samples[j] - samples[i]);
            const double term = p == 1.0 ? d : std::pow(d, p);
            b = std::max(b, best[i] + term);
        }
        best[j] = b;
    }
    return best[n - 1];
}

Mollifier::Mollifier(TestFunction f, double eps, WindowRule rule) : f_(std::move(f)), eps_(eps), rule_(rule) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("mollifier: eps must be positive");
}

double Mollifier::operator()(double s, double x) const {
    if (rule_ == WindowRule::exact) return f_.window_mean(s, x, eps_);
    const double h = eps_ / kMidpointSubsteps;
    double sum = 0.0;
    for (int k = 0; k < kMidpointSubsteps; ++k) sum += f_(s, x + (k + 0.5) * h);
    return sum / kMidpointSubsteps;
}

Mollifier mollify_1d(const TestFunction& f, double eps, WindowRule rule) { return Mollifier(f, eps, rule); }

Mollifier mollify_2d(const TestFunction& f, double eps, WindowRule rule) { return Mollifier(f, eps, rule); }

ContractionResult mollifier_contraction_check(const TestFunction& f, double eps, double p,
                                              std::span<const double> samples) {
    if (samples.size() < 2) throw InvalidArgument("contraction check: need at least two samples");
    const Mollifier h(f, eps);
    const double limit = samples.back() - eps;

    std::vector<double> fv;
    std::vector<double> hv;
    fv.reserve(samples.size());
    for (double x : samples) {
        fv.push_back(f(x));
        if (x <= limit) hv.push_back(h(x));
    }
    if (hv.size() < 2) throw InvalidArgument("contraction check: grid shorter than the eps margin");

    ContractionResult r;
    r.v_f = p_variation(fv, p);
    r.v_h = p_variation(hv, p);
    r.ok = r.v_h <= r.v_f * (1.0 + 1e-9);
    return r;
}

std::vector<double> sample_points_with_breakpoints(const TestFunction& f, double lo, double hi,
                                                   std::size_t n_points) {
    if (n_points < 2 || !(lo < hi)) throw InvalidArgument("sample points: need lo < hi and two points");
    std::vector<double> xs(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
    for (double b : f.breakpoints()) {
        if (b > lo && b < hi) xs.push_back(b);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

Lattice Lattice::sample(const TestFunction& f, std::span<const double> times, std::span<const double> xs) {
    Lattice l{times.size(), xs.size(), std::vector<double>(times.size() * xs.size())};
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (std::size_t j = 0; j < xs.size(); ++j) l.values[k * xs.size() + j] = f(times[k], xs[j]);
    }
    return l;
}

double rectangular_increment(const Lattice& l, std::size_t k, std::size_t j) {
    return l.at(k + 1, j + 1) - l.at(k + 1, j) - l.at(k, j + 1) + l.at(k, j);
}

double pq_variation_grid(const Lattice& lattice, double p, double q) {
    if (lattice.rows < 2 || lattice.cols < 2 || lattice.values.size() != lattice.rows * lattice.cols) {
        throw InvalidArgument("pq_variation_grid: lattice must be at least 2x2");
    }
    if (!(p >= 1.0) || !(q >= 1.0)) throw InvalidArgument("pq_variation_grid: p and q must be >= 1");
    double outer = 0.0;
    for (std::size_t k = 0; k + 1 < lattice.rows; ++k) {
        double inner = 0.0;
        for (std::size_t j = 0; j + 1 < lattice.cols; ++j) {
            inner += std::pow(std::abs(rectangular_increment(lattice, k, j)), p);
        }
        outer += std::pow(inner, q / p);
    }
    return std::pow(outer, 1.0 / q);
}

}  // namespace ltlab
