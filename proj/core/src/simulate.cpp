#include "ltlab/simulate.hpp"

#include <cmath>
#include <numbers>

#include "ltlab/errors.hpp"

namespace ltlab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool known_deterministic(const std::string& name) {
    return name == "linear" || name == "sine" || name == "zigzag" || name == "constant";
}

void require_sigma(double sigma, const char* kind) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument(std::string(kind) + ": sigma must be positive");
    }
}

std::vector<double> constant_rate_qv(double rate, const TimeGrid& grid) {
    std::vector<double> qv(grid.n_points());
    for (std::size_t i = 0; i < qv.size(); ++i) qv[i] = rate * grid.point(i);
    return qv;
}

}  // namespace

std::string process_kind(const ProcessSpec& spec) {
    return std::visit(overloaded{
                          [](const Brownian&) { return std::string("brownian"); },
                          [](const DriftedBrownian&) { return std::string("drifted_brownian"); },
                          [](const OrnsteinUhlenbeck&) { return std::string("ornstein_uhlenbeck"); },
                          [](const GeometricBrownian&) { return std::string("geometric_brownian"); },
                          [](const Deterministic& d) { return "deterministic:" + d.name; },
                      },
                      spec);
}

void validate(const ProcessSpec& spec) {
    std::visit(overloaded{
                   [](const Brownian&) {},
                   [](const DriftedBrownian& p) {
                       require_sigma(p.sigma, "drifted_brownian");
                       if (!std::isfinite(p.mu)) throw InvalidArgument("drifted_brownian: mu must be finite");
                   },
                   [](const OrnsteinUhlenbeck& p) {
                       require_sigma(p.sigma, "ornstein_uhlenbeck");
                       if (!(p.theta > 0.0) || !std::isfinite(p.theta)) {
                           throw InvalidArgument("ornstein_uhlenbeck: theta must be positive");
                       }
                       if (!std::isfinite(p.x0)) throw InvalidArgument("ornstein_uhlenbeck: x0 must be finite");
                   },
                   [](const GeometricBrownian& p) {
                       require_sigma(p.sigma, "geometric_brownian");
                       if (!(p.x0 > 0.0) || !std::isfinite(p.x0)) {
                           throw InvalidArgument("geometric_brownian: x0 must be positive");
                       }
                       if (!std::isfinite(p.mu)) throw InvalidArgument("geometric_brownian: mu must be finite");
                   },
                   [](const Deterministic& d) {
                       if (!known_deterministic(d.name)) {
                           throw InvalidArgument("unknown deterministic path '" + d.name + "'");
                       }
                   },
               },
               spec);
}

double GaussianStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u = 0.0;
    double v = 0.0;
    double r2 = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        r2 = u * u + v * v;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(r2) / r2);
    cached_ = v * scale;
    has_cached_ = true;
    return u * scale;
}

Path simulate(const ProcessSpec& spec, const TimeGrid& grid, const SeedPolicy& seed, QvMode qv_mode) {
    validate(spec);
    if (const auto* det = std::get_if<Deterministic>(&spec)) {
        return deterministic_path(det->name, grid);
    }

    const std::size_t n = grid.n_steps();
    const double dt = grid.dt();
    const double sqdt = std::sqrt(dt);
    GaussianStream gauss(stream_seed(seed));
    std::vector<double> x(n + 1);
    double analytic_rate = 1.0;

    std::visit(overloaded{
                   [&](const Brownian&) {
                       x[0] = 0.0;
                       for (std::size_t i = 0; i < n; ++i) x[i + 1] = x[i] + sqdt * gauss.next();
                   },
                   [&](const DriftedBrownian& p) {
                       x[0] = 0.0;
                       const double drift = p.mu * dt;
                       const double vol = p.sigma * sqdt;
                       for (std::size_t i = 0; i < n; ++i) x[i + 1] = x[i] + drift + vol * gauss.next();
                       analytic_rate = p.sigma * p.sigma;
                   },
                   [&](const OrnsteinUhlenbeck& p) {
                       x[0] = p.x0;
                       const double decay = std::exp(-p.theta * dt);
                       const double vol = p.sigma * std::sqrt(-std::expm1(-2.0 * p.theta * dt) / (2.0 * p.theta));
                       for (std::size_t i = 0; i < n; ++i) x[i + 1] = x[i] * decay + vol * gauss.next();
                       analytic_rate = p.sigma * p.sigma;
                   },
                   [&](const GeometricBrownian& p) {
                       x[0] = p.x0;
                       const double drift = (p.mu - 0.5 * p.sigma * p.sigma) * dt;
                       const double vol = p.sigma * sqdt;
                       for (std::size_t i = 0; i < n; ++i) x[i + 1] = x[i] * std::exp(drift + vol * gauss.next());
                   },
                   [](const Deterministic&) {},
               },
               spec);

    std::vector<double> qv;
    if (qv_mode == QvMode::realized) {
        qv = realized_qv(x);
    } else if (const auto* g = std::get_if<GeometricBrownian>(&spec)) {
        // d<X>_s = sigma^2 X_s^2 ds, integrated by the trapezoid rule.
        const double s2 = g->sigma * g->sigma;
        qv.assign(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            qv[i + 1] = qv[i] + 0.5 * s2 * (x[i] * x[i] + x[i + 1] * x[i + 1]) * dt;
        }
    } else {
        qv = constant_rate_qv(analytic_rate, grid);
    }
    return Path(grid, std::move(x), std::move(qv));
}

Path deterministic_path(const std::string& name, const TimeGrid& grid) {
    if (!known_deterministic(name)) {
        throw InvalidArgument("unknown deterministic path '" + name + "'");
    }
    std::vector<double> x(grid.n_points());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = grid.point(i);
        if (name == "linear") {
            x[i] = s;
        } else if (name == "sine") {
            x[i] = std::sin(2.0 * std::numbers::pi * s);
        } else if (name == "zigzag") {
            x[i] = static_cast<double>(i % 2);
        } else {
            x[i] = 0.0;
        }
    }
    auto qv = realized_qv(x);
    return Path(grid, std::move(x), std::move(qv));
}

Path with_prescribed_qv(const Path& path, std::vector<double> qv) {
    return Path(path.grid, path.values, std::move(qv));
}

}  // namespace ltlab
