#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "ltlab/grid.hpp"

namespace ltlab {

struct Brownian {
    bool operator==(const Brownian&) const = default;
};
/// X_t = mu t + sigma W_t
struct DriftedBrownian {
    double mu = 0.0;
    double sigma = 1.0;
    bool operator==(const DriftedBrownian&) const = default;
};
/// dX = -theta X dt + sigma dW, X_0 = x0
struct OrnsteinUhlenbeck {
    double theta = 1.0;
    double sigma = 1.0;
    double x0 = 0.0;
    bool operator==(const OrnsteinUhlenbeck&) const = default;
};
/// dX = mu X dt + sigma X dW, X_0 = x0 > 0
struct GeometricBrownian {
    double mu = 0.0;
    double sigma = 1.0;
    double x0 = 1.0;
    bool operator==(const GeometricBrownian&) const = default;
};
/// One of: linear, sine, zigzag, constant.
struct Deterministic {
    std::string name = "linear";
    bool operator==(const Deterministic&) const = default;
};

using ProcessSpec =
    std::variant<Brownian, DriftedBrownian, OrnsteinUhlenbeck, GeometricBrownian, Deterministic>;

/// Short kind name ("brownian", "ornstein_uhlenbeck", ...).
std::string process_kind(const ProcessSpec& spec);

/// Throws InvalidArgument unless sigma > 0 (stochastic kinds), theta > 0 (OU),
/// x0 > 0 (GBM) and the deterministic name is known.
void validate(const ProcessSpec& spec);

enum class QvMode { realized, analytic };

struct SeedPolicy {
    std::uint64_t base_seed = 0;
    std::uint64_t path_id = 0;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-path stream seed: mix64(base_seed + (path_id + 1) * golden_gamma).
/// Injective in path_id for a fixed base_seed.
constexpr std::uint64_t stream_seed(const SeedPolicy& seed) {
    return mix64(seed.base_seed + (seed.path_id + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Standard normal variates from a mt19937_64 stream.
///
/// Uniforms take the top 53 bits of each 64-bit draw; normals use the
/// Marsaglia polar method and cache the second variate of each pair. Only
/// IEEE arithmetic, sqrt and log are involved, so the stream is reproducible
/// wherever the platform's log is (glibc's is).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double next();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Sample path of the process on the grid. Stochastic kinds start at 0
/// (brownian, drifted) or x0 and use exact one-step transitions.
/// Analytic qv: sigma^2 t for brownian/drifted/OU, trapezoid of sigma^2 X^2
/// for GBM. Deterministic paths always carry realized qv.
Path simulate(const ProcessSpec& spec, const TimeGrid& grid, const SeedPolicy& seed,
              QvMode qv_mode = QvMode::realized);

/// Closed-form oracle paths: linear (X_s = s), sine (sin 2 pi s),
/// zigzag (0, 1, 0, 1, ... by step parity), constant (0).
Path deterministic_path(const std::string& name, const TimeGrid& grid);

/// Same values with a prescribed cumulative qv (validated by Path).
Path with_prescribed_qv(const Path& path, std::vector<double> qv);

}  // namespace ltlab
