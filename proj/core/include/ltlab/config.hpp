#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltlab/errors.hpp"
#include "ltlab/lt_integrals.hpp"
#include "ltlab/simulate.hpp"
#include "ltlab/test_function.hpp"

namespace ltlab {

enum class Experiment {
    conservation,
    theorem1,
    theorem2,
    identity27,
    occupation31,
    localtime_stats,
    pvariation_audit,
};

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& s);

/// Space grid choice. `automatic`: per-path grid of the given bin width over
/// the path range plus a 10% margin (edges on multiples of the width when
/// align_breakpoints is set). Otherwise a fixed [x_min, x_max) with n_bins.
struct SpaceConfig {
    bool automatic = true;
    double bin_width = 0.001953125;  // 2^-9
    double x_min = -4.0;
    double x_max = 4.0;
    std::size_t n_bins = 4096;

    double width() const { return automatic ? bin_width : (x_max - x_min) / static_cast<double>(n_bins); }
    bool operator==(const SpaceConfig&) const = default;
};

enum class SignChoice { resolved, paper, both };
enum class OutputFormat { csv, json };

struct ExperimentConfig {
    Experiment experiment = Experiment::conservation;
    ProcessSpec process = Brownian{};
    double t_end = 1.0;
    std::size_t n_steps = 65536;
    std::size_t n_paths = 10;
    std::uint64_t base_seed = 20240601;
    SpaceConfig space;
    bool align_breakpoints = true;
    std::vector<double> eps_ladder{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
    std::optional<TestFunction> function;  // unset: experiment default
    std::vector<Variant> variants;         // empty: experiment default
    SignChoice sign_convention = SignChoice::resolved;
    QvMode qv_mode = QvMode::realized;
    double level = 0.0;
    std::vector<int> identity_m{1, 2, 4};
    std::vector<double> p_values{1.0, 1.5, 1.9};
    std::size_t sheet_intervals = 0;  // 0: checkpoint at every step
    std::string output;               // empty: stdout
    OutputFormat format = OutputFormat::csv;

    TestFunction effective_function() const;
    std::vector<Variant> effective_variants() const;
    std::vector<SignConvention> sign_conventions() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Config error carrying the 1-based line it refers to (0 when not tied to a line).
class ConfigError : public InvalidArgument {
public:
    ConfigError(std::size_t line, const std::string& key, const std::string& what);
    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t line_;
    std::string key_;
    std::string detail_;
};

/// Parses `key = value` lines; `#` starts a comment. Unknown keys, keys that do
/// not apply to the chosen process or space mode, malformed values and
/// invariant violations raise ConfigError. `experiment` is required.
ExperimentConfig parse_config(std::string_view text);

/// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const ExperimentConfig& config);

/// Throws ConfigError when an invariant fails.
void validate(const ExperimentConfig& config);

/// Key reference with defaults, for --help and print-defaults.
std::string config_reference();

}  // namespace ltlab
