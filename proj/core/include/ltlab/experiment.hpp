#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ltlab/config.hpp"
#include "ltlab/grid.hpp"

namespace ltlab {

/// One flat comparison record; see kCsvHeader for the column order.
struct ReportRow {
    std::string experiment;
    std::string process;
    std::uint64_t base_seed = 0;
    std::uint64_t path_id = 0;
    double t_end = 0.0;
    std::size_t n_steps = 0;
    std::size_t n_bins = 0;
    double epsilon = 0.0;
    std::string variant;
    std::string sign_convention;
    double lhs = 0.0;
    double rhs = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;

    bool operator==(const ReportRow&) const = default;
};

/// Space grid used for one path: the fixed grid, or the auto grid (path range
/// plus 10% margin on each side, padded by max(1, max identity_m) empty bins).
SpaceGrid space_for(const ExperimentConfig& config, const Path& path);

/// Simulates n_paths paths and evaluates the configured comparison on each.
/// Rows are ordered by (path_id, eps/m/p index, variant, sign convention)
/// regardless of `threads`. Module errors are rethrown as std::runtime_error
/// prefixed with the failing path_id.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

/// Worker count: explicit value, else LTLAB_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::optional<std::size_t> requested);

struct SummaryLine {
    std::string experiment;
    std::string variant;
    std::string sign_convention;
    double epsilon = 0.0;
    std::size_t count = 0;
    double mean_abs_err = 0.0;
    double median_abs_err = 0.0;
    double max_abs_err = 0.0;
    double mean_rel_err = 0.0;
    double median_rel_err = 0.0;
    double max_rel_err = 0.0;
    double mean_lhs = 0.0;
    double se_lhs = 0.0;  // sample std / sqrt(N), 0 for N = 1
    double mean_rhs = 0.0;
    double se_rhs = 0.0;
};

/// Groups rows by (experiment, variant, sign_convention, epsilon) in order of
/// first appearance. Throws InvalidArgument on empty input.
std::vector<SummaryLine> summarize(const std::vector<ReportRow>& rows);

/// Exact-identity and conservation checks that need no config. Writes one
/// PASS/FAIL line per check; returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace ltlab
