#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ltlab/experiment.hpp"

namespace ltlab {

inline constexpr std::string_view kCsvHeader =
    "experiment,process,base_seed,path_id,t_end,n_steps,n_bins,epsilon,variant,sign_convention,lhs,rhs,abs_err,"
    "rel_err";

inline constexpr int kReportSchemaVersion = 1;

/// 17 significant digits, '.' decimal point, independent of the C++ locale.
std::string format_double(double v);

void write_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void write_json(const std::vector<ReportRow>& rows, std::ostream& out);

/// Human-readable table followed by one `summary-json: {...}` line.
void write_summary(const std::vector<SummaryLine>& summary, std::ostream& out);

}  // namespace ltlab
