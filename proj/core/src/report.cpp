#include "ltlab/report.hpp"

#include <charconv>
#include <iomanip>

#include <nlohmann/json.hpp>

namespace ltlab {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, end);
}

void write_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.experiment << ',' << r.process << ',' << r.base_seed << ',' << r.path_id << ','
            << format_double(r.t_end) << ',' << r.n_steps << ',' << r.n_bins << ',' << format_double(r.epsilon)
            << ',' << r.variant << ',' << r.sign_convention << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.abs_err) << ',' << format_double(r.rel_err) << '\n';
    }
}

void write_json(const std::vector<ReportRow>& rows, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    auto& arr = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({
            {"experiment", r.experiment},
            {"process", r.process},
            {"base_seed", r.base_seed},
            {"path_id", r.path_id},
            {"t_end", r.t_end},
            {"n_steps", r.n_steps},
            {"n_bins", r.n_bins},
            {"epsilon", r.epsilon},
            {"variant", r.variant},
            {"sign_convention", r.sign_convention},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"abs_err", r.abs_err},
            {"rel_err", r.rel_err},
        });
    }
    out << doc.dump(1) << '\n';
}

void write_summary(const std::vector<SummaryLine>& summary, std::ostream& out) {
    out << std::left << std::setw(17) << "experiment" << std::setw(11) << "variant" << std::setw(10) << "sign"
        << std::right << std::setw(12) << "epsilon" << std::setw(7) << "n" << std::setw(13) << "mean_rel"
        << std::setw(13) << "median_rel" << std::setw(13) << "max_rel" << std::setw(15) << "mean_lhs"
        << std::setw(12) << "se_lhs" << std::setw(15) << "mean_rhs" << std::setw(12) << "se_rhs" << '\n';
    nlohmann::ordered_json block = nlohmann::ordered_json::array();
    for (const auto& s : summary) {
        out << std::left << std::setw(17) << s.experiment << std::setw(11) << s.variant << std::setw(10)
            << s.sign_convention << std::right << std::setprecision(5) << std::setw(12) << s.epsilon
            << std::setw(7) << s.count << std::setw(13) << s.mean_rel_err << std::setw(13) << s.median_rel_err
            << std::setw(13) << s.max_rel_err << std::setw(15) << s.mean_lhs << std::setw(12) << s.se_lhs
            << std::setw(15) << s.mean_rhs << std::setw(12) << s.se_rhs << '\n';
        block.push_back({
            {"experiment", s.experiment},
            {"variant", s.variant},
            {"sign_convention", s.sign_convention},
            {"epsilon", s.epsilon},
            {"count", s.count},
            {"mean_abs_err", s.mean_abs_err},
            {"median_abs_err", s.median_abs_err},
            {"max_abs_err", s.max_abs_err},
            {"mean_rel_err", s.mean_rel_err},
            {"median_rel_err", s.median_rel_err},
            {"max_rel_err", s.max_rel_err},
            {"mean_lhs", s.mean_lhs},
            {"se_lhs", s.se_lhs},
            {"mean_rhs", s.mean_rhs},
            {"se_rhs", s.se_rhs},
        });
    }
    out << "summary-json: " << block.dump() << '\n';
}

}  // namespace ltlab
