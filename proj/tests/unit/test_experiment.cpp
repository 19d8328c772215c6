#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "ltlab/config.hpp"
#include "ltlab/experiment.hpp"
#include "ltlab/report.hpp"

using namespace ltlab;

namespace {

// Small run; keys given in `extra` override the defaults below.
ExperimentConfig small(const std::string& extra) {
    std::string text = extra + "\n";
    for (const char* kv : {"n_steps = 4096", "n_paths = 4", "bin_width = 0.0078125"}) {
        const std::string key = std::string(kv).substr(0, std::string(kv).find(' '));
        if (extra.find(key + " =") == std::string::npos) text += std::string(kv) + "\n";
    }
    return parse_config(text);
}

std::string csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    write_csv(rows, out);
    return out.str();
}

}  // namespace

TEST(RunExperiment, ConservationRows) {
    const auto rows = run_experiment(small("experiment = conservation\nn_paths = 10"));
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].path_id, i);
        EXPECT_EQ(rows[i].experiment, "conservation");
        EXPECT_EQ(rows[i].process, "brownian");
        EXPECT_LE(rows[i].abs_err, 1e-12 * std::max(1.0, rows[i].rhs));
    }
}

TEST(RunExperiment, TheoremOneLinearIsExact) {
    const auto rows = run_experiment(small("experiment = theorem1\nfunction = linear\nsign_convention = both"));
    ASSERT_EQ(rows.size(), 4u * 5u * 2u);
    for (const auto& r : rows) {
        if (r.sign_convention == "resolved") EXPECT_LE(r.rel_err, 1e-10);
        else EXPECT_NEAR(r.lhs, -r.rhs, 1e-10);
    }
}

TEST(RunExperiment, EveryExperimentRuns) {
    for (const char* e : {"conservation", "theorem1", "theorem2", "identity27", "occupation31", "localtime_stats",
                          "pvariation_audit"}) {
        auto c = small(std::string("experiment = ") + e + "\nn_paths = 2");
        c.n_steps = 1024;
        const auto rows = run_experiment(c, 2);
        EXPECT_FALSE(rows.empty()) << e;
        for (const auto& r : rows) {
            EXPECT_EQ(r.experiment, e);
            EXPECT_TRUE(std::isfinite(r.lhs) && std::isfinite(r.rhs)) << e;
        }
    }
}

TEST(RunExperiment, IdenticalAcrossThreadCounts) {
    for (const char* e : {"theorem1", "theorem2", "identity27"}) {
        const auto c = small(std::string("experiment = ") + e + "\nn_paths = 6");
        const auto one = csv(run_experiment(c, 1));
        EXPECT_EQ(one, csv(run_experiment(c, 3)));
        EXPECT_EQ(one, csv(run_experiment(c, 8)));
        EXPECT_EQ(one, csv(run_experiment(c, 1)));
    }
}

TEST(RunExperiment, ErrorNamesPath) {
    auto c = parse_config("experiment = conservation\nn_steps = 1024\nn_paths = 3\nspace = fixed\n"
                          "x_min = 10\nx_max = 11\nn_bins = 256\n");
    try {
        run_experiment(c, 2);
        FAIL();
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("path_id 0"), std::string::npos) << e.what();
    }
}

TEST(Summarize, SingleRow) {
    ReportRow r{"theorem1", "brownian", 1, 0, 1.0, 8, 16, 0.125, "forward", "resolved", 2.0, 1.5, 0.5, 1.0 / 3};
    const auto s = summarize({r});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].count, 1u);
    EXPECT_EQ(s[0].mean_lhs, 2.0);
    EXPECT_EQ(s[0].se_lhs, 0.0);
    EXPECT_EQ(s[0].median_abs_err, 0.5);
    EXPECT_THROW(summarize({}), InvalidArgument);
}

TEST(Summarize, GroupsByEpsilon) {
    const auto rows = run_experiment(small("experiment = theorem1"));
    const auto s = summarize(rows);
    ASSERT_EQ(s.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_EQ(s[i].count, 4u);
        EXPECT_GE(s[i].max_rel_err, s[i].median_rel_err);
    }
    EXPECT_GT(s[0].epsilon, s[4].epsilon);
    std::ostringstream out;
    write_summary(s, out);
    EXPECT_NE(out.str().find("summary-json: "), std::string::npos);
}

TEST(Report, CsvAndJson) {
    ReportRow r{"theorem1", "brownian", 7, 3, 1.0, 8, 16, 0.1, "forward", "paper", -0.0, 1e-300, 0.25, 1.0 / 3};
    const auto text = csv({r});
    EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
    EXPECT_NE(text.find("theorem1,brownian,7,3,1,8,16,0.10000000000000001,forward,paper,"), std::string::npos)
        << text;
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);

    std::ostringstream js;
    write_json({r}, js);
    const auto doc = nlohmann::json::parse(js.str());
    EXPECT_EQ(doc["schema_version"], kReportSchemaVersion);
    EXPECT_EQ(doc["rows"][0]["path_id"], 3);
    EXPECT_EQ(doc["rows"][0]["rel_err"].get<double>(), 1.0 / 3);
}

TEST(Selftest, Passes) {
    std::ostringstream out;
    EXPECT_TRUE(run_selftest(out)) << out.str();
}

TEST(Threads, Resolution) {
    EXPECT_EQ(resolve_threads(3), 3u);
    EXPECT_GE(resolve_threads(std::nullopt), 1u);
}
