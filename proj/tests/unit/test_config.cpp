#include <gtest/gtest.h>

#include <random>

#include "ltlab/config.hpp"

using namespace ltlab;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return 0;
}

std::string error_key(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    ADD_FAILURE() << "no ConfigError for:\n" << text;
    return {};
}

}  // namespace

TEST(Config, MinimalDocumentUsesDefaults) {
    const auto c = parse_config("experiment = conservation\n");
    ExperimentConfig expected;
    EXPECT_EQ(c, expected);
    EXPECT_EQ(c.effective_function().to_string(), "step_combo(-0.5:1, 0:-2, 0.5:1.5)");
    EXPECT_EQ(c.effective_variants(), std::vector<Variant>{Variant::forward});
}

TEST(Config, ExperimentDefaults) {
    const auto t2 = parse_config("experiment = theorem2");
    EXPECT_EQ(t2.effective_function().to_string(), "product(identity, indicator(0))");
    EXPECT_EQ(t2.effective_variants(), (std::vector<Variant>{Variant::backward, Variant::symmetric}));
    EXPECT_EQ(parse_config("experiment = occupation31").effective_function().to_string(),
              "product(exp_decay, cosine)");
    EXPECT_EQ(parse_config("experiment=theorem1\nsign_convention=both").sign_conventions(),
              (std::vector<SignConvention>{SignConvention::resolved, SignConvention::paper}));
}

TEST(Config, FullDocument) {
    const auto c = parse_config(R"(# comment
experiment = theorem1
process = ornstein_uhlenbeck
theta = 2.5   # trailing comment
sigma = 0.5
x0 = -1
t_end = 2
n_steps = 1024
n_paths = 3
base_seed = 18446744073709551615
space = fixed
x_min = -3
x_max = 3
n_bins = 600
eps_ladder = 0.5, 0.25, 0.1
function = holder(0.75, 0.25)
variant = forward, symmetric
format = json
output = out.json
)");
    EXPECT_EQ(c.experiment, Experiment::theorem1);
    const auto& ou = std::get<OrnsteinUhlenbeck>(c.process);
    EXPECT_EQ(ou.theta, 2.5);
    EXPECT_EQ(ou.x0, -1.0);
    EXPECT_EQ(c.base_seed, 18446744073709551615ULL);
    EXPECT_FALSE(c.space.automatic);
    EXPECT_DOUBLE_EQ(c.space.width(), 0.01);
    EXPECT_EQ(c.eps_ladder, (std::vector<double>{0.5, 0.25, 0.1}));
    EXPECT_EQ(c.function->to_string(), "holder(0.75, 0.25)");
    EXPECT_EQ(c.format, OutputFormat::json);
    EXPECT_EQ(c.output, "out.json");
}

TEST(Config, IncreasingLadderNamesKey) {
    EXPECT_EQ(error_key("experiment = theorem1\neps_ladder = 0.01, 0.1\n"), "eps_ladder");
    EXPECT_EQ(error_line("experiment = theorem1\neps_ladder = 0.01, 0.1\n"), 2u);
}

TEST(Config, BinWiderThanSmallestEps) {
    const std::string text = "experiment = theorem1\nspace = fixed\nn_bins = 100\neps_ladder = 0.5, 0.01\n";
    try {
        parse_config(text);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "n_bins");
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("smallest eps"), std::string::npos) << e.what();
    }
}

TEST(Config, UnknownKeyNamesLine) {
    EXPECT_EQ(error_line("experiment = theorem1\n\n# c\nn_stesp = 10\n"), 4u);
    EXPECT_EQ(error_key("experiment = theorem1\nn_stesp = 10\n"), "n_stesp");
}

TEST(Config, OtherErrors) {
    EXPECT_EQ(error_line("process = brownian\n"), 0u);                     // experiment missing
    EXPECT_EQ(error_line("experiment = theorem1\nexperiment = theorem2"), 2u);  // duplicate
    EXPECT_EQ(error_line("experiment = theorem1\ntheta = 1\n"), 2u);       // not an OU run
    EXPECT_EQ(error_line("experiment = theorem1\nn_bins = 10\n"), 2u);     // auto space
    EXPECT_EQ(error_line("experiment = theorem1\nn_paths = 0\n"), 2u);
    EXPECT_EQ(error_line("experiment = theorem1\nn_steps = -5\n"), 2u);
    EXPECT_EQ(error_line("experiment = theorem1\nt_end = abc\n"), 2u);
    EXPECT_EQ(error_line("experiment = theorem1\nfunction = holder(0.2, 0)\n"), 2u);
    EXPECT_EQ(error_line("experiment = theorem1\nno equals sign\n"), 2u);
    EXPECT_EQ(error_line("experiment = theorem1\nprocess = geometric_brownian\nx0 = -1\n"), 3u);
    EXPECT_EQ(error_line("experiment = theory\n"), 1u);
    EXPECT_EQ(error_line("experiment = theorem1\nprocess = ornstein_uhlenbeck\nsigma = 1\ntheta = 0\n"), 4u);
    EXPECT_EQ(error_line("experiment = theorem1\nprocess = deterministic\npath_name = square\n"), 3u);
}

TEST(Config, RenderRoundTrip) {
    std::mt19937_64 rng(21);
    const std::vector<std::string> experiments{"conservation", "theorem1", "theorem2", "identity27",
                                               "occupation31", "localtime_stats", "pvariation_audit"};
    const std::vector<std::string> processes{
        "process = brownian",
        "process = drifted_brownian\nmu = 0.25\nsigma = 1.75",
        "process = ornstein_uhlenbeck\ntheta = 3\nsigma = 0.1\nx0 = 0.5",
        "process = geometric_brownian\nmu = -0.1\nsigma = 0.3\nx0 = 2",
        "process = deterministic\npath_name = zigzag"};
    const std::vector<std::string> functions{"", "function = linear", "function = product(exp_decay, cosine)",
                                             "function = step_combo(-0.125:3, 1:-1)"};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& experiment = experiments[rng() % experiments.size()];
        const bool space_only = experiment == "theorem1" || experiment == "identity27" ||
                                experiment == "pvariation_audit";
        std::string text = "experiment = " + experiment + "\n";
        text += processes[rng() % processes.size()] + "\n";
        const auto& function = functions[rng() % functions.size()];
        if (!(space_only && function.find("product") != std::string::npos)) text += function + "\n";
        text += "n_steps = " + std::to_string(16 * (1 + rng() % 5000)) + "\n";
        text += "base_seed = " + std::to_string(rng()) + "\n";
        text += "t_end = " + std::to_string(0.1 + (rng() % 1000) / 100.0) + "\n";
        if (rng() & 1) text += "space = fixed\nx_min = -2.5\nx_max = 3\nn_bins = 2200\n";
        if (rng() & 1) text += "sign_convention = both\nqv_mode = analytic\nformat = json\n";
        if (rng() & 1) text += "variant = symmetric, backward\nidentity_m = 3\nsheet_intervals = 16\n";
        const auto c = parse_config(text);
        const auto rendered = render_config(c);
        EXPECT_EQ(parse_config(rendered), c) << rendered;
        EXPECT_EQ(render_config(parse_config(rendered)), rendered);
    }
}

TEST(Config, ReferenceMentionsEveryKey) {
    const auto ref = config_reference();
    for (const char* key : {"experiment", "process", "t_end", "n_steps", "n_paths", "base_seed", "space", "bin_width",
                            "eps_ladder", "function", "variant", "sign_convention", "qv_mode", "level",
                            "identity_m", "p_values", "sheet_intervals", "output", "format"}) {
        EXPECT_NE(ref.find(key), std::string::npos) << key;
    }
}
