// ltlab: run local-time experiments from a config file.
//
//   ltlab run <config> [--threads N] [--output FILE] [--quiet]
//   ltlab print-defaults [--experiment NAME]
//   ltlab selftest
//
// Exit codes: 0 success, 1 usage or config error, 2 selftest failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ltlab/config.hpp"
#include "ltlab/experiment.hpp"
#include "ltlab/report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitAcceptance = 2;

int run_command(const std::string& config_path, std::optional<std::size_t> threads,
                const std::string& output_override, bool quiet) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "ltlab: cannot open config '" << config_path << "'\n";
        return kExitUsage;
    }
    std::stringstream text;
    text << in.rdbuf();

    ltlab::ExperimentConfig config;
    try {
        config = ltlab::parse_config(text.str());
    } catch (const ltlab::InvalidArgument& e) {
        std::cerr << "ltlab: " << config_path << ": " << e.what() << '\n';
        return kExitUsage;
    }
    if (!output_override.empty()) config.output = output_override;

    std::vector<ltlab::ReportRow> rows;
    try {
        rows = ltlab::run_experiment(config, ltlab::resolve_threads(threads));
    } catch (const std::exception& e) {
        std::cerr << "ltlab: " << e.what() << '\n';
        return kExitUsage;
    }

    auto emit = [&](std::ostream& out) {
        if (config.format == ltlab::OutputFormat::csv) {
            ltlab::write_csv(rows, out);
        } else {
            ltlab::write_json(rows, out);
        }
    };
    if (config.output.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out(config.output, std::ios::binary);
        if (!out) {
            std::cerr << "ltlab: cannot write '" << config.output << "'\n";
            return kExitUsage;
        }
        emit(out);
    }
    if (!quiet) {
        std::ostream& sink = config.output.empty() ? std::cerr : std::cout;
        ltlab::write_summary(ltlab::summarize(rows), sink);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for occupation-time formulas of continuous semimartingales"};
    app.require_subcommand(1);
    app.footer(ltlab::config_reference() +
               "\nThreads: --threads N, else LTLAB_THREADS, else hardware concurrency.\n"
               "Exit codes: 0 success, 1 usage/config error, 2 selftest failure.\n");

    auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
    std::string config_path;
    std::optional<std::size_t> threads;
    std::string output_override;
    bool quiet = false;
    run->add_option("config", config_path, "Config file (key = value lines)")->required();
    run->add_option("--threads", threads, "Worker threads (default: LTLAB_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    run->add_option("--output", output_override, "Override the config's output file");
    run->add_flag("--quiet", quiet, "Do not print the summary table");

    auto* defaults = app.add_subcommand("print-defaults", "Print a complete config with default values");
    std::string experiment = "conservation";
    defaults->add_option("--experiment", experiment, "Experiment to print defaults for");

    auto* selftest = app.add_subcommand("selftest", "Run the exact-identity and conservation suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*run) return run_command(config_path, threads, output_override, quiet);
    if (*defaults) {
        try {
            ltlab::ExperimentConfig c;
            c.experiment = ltlab::parse_experiment(experiment);
            std::cout << ltlab::render_config(c);
        } catch (const ltlab::InvalidArgument& e) {
            std::cerr << "ltlab: " << e.what() << '\n';
            return kExitUsage;
        }
        return 0;
    }
    if (*selftest) return ltlab::run_selftest(std::cout) ? 0 : kExitAcceptance;
    return kExitUsage;
}
