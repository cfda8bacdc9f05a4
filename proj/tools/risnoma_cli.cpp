// Command-line front end for RIS-assisted NOMA BER experiments.
//
//   risnoma --config experiment.json [--out DIR] [--seed N] [--mode literal|consistent] [--quiet]
//
// Exit codes: 0 success, 2 config error, 3 runtime/precision error, 4 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "risnoma/errors.hpp"
#include "risnoma/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted downlink NOMA BER simulator"};
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string mode;
    unsigned workers = 0;
    bool quiet = false;
    app.add_option("--config", config_path, "JSON experiment description")->required();
    app.add_option("--out", out_dir, "Output directory for CSV files (overrides output_path)");
    auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides config)");
    app.add_option("--mode", mode, "Analytic substitution mode")->check(CLI::IsMember({"literal", "consistent"}));
    app.add_option("--workers", workers, "Simulation worker threads (overrides config)")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "Suppress the summary report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    risnoma::ExperimentSpec spec;
    try {
        std::ifstream file(config_path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot read config " << config_path << '\n';
            return kExitIo;
        }
        std::ostringstream text;
        text << file.rdbuf();
        spec = risnoma::parse_config(text.str());
        if (!out_dir.empty()) spec.output_path = out_dir;
        if (seed_opt->count() > 0) spec.sim.seed = seed;
        if (!mode.empty()) spec.mode = risnoma::parse_substitution_mode(mode);
        if (workers > 0) spec.sim.workers = workers;
        risnoma::validate_spec(spec);
    } catch (const risnoma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const auto result = risnoma::run_experiment(spec, quiet ? nullptr : &std::cout);
        return result.all_points_completed ? 0 : kExitRuntime;
    } catch (const risnoma::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const risnoma::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
