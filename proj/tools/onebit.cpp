// onebit: Monte Carlo sweeps of pilot-aided phase tracking with 1-bit
// quantization.
//
//   onebit sweep --config fig4.toml --out fig4.csv
//   onebit validate
//   onebit show-config [--config PATH]

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "onebit/config_file.hpp"
#include "onebit/experiments.hpp"
#include "onebit/validation/checks.hpp"

namespace {

onebit::ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return onebit::experiment_from_file(onebit::ConfigFile::load(path));
}

struct SweepOptions {
    std::string config;
    std::string out;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> modes;
    std::vector<std::string> algorithms;
};

int run_sweep(const SweepOptions& opt) {
    onebit::ExperimentConfig cfg = load_config(opt.config);
    if (opt.trials) cfg.trials = *opt.trials;
    if (opt.seed) cfg.seed = *opt.seed;
    if (!opt.modes.empty()) {
        cfg.modes.clear();
        for (const auto& m : opt.modes) cfg.modes.push_back(onebit::parse_interpolator(m));
    }
    if (!opt.algorithms.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : opt.algorithms) cfg.algorithms.push_back(onebit::parse_algorithm(a));
    }
    cfg.validate();

    std::ofstream file;
    if (!opt.out.empty() && opt.out != "-") {
        file.open(opt.out);
        if (!file) throw std::runtime_error("cannot open output file '" + opt.out + "'");
    }
    std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;

    const auto result = onebit::run_sweep(cfg);
    onebit::write_csv(out, result);
    out.flush();
    if (!out) throw std::runtime_error("failed writing output '" + opt.out + "'");

    if (result.degenerate_ls > 0) {
        std::fprintf(stderr, "onebit: %zu pilot blocks with a zero LS correlation (0 rad substituted)\n",
                     result.degenerate_ls);
    }
    if (result.scoring_nonconverged > 0) {
        std::fprintf(stderr, "onebit: scoring did not converge on %zu pilot blocks (damping %g)\n",
                     result.scoring_nonconverged, cfg.damping);
    }
    return 0;
}

int run_validate() {
    bool all = true;
    for (const auto& r : onebit::validation::run_validation_suite()) {
        std::printf("[%s] %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pilot-aided phase tracking with 1-bit quantization"};
    app.require_subcommand(1);

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "Run an Es/N0 sweep and write CSV");
    sweep->add_option("--config", sweep_opt.config, "Config file")->check(CLI::ExistingFile);
    sweep->add_option("--out", sweep_opt.out, "Output CSV path (default stdout)");
    sweep->add_option("--trials", sweep_opt.trials, "Trials per grid point")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_opt.seed, "Master seed");
    sweep->add_option("--modes", sweep_opt.modes, "pilot_only,kalman,rts")->delimiter(',');
    sweep->add_option("--algorithms", sweep_opt.algorithms, "ls,em,scoring")->delimiter(',');

    auto* validate = app.add_subcommand("validate", "Run the oracle and property checks");

    std::string show_path;
    auto* show = app.add_subcommand("show-config", "Print the resolved configuration");
    show->add_option("--config", show_path, "Config file")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sweep) return run_sweep(sweep_opt);
        if (*validate) return run_validate();
        if (*show) {
            std::cout << onebit::render_config(load_config(show_path));
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "onebit: error: %s\n", e.what());
        return 2;
    }
    return 0;
}
