/// Command-line front end: run scenarios, list presets, drive refinement
/// studies, re-validate written invariant series.
///
/// Exit codes: 0 pass, 1 invariant failure, 2 solver abort, 3 config error.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lamhd/scenario.hpp"
#include "lamhd/stepper.hpp"

namespace {

lamhd::RunConfig load_config(const std::string& path, const std::string& output_dir_flag) {
    lamhd::RunConfig cfg = lamhd::RunConfig::from_file(path);
    if (!output_dir_flag.empty()) {
        cfg.output_dir = output_dir_flag;
    } else if (const char* env = std::getenv("LAMHD_OUTPUT_DIR")) {
        cfg.output_dir = env;
    }
    return cfg;
}

int cmd_run(const std::string& config_path, const std::string& output_dir) {
    const lamhd::RunConfig cfg = load_config(config_path, output_dir);
    const lamhd::RunResult result = lamhd::run(cfg);
    std::cout << (result.summary.pass ? "PASS" : "FAIL") << "  preset=" << cfg.preset
              << " n=" << cfg.n_cells << " steps=" << result.summary.steps
              << " max_energy_drift=" << result.summary.max_energy_drift
              << " j_min=" << result.summary.min_j << " (bound " << result.summary.j_bound << ")\n";
    if (!result.summary.failure.empty()) {
        std::cout << "first failure: " << result.summary.failure << "\n";
    }
    std::cout << "series:  " << result.series_path << "\n";
    std::cout << "summary: " << result.summary_path << "\n";
    return result.exit_code;
}

int cmd_presets() {
    for (const auto& p : lamhd::presets()) {
        std::printf("%-18s [%g, %g]  %s\n", p.name.c_str(), p.y_min, p.y_max, p.description.c_str());
    }
    return lamhd::kExitPass;
}

int cmd_converge(const std::string& config_path, int levels, double min_order_flag) {
    const lamhd::RunConfig cfg = load_config(config_path, "");
    const double min_order = min_order_flag > 0.0 ? min_order_flag : cfg.min_order;
    const lamhd::ConvergenceReport rep = lamhd::convergence_study(cfg, levels, min_order);

    std::cout << "levels:";
    for (std::size_t n : rep.level_cells) std::cout << ' ' << n;
    std::cout << "\n";
    for (const auto& q : rep.quantities) {
        std::printf("%-22s", q.name.c_str());
        for (double v : q.values) std::printf(" %11.4e", v);
        if (q.order_defined) {
            std::printf("   order %.2f %s", q.observed_order, q.pass ? "(pass)" : "(FAIL)");
        } else {
            std::printf("   order n/a %s", q.pass ? "(at zero floor)" : "(non-monotone: FAIL)");
        }
        std::printf("\n");
    }
    std::cout << (rep.pass ? "PASS" : "FAIL") << " (min order " << min_order << ")\n";
    return rep.pass ? lamhd::kExitPass : lamhd::kExitInvariantFailure;
}

int cmd_check(const std::string& series_path, double energy_tol, double jbound_tol) {
    const lamhd::CheckResult res = lamhd::check_series(series_path, energy_tol, jbound_tol);
    for (const std::string& m : res.messages) std::cout << m << "\n";
    std::cout << (res.pass ? "PASS" : "FAIL") << "\n";
    return res.pass ? lamhd::kExitPass : lamhd::kExitInvariantFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Planar non-resistive MHD in Lagrangian coordinates: solver and invariant harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir;
    auto* run_cmd = app.add_subcommand("run", "run a scenario from a config file");
    run_cmd->add_option("config", config_path, "run-config file")->required();
    run_cmd->add_option("--output-dir", output_dir, "override [run] output_dir (also: LAMHD_OUTPUT_DIR)");

    auto* presets_cmd = app.add_subcommand("presets", "list built-in initial-data presets");

    std::string conv_config;
    int levels = 3;
    double min_order = -1.0;
    auto* conv_cmd = app.add_subcommand("converge", "refinement study (dy and dt halved together)");
    conv_cmd->add_option("config", conv_config, "run-config file")->required();
    conv_cmd->add_option("--levels", levels, "number of refinement levels (>= 3)");
    conv_cmd->add_option("--min-order", min_order, "override [converge] min_order");

    std::string series_path;
    double energy_tol = 1e-3;
    double jbound_tol = 1e-2;
    auto* check_cmd = app.add_subcommand("check", "re-validate a written NDJSON invariant series");
    check_cmd->add_option("series", series_path, "invariants.ndjson file")->required();
    check_cmd->add_option("--energy-tol", energy_tol, "relative energy drift tolerance");
    check_cmd->add_option("--jbound-tol", jbound_tol, "relative Jacobian bound tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? lamhd::kExitPass : lamhd::kExitConfigError;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, output_dir);
        if (presets_cmd->parsed()) return cmd_presets();
        if (conv_cmd->parsed()) return cmd_converge(conv_config, levels, min_order);
        if (check_cmd->parsed()) return cmd_check(series_path, energy_tol, jbound_tol);
    } catch (const lamhd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return lamhd::kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return lamhd::kExitConfigError;
    } catch (const lamhd::SolverError& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return lamhd::kExitSolverAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return lamhd::kExitSolverAbort;
    }
    return lamhd::kExitConfigError;
}
