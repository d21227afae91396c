#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamhd/config.hpp"
#include "lamhd/diagnostics.hpp"
#include "lamhd/grid.hpp"
#include "lamhd/presets.hpp"
#include "lamhd/state.hpp"
#include "lamhd/stepper.hpp"

namespace lamhd {

inline constexpr int kExitPass = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitSolverAbort = 2;
inline constexpr int kExitConfigError = 3;

/// Full description of one run, mirrored 1:1 by the config file sections.
struct RunConfig {
    MaterialParams params;                    // [material]
    double y_min = 0.0;                       // [grid]
    double y_max = 0.0;
    std::size_t n_cells = 256;
    std::string preset = "quiescent";         // [initial]
    double amplitude = 1.0;
    double decay_tol = 1e-8;
    StepConfig step;                          // [step]
    double mass_floor_rel = 1e-6;             // mass_floor = rel * rho_bar unless set absolutely
    double mass_floor_abs = -1.0;             // < 0 means "derive from rel"
    double t_end = 1.0;                       // [run]
    double sample_interval = 0.1;
    std::string output_dir = "out";
    std::uint64_t rng_seed = 0;               // consumed only by randomized test tooling
    double energy_tol = 1e-3;                 // [invariants]
    double jbound_tol = 1e-2;
    double rho0_min_rel = 1e-3;               // vacuum cutoff for the G/F equation residuals
    double min_order = 1.0;                   // [converge]

    /// Parses and validates; unknown keys are rejected.  Grid bounds default
    /// to the preset's suggested box when not given.
    static RunConfig from_file(const std::string& path);
    static RunConfig from_kv(const KeyValueFile& kv);

    void validate() const;
    LagrangianGrid grid() const;
    InitialData initial() const;
    double rho_bar() const;
    double mass_floor() const;
    double rho0_min() const;
};

/// Aggregated outcome of one run.
struct RunSummary {
    bool pass = false;
    std::size_t steps = 0;
    std::size_t dt_retries = 0;
    double max_energy_drift = 0.0;
    double min_j = 0.0;
    double j_bound = 0.0;
    double min_p = 0.0;
    double max_lnj_residual = 0.0;
    double max_h_ode_residual = 0.0;
    double max_p_ode_residual = 0.0;
    double max_g_eq_residual = 0.0;
    double max_f_eq_residual = 0.0;
    double monitor_growth_ratio = 0.0;
    double mass_floor_used = 0.0;
    double wall_time_seconds = 0.0;
    std::string failure;  // first diagnostic, empty when pass
};

struct RunResult {
    int exit_code = kExitPass;
    RunSummary summary;
    std::vector<InvariantReport> reports;
    FluidState final_state;
    std::string series_path;   // empty when artifacts were not written
    std::string summary_path;
};

/// Runs the scenario and writes the NDJSON invariant series, snapshot files
/// and the machine-readable summary into cfg.output_dir.
RunResult run(const RunConfig& cfg);

/// Same pipeline without touching the filesystem (used by studies/tests).
RunResult run_in_memory(const RunConfig& cfg);

/// One measured quantity of a refinement study.
struct OrderSeries {
    std::string name;
    std::vector<double> values;   // one per level, max over sampled reports
    std::vector<double> orders;   // successive-ratio log2, size levels-1
    double observed_order = 0.0;  // last successive order
    bool order_defined = false;   // false when residuals sit at the zero floor
    bool pass = true;
};

struct ConvergenceReport {
    std::vector<std::size_t> level_cells;
    std::vector<OrderSeries> quantities;
    double min_order = 1.0;
    bool pass = false;
};

/// Runs `levels` copies of the scenario with dy and dt halved together and
/// estimates the convergence order of every invariant residual.
ConvergenceReport convergence_study(const RunConfig& base, int levels, double min_order);

/// Offline re-validation of a written NDJSON series.
struct CheckResult {
    bool pass = false;
    std::vector<std::string> messages;
};

CheckResult check_series(const std::string& ndjson_path, double energy_tol = 1e-3,
                         double jbound_tol = 1e-2);

} // namespace lamhd
