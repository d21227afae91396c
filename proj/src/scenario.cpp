#include "lamhd/scenario.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "lamhd/eulerian.hpp"
#include "lamhd/output.hpp"

namespace lamhd {

namespace {

const PresetInfo& preset_info(const std::string& name) {
    static const std::vector<PresetInfo> all = presets();
    for (const auto& p : all) {
        if (p.name == name) return p;
    }
    throw ConfigError("unknown preset: " + name);
}

StepConfig::JUpdate parse_j_update(const std::string& s) {
    if (s == "ode") return StepConfig::JUpdate::ode;
    if (s == "exponential") return StepConfig::JUpdate::exponential;
    throw ConfigError("j_update_mode must be 'ode' or 'exponential', got '" + s + "'");
}

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snapshot_%04zu.txt", index);
    return buf;
}

bool finite_state(const FluidState& s) {
    for (double v : s.J) {
        if (!std::isfinite(v)) return false;
    }
    for (double v : s.P) {
        if (!std::isfinite(v)) return false;
    }
    for (double v : s.u) {
        if (!std::isfinite(v)) return false;
    }
    for (const Vec2& v : s.w) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
    }
    for (const Vec2& v : s.h) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
    }
    return true;
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    return from_kv(KeyValueFile::parse_file(path));
}

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig c;
    c.params.mu = kv.get_double("material", "mu", c.params.mu);
    c.params.lambda = kv.get_double("material", "lambda", c.params.lambda);
    c.params.gamma = kv.get_double("material", "gamma", c.params.gamma);

    c.preset = kv.get_string("initial", "preset", c.preset);
    c.amplitude = kv.get_double("initial", "amplitude", c.amplitude);
    c.decay_tol = kv.get_double("initial", "decay_tol", c.decay_tol);
    if (!preset_exists(c.preset)) throw ConfigError("unknown preset: " + c.preset);

    const PresetInfo& info = preset_info(c.preset);
    c.y_min = kv.get_double("grid", "y_min", info.y_min);
    c.y_max = kv.get_double("grid", "y_max", info.y_max);
    const long n = kv.get_int("grid", "n_cells", static_cast<long>(c.n_cells));
    if (n < 2) throw ConfigError("grid.n_cells must be >= 2");
    c.n_cells = static_cast<std::size_t>(n);

    c.step.cfl = kv.get_double("step", "cfl", c.step.cfl);
    c.step.dt_max = kv.get_double("step", "dt_max", c.step.dt_max);
    c.step.implicit_tol = kv.get_double("step", "implicit_tol", c.step.implicit_tol);
    c.step.j_update = parse_j_update(kv.get_string("step", "j_update_mode", "ode"));
    c.mass_floor_rel = kv.get_double("step", "mass_floor_rel", c.mass_floor_rel);
    c.mass_floor_abs = kv.get_double("step", "mass_floor", c.mass_floor_abs);

    c.t_end = kv.get_double("run", "t_end", c.t_end);
    c.sample_interval = kv.get_double("run", "sample_interval", c.sample_interval);
    c.output_dir = kv.get_string("run", "output_dir", c.output_dir);
    c.rng_seed = static_cast<std::uint64_t>(kv.get_int("run", "rng_seed", 0));

    c.energy_tol = kv.get_double("invariants", "energy_tol", c.energy_tol);
    c.jbound_tol = kv.get_double("invariants", "jbound_tol", c.jbound_tol);
    c.rho0_min_rel = kv.get_double("invariants", "rho0_min_rel", c.rho0_min_rel);

    c.min_order = kv.get_double("converge", "min_order", c.min_order);

    kv.reject_unknown_keys();
    c.validate();
    return c;
}

void RunConfig::validate() const {
    try {
        params.validate();
        step.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!preset_exists(preset)) throw ConfigError("unknown preset: " + preset);
    if (!(t_end > 0.0)) throw ConfigError("run.t_end must be > 0");
    if (!(sample_interval > 0.0)) throw ConfigError("run.sample_interval must be > 0");
    if (y_max < y_min) throw ConfigError("grid.y_max must not be below grid.y_min");
    if (n_cells < 2) throw ConfigError("grid.n_cells must be >= 2");
    if (!(mass_floor_rel >= 0.0)) throw ConfigError("step.mass_floor_rel must be >= 0");
    if (!(decay_tol > 0.0)) throw ConfigError("initial.decay_tol must be > 0");
    if (!(energy_tol > 0.0) || !(jbound_tol >= 0.0)) {
        throw ConfigError("invariants tolerances must be positive");
    }
    if (!(rho0_min_rel >= 0.0)) throw ConfigError("invariants.rho0_min_rel must be >= 0");
}

LagrangianGrid RunConfig::grid() const {
    double lo = y_min, hi = y_max;
    if (!(hi > lo)) {
        // unset bounds fall back to the preset's suggested box
        const PresetInfo& info = preset_info(preset);
        lo = info.y_min;
        hi = info.y_max;
    }
    return LagrangianGrid::make(lo, hi, n_cells);
}

InitialData RunConfig::initial() const {
    PresetParams pp;
    pp.amplitude = amplitude;
    pp.decay_tol = decay_tol;
    return make_preset(preset, pp);
}

double RunConfig::rho_bar() const { return initial().rho_bar; }

double RunConfig::mass_floor() const {
    return mass_floor_abs >= 0.0 ? mass_floor_abs : mass_floor_rel * rho_bar();
}

double RunConfig::rho0_min() const { return rho0_min_rel * rho_bar(); }

namespace {

struct RunArtifacts {
    std::ostringstream ndjson;
    std::vector<std::pair<std::string, std::string>> snapshots;  // name -> content
};

/// Core pipeline.  Fills `result`; when `artifacts` is non-null the NDJSON
/// series and snapshots are rendered (but not yet written to disk).
void run_pipeline(const RunConfig& cfg, RunResult& result, RunArtifacts* artifacts) {
    const auto t_start = std::chrono::steady_clock::now();
    RunSummary& sum = result.summary;

    const LagrangianGrid grid = cfg.grid();
    const InitialData init = cfg.initial();
    const FluidState state0 = discretize(init, grid);

    StepConfig step_cfg = cfg.step;
    step_cfg.mass_floor = cfg.mass_floor();

    const double e0 = energy(grid, state0, cfg.params);
    const double mass = total_mass(grid, state0);
    const double j_bound = j_lower_bound(mass, e0, cfg.params);
    const double rho0_min = cfg.rho0_min();
    sum.j_bound = j_bound;
    sum.mass_floor_used = step_cfg.mass_floor;
    sum.min_j = 1.0;
    sum.min_p = 0.0;

    auto fail = [&sum](const std::string& why) {
        if (sum.failure.empty()) sum.failure = why;
    };

    TimeIntegrals acc = TimeIntegrals::zeros(grid.n_cells);
    std::vector<InvariantReport>& reports = result.reports;

    auto sample = [&](const std::optional<FluidState>& before, const FluidState& s) {
        reports.push_back(report(grid, before, s, state0, acc, cfg.params, e0, j_bound, rho0_min,
                                 step_cfg.mass_floor));
        const InvariantReport& r = reports.back();
        if (r.energy_drift_rel > cfg.energy_tol) {
            fail("energy drift " + std::to_string(r.energy_drift_rel) + " exceeds tolerance at t = " +
                 std::to_string(s.t));
        }
        if (artifacts) {
            artifacts->ndjson << report_to_json(r).dump() << "\n";
            std::ostringstream snap;
            write_lagrangian_snapshot(snap, grid, s, cfg.params);
            artifacts->snapshots.emplace_back(snapshot_name(artifacts->snapshots.size()), snap.str());
        }
    };

    FluidState state = state0;
    sample(std::nullopt, state);

    bool invariant_violated = false;
    std::size_t sample_index = 1;
    const double time_eps = 1e-12 * std::max(1.0, cfg.t_end);

    while (state.t < cfg.t_end - time_eps) {
        const double next_sample = std::min(sample_index * cfg.sample_interval, cfg.t_end);
        double dt = std::min(stable_dt(grid, state, cfg.params, step_cfg), next_sample - state.t);
        if (!(dt > 0.0)) dt = time_eps;

        FluidState next;
        bool stepped = false;
        for (int attempt = 0; attempt <= 10; ++attempt) {
            try {
                next = step(grid, state, cfg.params, step_cfg, dt);
                stepped = true;
                break;
            } catch (const NonPositiveJacobian&) {
                dt *= 0.5;
                ++sum.dt_retries;
            }
        }
        if (!stepped) {
            fail("Jacobian update kept failing after 10 dt halvings at t = " + std::to_string(state.t));
            result.exit_code = kExitSolverAbort;
            break;
        }
        ++sum.steps;

        if (!finite_state(next)) {
            fail("non-finite state at t = " + std::to_string(next.t));
            result.exit_code = kExitSolverAbort;
            break;
        }

        const double j_min_now = *std::min_element(next.J.begin(), next.J.end());
        const double p_min_now = *std::min_element(next.P.begin(), next.P.end());
        sum.min_j = std::min(sum.min_j, j_min_now);
        sum.min_p = std::min(sum.min_p, p_min_now);
        if (p_min_now < 0.0) {
            invariant_violated = true;
            fail("negative pressure at t = " + std::to_string(next.t));
        }
        if (j_min_now < j_bound * (1.0 - cfg.jbound_tol)) {
            invariant_violated = true;
            fail("Jacobian " + std::to_string(j_min_now) + " fell below the lower bound " +
                 std::to_string(j_bound) + " at t = " + std::to_string(next.t));
        }

        acc.accumulate(grid, state, next, cfg.params);

        if (next.t >= next_sample - time_eps) {
            sample(state, next);
            ++sample_index;
        }
        state = std::move(next);
    }

    result.final_state = state;

    // aggregate the series
    double growth = 0.0;
    {
        const double t_half = 0.5 * cfg.t_end;
        auto norms_of = [](const InvariantReport& r) {
            const MonitorNorms& m = r.monitor_norms;
            return std::array<double, 11>{m.sqrt_rho0_omega_l2, m.sqrt_j_f_l2, m.sqrt_j_g_l2,
                                          m.h_l4, m.h_linf, m.p_linf, m.j_linf, m.h_y_l2,
                                          m.p_y_l2, m.u_y_l2, m.omega_y_l2};
        };
        std::array<double, 11> half_max{};
        std::array<double, 11> full_max{};
        for (const InvariantReport& r : reports) {
            const auto n = norms_of(r);
            for (std::size_t i = 0; i < n.size(); ++i) {
                full_max[i] = std::max(full_max[i], n[i]);
                if (r.t <= t_half + time_eps) half_max[i] = std::max(half_max[i], n[i]);
            }
            sum.max_energy_drift = std::max(sum.max_energy_drift, r.energy_drift_rel);
            sum.max_lnj_residual = std::max(sum.max_lnj_residual, r.lnj_residual_linf);
            sum.max_h_ode_residual = std::max(sum.max_h_ode_residual, r.h_ode_residual_linf);
            sum.max_p_ode_residual = std::max(sum.max_p_ode_residual, r.p_ode_residual_linf);
            sum.max_g_eq_residual = std::max(sum.max_g_eq_residual, r.g_eq_residual_l2);
            sum.max_f_eq_residual = std::max(sum.max_f_eq_residual, r.f_eq_residual_l2);
        }
        for (std::size_t i = 0; i < half_max.size(); ++i) {
            growth = std::max(growth, full_max[i] / std::max(half_max[i], 1e-30));
            if (full_max[i] > 10.0 * half_max[i] + 1e-12) {
                invariant_violated = true;
                fail("monitored norm " + std::to_string(i) +
                     " grew more than tenfold after the first half of the run");
            }
        }
    }
    sum.monitor_growth_ratio = growth;

    if (result.exit_code == kExitPass && (invariant_violated || !sum.failure.empty())) {
        result.exit_code = kExitInvariantFailure;
    }
    sum.pass = result.exit_code == kExitPass;
    sum.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
}

nlohmann::ordered_json summary_json(const RunConfig& cfg, const RunResult& result) {
    const RunSummary& s = result.summary;
    nlohmann::ordered_json j;
    j["code_version"] = kCodeVersion;
    j["preset"] = cfg.preset;
    j["n_cells"] = cfg.n_cells;
    j["t_end"] = cfg.t_end;
    j["j_update_mode"] = cfg.step.j_update == StepConfig::JUpdate::ode ? "ode" : "exponential";
    j["steps"] = s.steps;
    j["dt_retries"] = s.dt_retries;
    j["pass"] = s.pass;
    j["exit_code"] = result.exit_code;
    j["checks"] = {
        {"energy_drift",
         {{"max", s.max_energy_drift}, {"tol", cfg.energy_tol}, {"pass", s.max_energy_drift <= cfg.energy_tol}}},
        {"jacobian_lower_bound",
         {{"min_j", s.min_j},
          {"bound", s.j_bound},
          {"tol", cfg.jbound_tol},
          {"pass", s.min_j >= s.j_bound * (1.0 - cfg.jbound_tol)}}},
        {"pressure_nonnegative", {{"min_p", s.min_p}, {"pass", s.min_p >= 0.0}}},
        {"monitor_norms_bounded",
         {{"growth_ratio", s.monitor_growth_ratio}, {"limit", 10.0}, {"pass", s.monitor_growth_ratio <= 10.0}}},
    };
    j["max_residuals"] = {
        {"lnj_linf", s.max_lnj_residual},
        {"h_ode_linf", s.max_h_ode_residual},
        {"p_ode_linf", s.max_p_ode_residual},
        {"g_eq_l2", s.max_g_eq_residual},
        {"f_eq_l2", s.max_f_eq_residual},
    };
    j["mass_floor_used"] = s.mass_floor_used;
    if (!s.failure.empty()) j["failure"] = s.failure;
    j["wall_time_seconds"] = s.wall_time_seconds;
    return j;
}

} // namespace

RunResult run_in_memory(const RunConfig& cfg) {
    RunResult result;
    run_pipeline(cfg, result, nullptr);
    return result;
}

RunResult run(const RunConfig& cfg) {
    RunResult result;
    RunArtifacts artifacts;
    run_pipeline(cfg, result, &artifacts);

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    result.series_path = (fs::path(cfg.output_dir) / "invariants.ndjson").string();
    result.summary_path = (fs::path(cfg.output_dir) / "summary.json").string();
    write_text_file(result.series_path, artifacts.ndjson.str());
    for (const auto& [name, content] : artifacts.snapshots) {
        write_text_file((fs::path(cfg.output_dir) / name).string(), content);
    }
    write_text_file(result.summary_path, summary_json(cfg, result).dump(2) + "\n");
    return result;
}

ConvergenceReport convergence_study(const RunConfig& base, int levels, double min_order) {
    if (levels < 3) throw ConfigError("convergence study needs at least 3 refinement levels");

    ConvergenceReport rep;
    rep.min_order = min_order;

    constexpr double kZeroFloor = 1e-13;
    const char* names[] = {"energy_drift_rel", "lnj_residual_linf", "h_ode_residual_linf",
                           "p_ode_residual_linf", "g_eq_residual_l2", "f_eq_residual_l2"};
    std::vector<std::vector<double>> values(std::size(names));

    bool all_runs_passed = true;
    for (int level = 0; level < levels; ++level) {
        RunConfig cfg = base;
        cfg.n_cells = base.n_cells << level;
        cfg.step.dt_max = base.step.dt_max / static_cast<double>(1 << level);
        const RunResult r = run_in_memory(cfg);
        all_runs_passed = all_runs_passed && r.exit_code == kExitPass;
        rep.level_cells.push_back(cfg.n_cells);

        double maxes[6] = {0, 0, 0, 0, 0, 0};
        for (const InvariantReport& ir : r.reports) {
            maxes[0] = std::max(maxes[0], ir.energy_drift_rel);
            maxes[1] = std::max(maxes[1], ir.lnj_residual_linf);
            maxes[2] = std::max(maxes[2], ir.h_ode_residual_linf);
            maxes[3] = std::max(maxes[3], ir.p_ode_residual_linf);
            maxes[4] = std::max(maxes[4], ir.g_eq_residual_l2);
            maxes[5] = std::max(maxes[5], ir.f_eq_residual_l2);
        }
        for (std::size_t q = 0; q < values.size(); ++q) values[q].push_back(maxes[q]);
    }

    rep.pass = all_runs_passed;
    for (std::size_t q = 0; q < values.size(); ++q) {
        OrderSeries s;
        s.name = names[q];
        s.values = values[q];
        bool measurable = true;
        for (double v : s.values) {
            if (v <= kZeroFloor) measurable = false;
        }
        for (std::size_t l = 0; l + 1 < s.values.size(); ++l) {
            if (measurable && s.values[l + 1] > 0.0 && s.values[l] > s.values[l + 1]) {
                s.orders.push_back(std::log2(s.values[l] / s.values[l + 1]));
            } else {
                measurable = false;
            }
        }
        s.order_defined = measurable && !s.orders.empty();
        if (s.order_defined) {
            s.observed_order = s.orders.back();
            s.pass = s.observed_order >= min_order;
        } else {
            // residual at the zero floor or non-monotone: no order to assert
            s.observed_order = 0.0;
            bool at_floor = true;
            for (double v : s.values) {
                if (v > kZeroFloor) at_floor = false;
            }
            s.pass = at_floor;
        }
        rep.pass = rep.pass && s.pass;
        rep.quantities.push_back(std::move(s));
    }
    return rep;
}

CheckResult check_series(const std::string& ndjson_path, double energy_tol, double jbound_tol) {
    CheckResult out;
    std::ifstream in(ndjson_path);
    if (!in) {
        out.messages.push_back("cannot open " + ndjson_path);
        return out;
    }

    std::vector<InvariantReport> reports;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            out.messages.push_back("line " + std::to_string(lineno) + ": invalid JSON");
            return out;
        }
        try {
            reports.push_back(report_from_json(j));
        } catch (const std::exception& e) {
            out.messages.push_back("line " + std::to_string(lineno) + ": " + e.what());
            return out;
        }
    }
    if (reports.empty()) {
        out.messages.push_back("empty series");
        return out;
    }

    bool ok = true;
    double t_prev = -std::numeric_limits<double>::infinity();
    for (const InvariantReport& r : reports) {
        if (!(r.t > t_prev) && !(r.t == 0.0 && t_prev < 0.0)) {
            ok = false;
            out.messages.push_back("non-increasing sample time at t = " + std::to_string(r.t));
        }
        t_prev = r.t;
        if (r.energy_drift_rel > energy_tol) {
            ok = false;
            out.messages.push_back("energy drift " + std::to_string(r.energy_drift_rel) +
                                   " beyond tolerance at t = " + std::to_string(r.t));
        }
        if (r.j_min < r.j_lower_bound * (1.0 - jbound_tol)) {
            ok = false;
            out.messages.push_back("j_min below lower bound at t = " + std::to_string(r.t));
        }
        for (double v : {r.energy, r.j_min, r.lnj_residual_linf, r.h_ode_residual_linf,
                         r.p_ode_residual_linf, r.g_eq_residual_l2, r.f_eq_residual_l2,
                         r.monitor_norms.j_linf, r.monitor_norms.h_linf, r.monitor_norms.p_linf}) {
            if (!std::isfinite(v)) {
                ok = false;
                out.messages.push_back("non-finite value at t = " + std::to_string(r.t));
                break;
            }
        }
    }

    // no-blow-up rule over the series
    const double t_half = 0.5 * reports.back().t;
    auto norms_of = [](const InvariantReport& r) {
        const MonitorNorms& m = r.monitor_norms;
        return std::array<double, 11>{m.sqrt_rho0_omega_l2, m.sqrt_j_f_l2, m.sqrt_j_g_l2, m.h_l4,
                                      m.h_linf, m.p_linf, m.j_linf, m.h_y_l2, m.p_y_l2, m.u_y_l2,
                                      m.omega_y_l2};
    };
    std::array<double, 11> half_max{};
    std::array<double, 11> full_max{};
    for (const InvariantReport& r : reports) {
        const auto n = norms_of(r);
        for (std::size_t i = 0; i < n.size(); ++i) {
            full_max[i] = std::max(full_max[i], n[i]);
            if (r.t <= t_half + 1e-12) half_max[i] = std::max(half_max[i], n[i]);
        }
    }
    for (std::size_t i = 0; i < full_max.size(); ++i) {
        if (full_max[i] > 10.0 * half_max[i] + 1e-12) {
            ok = false;
            out.messages.push_back("monitored norm " + std::to_string(i) +
                                   " grew more than tenfold after the first half of the series");
        }
    }

    out.pass = ok;
    if (ok) out.messages.push_back("all invariants hold over " + std::to_string(reports.size()) +
                                   " samples");
    return out;
}

} // namespace lamhd
