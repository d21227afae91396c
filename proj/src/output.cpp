#include "lamhd/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lamhd {

namespace {

/// Shortest-round-trip-ish fixed formatting keeps reruns byte-identical.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json grid_json(const LagrangianGrid& g) {
    return {{"y_min", g.y_min}, {"y_max", g.y_max}, {"n_cells", g.n_cells}, {"dy", g.dy}};
}

nlohmann::ordered_json params_json(const MaterialParams& p) {
    return {{"mu", p.mu}, {"lambda", p.lambda}, {"gamma", p.gamma}};
}

} // namespace

nlohmann::ordered_json report_to_json(const InvariantReport& r) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["energy"] = r.energy;
    j["energy_drift_rel"] = r.energy_drift_rel;
    j["j_min"] = r.j_min;
    j["j_lower_bound"] = r.j_lower_bound;
    j["lnj_residual_linf"] = r.lnj_residual_linf;
    j["h_ode_residual_linf"] = r.h_ode_residual_linf;
    j["p_ode_residual_linf"] = r.p_ode_residual_linf;
    j["g_eq_residual_l2"] = r.g_eq_residual_l2;
    j["f_eq_residual_l2"] = r.f_eq_residual_l2;
    j["g_excluded_cells"] = r.g_excluded_cells;
    j["f_excluded_cells"] = r.f_excluded_cells;
    j["monitor_norms"] = {
        {"sqrt_rho0_omega_l2", r.monitor_norms.sqrt_rho0_omega_l2},
        {"sqrt_j_f_l2", r.monitor_norms.sqrt_j_f_l2},
        {"sqrt_j_g_l2", r.monitor_norms.sqrt_j_g_l2},
        {"h_l4", r.monitor_norms.h_l4},
        {"h_linf", r.monitor_norms.h_linf},
        {"p_linf", r.monitor_norms.p_linf},
        {"j_linf", r.monitor_norms.j_linf},
        {"h_y_l2", r.monitor_norms.h_y_l2},
        {"p_y_l2", r.monitor_norms.p_y_l2},
        {"u_y_l2", r.monitor_norms.u_y_l2},
        {"omega_y_l2", r.monitor_norms.omega_y_l2},
    };
    j["mass_floor_used"] = r.mass_floor_used;
    return j;
}

InvariantReport report_from_json(const nlohmann::json& j) {
    InvariantReport r;
    r.t = j.at("t").get<double>();
    r.energy = j.at("energy").get<double>();
    r.energy_drift_rel = j.at("energy_drift_rel").get<double>();
    r.j_min = j.at("j_min").get<double>();
    r.j_lower_bound = j.at("j_lower_bound").get<double>();
    r.lnj_residual_linf = j.at("lnj_residual_linf").get<double>();
    r.h_ode_residual_linf = j.at("h_ode_residual_linf").get<double>();
    r.p_ode_residual_linf = j.at("p_ode_residual_linf").get<double>();
    r.g_eq_residual_l2 = j.at("g_eq_residual_l2").get<double>();
    r.f_eq_residual_l2 = j.at("f_eq_residual_l2").get<double>();
    r.g_excluded_cells = j.at("g_excluded_cells").get<std::size_t>();
    r.f_excluded_cells = j.at("f_excluded_cells").get<std::size_t>();
    const auto& m = j.at("monitor_norms");
    r.monitor_norms.sqrt_rho0_omega_l2 = m.at("sqrt_rho0_omega_l2").get<double>();
    r.monitor_norms.sqrt_j_f_l2 = m.at("sqrt_j_f_l2").get<double>();
    r.monitor_norms.sqrt_j_g_l2 = m.at("sqrt_j_g_l2").get<double>();
    r.monitor_norms.h_l4 = m.at("h_l4").get<double>();
    r.monitor_norms.h_linf = m.at("h_linf").get<double>();
    r.monitor_norms.p_linf = m.at("p_linf").get<double>();
    r.monitor_norms.j_linf = m.at("j_linf").get<double>();
    r.monitor_norms.h_y_l2 = m.at("h_y_l2").get<double>();
    r.monitor_norms.p_y_l2 = m.at("p_y_l2").get<double>();
    r.monitor_norms.u_y_l2 = m.at("u_y_l2").get<double>();
    r.monitor_norms.omega_y_l2 = m.at("omega_y_l2").get<double>();
    r.mass_floor_used = j.at("mass_floor_used").get<double>();
    return r;
}

void write_lagrangian_snapshot(std::ostream& out, const LagrangianGrid& grid,
                               const FluidState& state, const MaterialParams& params) {
    const DerivedFluxes fx = compute_fluxes(grid, state, params);

    nlohmann::ordered_json header;
    header["time"] = state.t;
    header["coordinate_system"] = "lagrangian";
    header["grid"] = grid_json(grid);
    header["params"] = params_json(params);
    header["code_version"] = kCodeVersion;
    out << header.dump() << "\n";
    out << "y kind J rho0 u w1 w2 h1 h2 P G F1 F2 H vacuum\n";

    const double nan = std::nan("");
    for (std::size_t i = 0; i < grid.n_faces(); ++i) {
        out << fmt(grid.face(i)) << " face " << fmt(nan) << ' ' << fmt(nan) << ' '
            << fmt(state.u[i]) << ' ' << fmt(state.w[i].x) << ' ' << fmt(state.w[i].y) << ' '
            << fmt(nan) << ' ' << fmt(nan) << ' ' << fmt(nan) << ' ' << fmt(nan) << ' ' << fmt(nan)
            << ' ' << fmt(nan) << ' ' << fmt(nan) << " 0\n";
        if (i < grid.n_cells) {
            const bool vacuum = (*state.rho0)[i] == 0.0;
            out << fmt(grid.center(i)) << " center " << fmt(state.J[i]) << ' '
                << fmt((*state.rho0)[i]) << ' ' << fmt(nan) << ' ' << fmt(nan) << ' ' << fmt(nan)
                << ' ' << fmt(state.h[i].x) << ' ' << fmt(state.h[i].y) << ' ' << fmt(state.P[i])
                << ' ' << fmt(fx.G[i]) << ' ' << fmt(fx.F[i].x) << ' ' << fmt(fx.F[i].y) << ' '
                << fmt(fx.H[i]) << ' ' << (vacuum ? 1 : 0) << "\n";
        }
    }
}

void write_eulerian_snapshot(std::ostream& out, const EulerianSnapshot& snap,
                             const LagrangianGrid& grid, const MaterialParams& params, double t) {
    nlohmann::ordered_json header;
    header["time"] = t;
    header["coordinate_system"] = "eulerian";
    header["grid"] = grid_json(grid);
    header["params"] = params_json(params);
    header["code_version"] = kCodeVersion;
    out << header.dump() << "\n";
    out << "x kind rho u w1 w2 h1 h2 P J\n";
    for (std::size_t i = 0; i < snap.x.size(); ++i) {
        out << fmt(snap.x[i]) << " sample " << fmt(snap.rho[i]) << ' ' << fmt(snap.u[i]) << ' '
            << fmt(snap.w[i].x) << ' ' << fmt(snap.w[i].y) << ' ' << fmt(snap.h[i].x) << ' '
            << fmt(snap.h[i].y) << ' ' << fmt(snap.P[i]) << ' ' << fmt(snap.J[i]) << "\n";
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace lamhd
