#include "lamhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "lamhd/spatial_ops.hpp"

namespace lamhd {

namespace {

constexpr double kEnergyFloor = 1e-30;

double sq(double x) { return x * x; }

/// Arithmetic midpoint of two consecutive states (rho0 shared).
FluidState midpoint_state(const FluidState& a, const FluidState& b) {
    FluidState m;
    m.t = 0.5 * (a.t + b.t);
    m.rho0 = a.rho0;
    const std::size_t n = a.J.size();
    m.J.resize(n);
    m.P.resize(n);
    m.h.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.J[i] = 0.5 * (a.J[i] + b.J[i]);
        m.P[i] = 0.5 * (a.P[i] + b.P[i]);
        m.h[i] = 0.5 * (a.h[i] + b.h[i]);
    }
    m.u.resize(a.u.size());
    m.w.resize(a.w.size());
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        m.u[i] = 0.5 * (a.u[i] + b.u[i]);
        m.w[i] = 0.5 * (a.w[i] + b.w[i]);
    }
    return m;
}

double linf(const CenterField& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

DerivedFluxes compute_fluxes(const LagrangianGrid& grid, const FluidState& s,
                             const MaterialParams& params) {
    const CenterField u_y = d_center_of_faces(grid, s.u);
    const CenterField2 w_y = d_center_of_faces(grid, s.w);

    DerivedFluxes fx;
    fx.G.resize(grid.n_cells);
    fx.F.resize(grid.n_cells);
    fx.H.resize(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        fx.H[i] = norm_sq(s.h[i]);
        fx.G[i] = params.lambda * u_y[i] / s.J[i] - s.P[i] - fx.H[i] / MaterialParams::eight_pi;
        fx.F[i] = params.mu / s.J[i] * w_y[i] + s.h[i] / MaterialParams::four_pi;
    }
    return fx;
}

double energy(const LagrangianGrid& grid, const FluidState& s, const MaterialParams& params) {
    const FaceField rho0_f = avg_center_to_face(grid, *s.rho0);
    FaceField kinetic(grid.n_faces());
    for (std::size_t i = 0; i < grid.n_faces(); ++i) {
        kinetic[i] = 0.5 * rho0_f[i] * (sq(s.u[i]) + norm_sq(s.w[i]));
    }
    CenterField rest(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        rest[i] = s.J[i] * norm_sq(s.h[i]) / MaterialParams::eight_pi +
                  s.J[i] * s.P[i] / (params.gamma - 1.0);
    }
    return integrate_faces(grid, kinetic) + integrate_centers(grid, rest);
}

double energy0(const InitialData& init, const LagrangianGrid& grid, const MaterialParams& params) {
    return energy(grid, discretize(init, grid), params);
}

double j_lower_bound(double rho0_l1, double e0, const MaterialParams& params) {
    const double prod = std::max(rho0_l1 * e0, 0.0);
    return std::exp(-2.0 * std::sqrt(2.0) / params.lambda * std::sqrt(prod));
}

double j_lower_bound(const InitialData& init, const LagrangianGrid& grid,
                     const MaterialParams& params) {
    const FluidState s0 = discretize(init, grid);
    return j_lower_bound(total_mass(grid, s0), energy(grid, s0, params), params);
}

void TimeIntegrals::accumulate(const LagrangianGrid& grid, const FluidState& before,
                               const FluidState& after, const MaterialParams& params) {
    const double dt = after.t - before.t;
    for (std::size_t i = 0; i < p_plus_mag.size(); ++i) {
        const double vb = before.P[i] + norm_sq(before.h[i]) / MaterialParams::eight_pi;
        const double va = after.P[i] + norm_sq(after.h[i]) / MaterialParams::eight_pi;
        p_plus_mag[i] += 0.5 * dt * (vb + va);
    }
    auto g_left = [&](const FluidState& s) {
        const double u_y = (s.u[1] - s.u[0]) / grid.dy;
        return params.lambda * u_y / s.J.front() - s.P.front() -
               norm_sq(s.h.front()) / MaterialParams::eight_pi;
    };
    g_at_left += 0.5 * dt * (g_left(before) + g_left(after));
    t = after.t;
}

CenterField lnj_identity_residual(const LagrangianGrid& grid, const FluidState& s,
                                  const FluidState& initial, const TimeIntegrals& acc,
                                  const MaterialParams& params) {
    const FaceField rho0_f = avg_center_to_face(grid, *s.rho0);
    CenterField res(grid.n_cells);
    double cumsum = 0.0;
    for (std::size_t c = 0; c < grid.n_cells; ++c) {
        // momentum integral from the left boundary up to this cell's left face
        cumsum += rho0_f[c] * (s.u[c] - initial.u[c]) * grid.dy;
        res[c] = params.lambda * std::log(s.J[c]) - cumsum - acc.p_plus_mag[c] - acc.g_at_left;
    }
    return res;
}

CenterField h_ode_residual(const FluidState& s, const DerivedFluxes& fx, const CenterField& dH_dt,
                           const MaterialParams& params) {
    const std::size_t n = s.J.size();
    CenterField res(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double H = fx.H[i];
        res[i] = dH_dt[i] + sq(H) / (MaterialParams::four_pi * params.lambda) +
                 H / (0.5 * MaterialParams::four_pi * params.mu) +
                 2.0 * H * s.P[i] / params.lambda - 2.0 / params.mu * dot(fx.F[i], s.h[i]) +
                 2.0 * H * fx.G[i] / params.lambda;
    }
    return res;
}

CenterField p_ode_residual(const FluidState& s, const DerivedFluxes& fx, const CenterField& dP_dt,
                           const MaterialParams& params) {
    const std::size_t n = s.J.size();
    const double g2 = 2.0 - params.gamma;
    CenterField res(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double H = fx.H[i];
        const double damping = s.P[i] + 0.5 * g2 * fx.G[i] + g2 / (4.0 * MaterialParams::four_pi) * H;
        const double source = fx.G[i] + H / MaterialParams::eight_pi;
        res[i] = dP_dt[i] + sq(damping) / params.lambda -
                 sq(params.gamma) / (4.0 * params.lambda) * sq(source) -
                 (params.gamma - 1.0) / params.mu *
                     norm_sq(fx.F[i] - s.h[i] / MaterialParams::four_pi);
    }
    return res;
}

CenterField h_ode_residual_step(const LagrangianGrid& grid, const FluidState& before,
                                const FluidState& after, const MaterialParams& params) {
    const double dt = after.t - before.t;
    const FluidState mid = midpoint_state(before, after);
    CenterField dH_dt(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        dH_dt[i] = (norm_sq(after.h[i]) - norm_sq(before.h[i])) / dt;
    }
    return h_ode_residual(mid, compute_fluxes(grid, mid, params), dH_dt, params);
}

CenterField p_ode_residual_step(const LagrangianGrid& grid, const FluidState& before,
                                const FluidState& after, const MaterialParams& params) {
    const double dt = after.t - before.t;
    const FluidState mid = midpoint_state(before, after);
    CenterField dP_dt(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        dP_dt[i] = (after.P[i] - before.P[i]) / dt;
    }
    return p_ode_residual(mid, compute_fluxes(grid, mid, params), dP_dt, params);
}

namespace {

/// Shared scaffolding of the G/F flux-equation residuals: difference
/// quotient in t, midpoint algebra, vacuum-aware diffusion stencil.
template <class Flux, class Rhs>
void flux_equation_scan(const LagrangianGrid& grid, const FluidState& before,
                        const FluidState& after, double rho0_min, double visc,
                        const std::vector<Flux>& flux_before, const std::vector<Flux>& flux_after,
                        const std::vector<Flux>& flux_mid, const FluidState& mid, Rhs&& rhs_at,
                        std::vector<Flux>* cellwise, FluxEquationResidual* summary) {
    const double dt = after.t - before.t;
    const CenterField& rho0 = *mid.rho0;
    const double dy = grid.dy;

    if (cellwise) cellwise->assign(grid.n_cells, Flux{});
    double sum_sq = 0.0;
    std::size_t admissible = 0;

    for (std::size_t c = 1; c + 1 < grid.n_cells; ++c) {
        if (!(rho0[c - 1] > rho0_min && rho0[c] > rho0_min && rho0[c + 1] > rho0_min)) continue;
        const double rho_left = 0.5 * (rho0[c - 1] + rho0[c]);
        const double rho_right = 0.5 * (rho0[c] + rho0[c + 1]);
        const Flux grad_right = (flux_mid[c + 1] - flux_mid[c]) / (dy * rho_right);
        const Flux grad_left = (flux_mid[c] - flux_mid[c - 1]) / (dy * rho_left);
        const Flux diffusion = (grad_right - grad_left) * (visc / (mid.J[c] * dy));
        const Flux time_derivative = (flux_after[c] - flux_before[c]) / dt;
        const Flux r = time_derivative - diffusion - rhs_at(c);
        if (cellwise) (*cellwise)[c] = r;
        if constexpr (std::is_same_v<Flux, double>) {
            sum_sq += r * r;
        } else {
            sum_sq += norm_sq(r);
        }
        ++admissible;
    }

    if (summary) {
        summary->l2 = std::sqrt(sum_sq * dy);
        summary->admissible_cells = admissible;
        summary->excluded_cells = grid.n_cells - admissible;
    }
}

struct GEquationTerms {
    const FluidState& mid;
    const DerivedFluxes& fx;
    const CenterField& u_y;
    const CenterField2& w_y;
    const MaterialParams& params;

    double operator()(std::size_t c) const {
        const double a = u_y[c] / mid.J[c];
        const Vec2 s = w_y[c] / mid.J[c];
        return -params.gamma * a * fx.G[c] +
               (2.0 - params.gamma) / MaterialParams::eight_pi * a * fx.H[c] -
               (params.gamma - 1.0) * params.mu * norm_sq(s) -
               dot(mid.h[c], w_y[c]) / (MaterialParams::four_pi * mid.J[c]);
    }
};

struct FEquationTerms {
    const FluidState& mid;
    const DerivedFluxes& fx;
    const CenterField& u_y;
    const CenterField2& w_y;
    const MaterialParams& params;

    Vec2 operator()(std::size_t c) const {
        const double a = u_y[c] / mid.J[c];
        return (-a) * fx.F[c] + w_y[c] / (MaterialParams::four_pi * mid.J[c]);
    }
};

} // namespace

FluxEquationResidual g_equation_residual(const LagrangianGrid& grid, const FluidState& before,
                                         const FluidState& after, const MaterialParams& params,
                                         double rho0_min) {
    const FluidState mid = midpoint_state(before, after);
    const DerivedFluxes fb = compute_fluxes(grid, before, params);
    const DerivedFluxes fa = compute_fluxes(grid, after, params);
    const DerivedFluxes fm = compute_fluxes(grid, mid, params);
    const CenterField u_y = d_center_of_faces(grid, mid.u);
    const CenterField2 w_y = d_center_of_faces(grid, mid.w);
    FluxEquationResidual out;
    flux_equation_scan(grid, before, after, rho0_min, params.lambda, fb.G, fa.G, fm.G, mid,
                       GEquationTerms{mid, fm, u_y, w_y, params}, static_cast<CenterField*>(nullptr), &out);
    return out;
}

FluxEquationResidual f_equation_residual(const LagrangianGrid& grid, const FluidState& before,
                                         const FluidState& after, const MaterialParams& params,
                                         double rho0_min) {
    const FluidState mid = midpoint_state(before, after);
    const DerivedFluxes fb = compute_fluxes(grid, before, params);
    const DerivedFluxes fa = compute_fluxes(grid, after, params);
    const DerivedFluxes fm = compute_fluxes(grid, mid, params);
    const CenterField u_y = d_center_of_faces(grid, mid.u);
    const CenterField2 w_y = d_center_of_faces(grid, mid.w);
    FluxEquationResidual out;
    flux_equation_scan(grid, before, after, rho0_min, params.mu, fb.F, fa.F, fm.F, mid,
                       FEquationTerms{mid, fm, u_y, w_y, params}, static_cast<CenterField2*>(nullptr), &out);
    return out;
}

CenterField g_equation_residual_cells(const LagrangianGrid& grid, const FluidState& before,
                                      const FluidState& after, const MaterialParams& params) {
    const FluidState mid = midpoint_state(before, after);
    const DerivedFluxes fb = compute_fluxes(grid, before, params);
    const DerivedFluxes fa = compute_fluxes(grid, after, params);
    const DerivedFluxes fm = compute_fluxes(grid, mid, params);
    const CenterField u_y = d_center_of_faces(grid, mid.u);
    const CenterField2 w_y = d_center_of_faces(grid, mid.w);
    CenterField cells;
    flux_equation_scan(grid, before, after, 0.0, params.lambda, fb.G, fa.G, fm.G, mid,
                       GEquationTerms{mid, fm, u_y, w_y, params}, &cells, nullptr);
    return cells;
}

CenterField2 f_equation_residual_cells(const LagrangianGrid& grid, const FluidState& before,
                                       const FluidState& after, const MaterialParams& params) {
    const FluidState mid = midpoint_state(before, after);
    const DerivedFluxes fb = compute_fluxes(grid, before, params);
    const DerivedFluxes fa = compute_fluxes(grid, after, params);
    const DerivedFluxes fm = compute_fluxes(grid, mid, params);
    const CenterField u_y = d_center_of_faces(grid, mid.u);
    const CenterField2 w_y = d_center_of_faces(grid, mid.w);
    CenterField2 cells;
    flux_equation_scan(grid, before, after, 0.0, params.mu, fb.F, fa.F, fm.F, mid,
                       FEquationTerms{mid, fm, u_y, w_y, params}, &cells, nullptr);
    return cells;
}

MonitorNorms monitor_norms(const LagrangianGrid& grid, const FluidState& s,
                           const MaterialParams& params) {
    const DerivedFluxes fx = compute_fluxes(grid, s, params);
    const FaceField rho0_f = avg_center_to_face(grid, *s.rho0);
    const CenterField u_y = d_center_of_faces(grid, s.u);
    const CenterField2 w_y = d_center_of_faces(grid, s.w);
    const FaceField2 h_y = d_face_of_centers(grid, s.h, GhostRule::zero_value);
    const FaceField p_y = d_face_of_centers(grid, s.P, GhostRule::zero_value);

    MonitorNorms n;
    {
        FaceField f(grid.n_faces());
        for (std::size_t i = 0; i < grid.n_faces(); ++i) f[i] = rho0_f[i] * norm_sq(s.w[i]);
        n.sqrt_rho0_omega_l2 = std::sqrt(integrate_faces(grid, f));
        for (std::size_t i = 0; i < grid.n_faces(); ++i) f[i] = norm_sq(h_y[i]);
        n.h_y_l2 = std::sqrt(integrate_faces(grid, f));
        for (std::size_t i = 0; i < grid.n_faces(); ++i) f[i] = sq(p_y[i]);
        n.p_y_l2 = std::sqrt(integrate_faces(grid, f));
    }
    {
        CenterField c(grid.n_cells);
        for (std::size_t i = 0; i < grid.n_cells; ++i) c[i] = s.J[i] * norm_sq(fx.F[i]);
        n.sqrt_j_f_l2 = std::sqrt(integrate_centers(grid, c));
        for (std::size_t i = 0; i < grid.n_cells; ++i) c[i] = s.J[i] * sq(fx.G[i]);
        n.sqrt_j_g_l2 = std::sqrt(integrate_centers(grid, c));
        for (std::size_t i = 0; i < grid.n_cells; ++i) c[i] = sq(fx.H[i]);
        n.h_l4 = std::pow(integrate_centers(grid, c), 0.25);
        for (std::size_t i = 0; i < grid.n_cells; ++i) c[i] = sq(u_y[i]);
        n.u_y_l2 = std::sqrt(integrate_centers(grid, c));
        for (std::size_t i = 0; i < grid.n_cells; ++i) c[i] = norm_sq(w_y[i]);
        n.omega_y_l2 = std::sqrt(integrate_centers(grid, c));
    }
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        n.h_linf = std::max(n.h_linf, norm(s.h[i]));
        n.p_linf = std::max(n.p_linf, s.P[i]);
        n.j_linf = std::max(n.j_linf, s.J[i]);
    }
    return n;
}

InvariantReport report(const LagrangianGrid& grid, const std::optional<FluidState>& before,
                       const FluidState& state, const FluidState& initial,
                       const TimeIntegrals& acc, const MaterialParams& params, double e0,
                       double j_bound, double rho0_min, double mass_floor) {
    InvariantReport r;
    r.t = state.t;
    r.energy = energy(grid, state, params);
    r.energy_drift_rel = std::abs(r.energy - e0) / std::max(e0, kEnergyFloor);
    r.j_min = *std::min_element(state.J.begin(), state.J.end());
    r.j_lower_bound = j_bound;
    r.lnj_residual_linf = linf(lnj_identity_residual(grid, state, initial, acc, params));
    if (before) {
        r.h_ode_residual_linf = linf(h_ode_residual_step(grid, *before, state, params));
        r.p_ode_residual_linf = linf(p_ode_residual_step(grid, *before, state, params));
        const FluxEquationResidual g = g_equation_residual(grid, *before, state, params, rho0_min);
        const FluxEquationResidual f = f_equation_residual(grid, *before, state, params, rho0_min);
        r.g_eq_residual_l2 = g.l2;
        r.f_eq_residual_l2 = f.l2;
        r.g_excluded_cells = g.excluded_cells;
        r.f_excluded_cells = f.excluded_cells;
    }
    r.monitor_norms = monitor_norms(grid, state, params);
    r.mass_floor_used = mass_floor;
    return r;
}

} // namespace lamhd
