#include "lamhd/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lamhd/spatial_ops.hpp"
#include "lamhd/tridiag.hpp"

namespace lamhd {

namespace {

void check_jacobian_positive(const FluidState& s) {
    for (std::size_t i = 0; i < s.J.size(); ++i) {
        if (!(s.J[i] > 0.0)) {
            throw SolverError("non-positive Jacobian J = " + std::to_string(s.J[i]) +
                              " at cell " + std::to_string(i));
        }
    }
}

/// Explicit face forces shared by assemble_rhs and the implicit solves:
/// f_u = -P_y - (1/4pi) h . h_y,  f_w = (1/4pi) h_y.
struct FaceForces {
    FaceField on_u;
    FaceField2 on_w;
};

FaceForces explicit_face_forces(const LagrangianGrid& grid, const FluidState& s) {
    const FaceField p_y = d_face_of_centers(grid, s.P, GhostRule::zero_value);
    const FaceField2 h_y = d_face_of_centers(grid, s.h, GhostRule::zero_value);
    const FaceField2 h_f = avg_center_to_face(grid, s.h);

    FaceForces f;
    f.on_u.resize(grid.n_faces());
    f.on_w.resize(grid.n_faces());
    for (std::size_t i = 0; i < grid.n_faces(); ++i) {
        f.on_u[i] = -p_y[i] - dot(h_f[i], h_y[i]) / MaterialParams::four_pi;
        f.on_w[i] = h_y[i] / MaterialParams::four_pi;
    }
    return f;
}

/// Backward-Euler solve of (m/dt) x - visc * ((x_y)/J)_y = (m/dt) x_old + f
/// on interior faces, Dirichlet x = 0 at the boundary faces.
FaceField implicit_velocity_solve(const LagrangianGrid& grid, const CenterField& J,
                                  const FaceField& face_mass, const FaceField& x_old,
                                  const FaceField& force, double visc, double dt,
                                  double implicit_tol) {
    const std::size_t n_int = grid.n_faces() - 2;
    Tridiagonal m;
    m.lower.assign(n_int, 0.0);
    m.diag.assign(n_int, 0.0);
    m.upper.assign(n_int, 0.0);
    std::vector<double> rhs(n_int);

    const double k = visc / (grid.dy * grid.dy);
    for (std::size_t r = 0; r < n_int; ++r) {
        const std::size_t face = r + 1;           // faces 1 .. n-1
        const double a = k / J[face - 1];          // couples to face-1 (cell face-1)
        const double c = k / J[face];              // couples to face+1 (cell face)
        m.lower[r] = -a;
        m.upper[r] = -c;
        m.diag[r] = face_mass[face] / dt + a + c;
        rhs[r] = face_mass[face] / dt * x_old[face] + force[face];
    }

    const std::vector<double> x_int = solve_tridiagonal(m, rhs);

    double scale = 0.0;
    for (std::size_t r = 0; r < n_int; ++r) {
        scale = std::max(scale, std::abs(rhs[r]));
        scale = std::max(scale, std::abs(m.diag[r] * x_int[r]));
    }
    const double res = tridiagonal_residual(m, x_int, rhs);
    if (res > implicit_tol * scale + 1e-300) {
        throw SolverError("implicit velocity solve residual " + std::to_string(res) +
                          " exceeds tolerance");
    }

    FaceField x(grid.n_faces(), 0.0);
    std::copy(x_int.begin(), x_int.end(), x.begin() + 1);
    return x;
}

} // namespace

void StepConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) {
        throw std::invalid_argument("StepConfig: cfl must be in (0, 1]");
    }
    if (!(dt_max > 0.0)) {
        throw std::invalid_argument("StepConfig: dt_max must be > 0");
    }
    if (!(mass_floor >= 0.0)) {
        throw std::invalid_argument("StepConfig: mass_floor must be >= 0");
    }
    if (!(implicit_tol > 0.0)) {
        throw std::invalid_argument("StepConfig: implicit_tol must be > 0");
    }
}

Tendencies assemble_rhs(const LagrangianGrid& grid, const FluidState& s,
                        const MaterialParams& params) {
    check_jacobian_positive(s);

    const CenterField u_y = d_center_of_faces(grid, s.u);
    const CenterField2 w_y = d_center_of_faces(grid, s.w);

    Tendencies out;
    out.dJ_dt = u_y;

    CenterField u_y_over_j(grid.n_cells);
    CenterField2 w_y_over_j(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        u_y_over_j[i] = u_y[i] / s.J[i];
        w_y_over_j[i] = w_y[i] / s.J[i];
    }

    const FaceField visc_u = d_face_of_centers(grid, u_y_over_j, GhostRule::zero_value);
    const FaceField2 visc_w = d_face_of_centers(grid, w_y_over_j, GhostRule::zero_value);
    const FaceForces f = explicit_face_forces(grid, s);

    out.mom_u.resize(grid.n_faces());
    out.mom_w.resize(grid.n_faces());
    for (std::size_t i = 0; i < grid.n_faces(); ++i) {
        out.mom_u[i] = params.lambda * visc_u[i] + f.on_u[i];
        out.mom_w[i] = params.mu * visc_w[i] + f.on_w[i];
    }

    out.dh_dt.resize(grid.n_cells);
    out.dP_dt.resize(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        out.dh_dt[i] = (w_y[i] - u_y[i] * s.h[i]) / s.J[i];
        out.dP_dt[i] = -params.gamma * u_y_over_j[i] * s.P[i] +
                       (params.gamma - 1.0) * (params.lambda * u_y_over_j[i] * u_y_over_j[i] +
                                               params.mu * norm_sq(w_y_over_j[i]));
    }
    return out;
}

double stable_dt(const LagrangianGrid& grid, const FluidState& s,
                 const MaterialParams& params, const StepConfig& cfg) {
    check_jacobian_positive(s);

    const CenterField u_y = d_center_of_faces(grid, s.u);
    const CenterField2 w_y = d_center_of_faces(grid, s.w);

    bool transverse_active = false;
    double rate = 0.0;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double a = std::abs(u_y[i]) / s.J[i];
        const double b = norm(w_y[i]) / s.J[i];
        const double hh = norm_sq(s.h[i]);
        const double magnetosonic =
            std::sqrt((params.gamma * s.P[i] + hh / MaterialParams::four_pi) /
                      (((*s.rho0)[i] + cfg.mass_floor) * s.J[i])) / grid.dy;
        const double coupling = (params.gamma * s.P[i] + hh / MaterialParams::four_pi) / params.lambda;
        rate = std::max({rate, params.gamma * a, a, b, magnetosonic, coupling});
        if (hh > 0.0) transverse_active = true;
    }
    for (const Vec2& wv : s.w) {
        if (norm_sq(wv) > 0.0) transverse_active = true;
    }
    if (transverse_active) {
        rate = std::max(rate, 1.0 / (MaterialParams::eight_pi * params.mu));
    }

    if (rate == 0.0) return cfg.dt_max;
    return std::min(cfg.dt_max, cfg.cfl / rate);
}

FluidState step(const LagrangianGrid& grid, const FluidState& s,
                const MaterialParams& params, const StepConfig& cfg, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    check_jacobian_positive(s);

    FaceField face_mass = avg_center_to_face(grid, *s.rho0);
    for (double& m : face_mass) m += cfg.mass_floor;

    const FaceForces f = explicit_face_forces(grid, s);

    FluidState out;
    out.t = s.t + dt;
    out.rho0 = s.rho0;

    // (i) implicit velocity solves, one per component
    out.u = implicit_velocity_solve(grid, s.J, face_mass, s.u, f.on_u, params.lambda, dt,
                                    cfg.implicit_tol);
    {
        FaceField wx(grid.n_faces()), wy(grid.n_faces());
        FaceField fx(grid.n_faces()), fy(grid.n_faces());
        for (std::size_t i = 0; i < grid.n_faces(); ++i) {
            wx[i] = s.w[i].x;
            wy[i] = s.w[i].y;
            fx[i] = f.on_w[i].x;
            fy[i] = f.on_w[i].y;
        }
        const FaceField nx = implicit_velocity_solve(grid, s.J, face_mass, wx, fx, params.mu, dt,
                                                     cfg.implicit_tol);
        const FaceField ny = implicit_velocity_solve(grid, s.J, face_mass, wy, fy, params.mu, dt,
                                                     cfg.implicit_tol);
        out.w.resize(grid.n_faces());
        for (std::size_t i = 0; i < grid.n_faces(); ++i) out.w[i] = {nx[i], ny[i]};
    }

    const CenterField u_y_old = d_center_of_faces(grid, s.u);
    const CenterField u_y_new = d_center_of_faces(grid, out.u);
    const CenterField2 w_y_old = d_center_of_faces(grid, s.w);
    const CenterField2 w_y_new = d_center_of_faces(grid, out.w);

    // (iv) Jacobian first: the h and P sub-updates below center their frozen
    // coefficients at the half step, which needs the updated J.
    out.J.resize(grid.n_cells);
    if (cfg.j_update == StepConfig::JUpdate::ode) {
        for (std::size_t i = 0; i < grid.n_cells; ++i) {
            out.J[i] = s.J[i] + 0.5 * dt * (u_y_new[i] + u_y_old[i]);
            if (!(out.J[i] > 0.0)) {
                throw NonPositiveJacobian("trapezoidal J update gave J = " +
                                          std::to_string(out.J[i]) + " at cell " +
                                          std::to_string(i) + "; retry with smaller dt");
            }
        }
    } else {
        // Exponential form: the exponent is the effective viscous flux
        // balance (G + P + |h|^2/8pi)/lambda, whose pointwise value equals
        // u_y/J; quadrature uses the trapezoidal velocity gradient over the
        // pre-update J.  J > 0 follows structurally.
        for (std::size_t i = 0; i < grid.n_cells; ++i) {
            const double a_bar = 0.5 * (u_y_new[i] + u_y_old[i]) / s.J[i];
            const double g_eff =
                params.lambda * a_bar - s.P[i] - norm_sq(s.h[i]) / MaterialParams::eight_pi;
            out.J[i] = s.J[i] *
                       std::exp(dt / params.lambda *
                                (g_eff + s.P[i] + norm_sq(s.h[i]) / MaterialParams::eight_pi));
        }
    }

    // (ii) transverse magnetic field, (iii) pressure: exact integration of
    // the frozen-coefficient forms, coefficients centered at the half step
    // (trapezoidal gradients over the midpoint J).  h stays bounded and
    // P >= 0 structurally (exponentials and squares only).
    out.h.resize(grid.n_cells);
    out.P.resize(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        const double j_mid = 0.5 * (s.J[i] + out.J[i]);
        const double a = 0.5 * (u_y_new[i] + u_y_old[i]) / j_mid;
        const Vec2 sdot = 0.5 * (w_y_new[i] + w_y_old[i]) / j_mid;
        out.h[i] = (s.h[i] + dt * sdot) * std::exp(-dt * a);
        out.P[i] = s.P[i] * std::exp(-params.gamma * dt * a) +
                   dt * (params.gamma - 1.0) * (params.lambda * a * a + params.mu * norm_sq(sdot));
    }

    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        if (!std::isfinite(out.J[i]) || !std::isfinite(out.P[i]) || !std::isfinite(out.h[i].x) ||
            !std::isfinite(out.h[i].y)) {
            throw SolverError("non-finite field after step at cell " + std::to_string(i));
        }
    }
    return out;
}

} // namespace lamhd
