#pragma once

#include <stdexcept>
#include <string>

#include "lamhd/core.hpp"
#include "lamhd/grid.hpp"
#include "lamhd/state.hpp"

namespace lamhd {

/// Time-integration controls.
struct StepConfig {
    /// Safety factor on the rate-based stability bound.
    double cfl = 0.4;
    /// Hard cap on the step size.
    double dt_max = 0.1;
    /// Epsilon added to rho0 inside the implicit velocity solves only; the
    /// reported physics (mass, energy, monitored norms) always uses the true
    /// rho0.  Scenario configs default this to 1e-6 * rho_bar.
    double mass_floor = 0.0;
    /// Jacobian update path: "ode" integrates J_t = u_y trapezoidally;
    /// "exponential" multiplies J by exp(dt/lambda * (G + P + |h|^2/8pi)),
    /// which keeps J > 0 structurally.
    enum class JUpdate { ode, exponential };
    JUpdate j_update = JUpdate::ode;
    /// Acceptance threshold (relative) for the implicit solve residual.
    double implicit_tol = 1e-12;

    void validate() const;
};

/// Instantaneous right-hand sides of the evolved system, at native sites.
struct Tendencies {
    CenterField dJ_dt;       ///< u_y per cell
    FaceField mom_u;         ///< lambda*(u_y/J)_y - P_y - (1/4pi) h . h_y per face
    FaceField2 mom_w;        ///< mu*(w_y/J)_y + (1/4pi) h_y per face
    CenterField2 dh_dt;      ///< (w_y - u_y h)/J per cell
    CenterField dP_dt;       ///< -gamma (u_y/J) P + (gamma-1)(lambda (u_y/J)^2 + mu |w_y/J|^2)
};

/// Raised when a step or assembly cannot proceed (non-finite data, failed
/// implicit solve).  The driver maps it to a solver-abort exit.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the trapezoidal Jacobian update produces J <= 0; the caller
/// is expected to retry with half the step, up to a bounded number of times.
class NonPositiveJacobian : public SolverError {
public:
    using SolverError::SolverError;
};

/// Evaluates all tendencies of the current state.  Throws SolverError with
/// the offending location if J <= 0 anywhere.
Tendencies assemble_rhs(const LagrangianGrid& grid, const FluidState& state,
                        const MaterialParams& params);

/// Rate-based stable step: cfl / (max pointwise rate), capped by dt_max.
/// The implicit viscous terms do not constrain the step; the counted rates
/// are the velocity-gradient rates gamma|u_y/J|, |u_y/J|, |w_y/J|, the
/// acoustic/magnetosonic rate sqrt((gamma P + |h|^2/4pi)/((rho0+eps) J))/dy,
/// the flux-coupling rate (gamma P + |h|^2/4pi)/lambda, and, when transverse
/// fields are active, the constant longitudinal-field coupling rate
/// 1/(8 pi mu).  A quiescent state (all rates zero) returns dt_max.
double stable_dt(const LagrangianGrid& grid, const FluidState& state,
                 const MaterialParams& params, const StepConfig& cfg);

/// One IMEX step of size dt:
///   (i)  backward-Euler solve for u and w with diffusion frozen at the
///        current J and diagonal mass (rho0 + eps)/dt (tridiagonal SPD,
///        Dirichlet u = w = 0 at the boundary faces),
///  (ii)  h <- (h + dt * w_y/J) * exp(-dt * u_y/J) with the new gradients,
/// (iii)  P <- P * exp(-gamma dt u_y/J) + dt (gamma-1)(lambda (u_y/J)^2 +
///        mu |w_y/J|^2), nonnegative by construction,
///  (iv)  J per StepConfig::j_update.
/// Throws NonPositiveJacobian if the ode-mode J update underflows.
FluidState step(const LagrangianGrid& grid, const FluidState& state,
                const MaterialParams& params, const StepConfig& cfg, double dt);

} // namespace lamhd
