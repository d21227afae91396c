#pragma once

#include <cstddef>
#include <optional>

#include "lamhd/core.hpp"
#include "lamhd/grid.hpp"
#include "lamhd/state.hpp"

namespace lamhd {

/// Derived flux fields at cell centers:
///   G = lambda u_y/J - P - |h|^2/(8 pi)   (effective viscous flux)
///   F = mu w_y/J + h/(4 pi)               (transverse effective viscous flux)
///   H = |h|^2
struct DerivedFluxes {
    CenterField G;
    CenterField2 F;
    CenterField H;
};

DerivedFluxes compute_fluxes(const LagrangianGrid& grid, const FluidState& state,
                             const MaterialParams& params);

/// Conserved total energy: integral of rho0 u^2/2 + rho0 |w|^2/2 +
/// J |h|^2/(8 pi) + J P/(gamma - 1).  Kinetic terms are integrated
/// trapezoidally over faces with face-averaged rho0; the rest over centers.
double energy(const LagrangianGrid& grid, const FluidState& state, const MaterialParams& params);

/// Reference energy of the initial state (J == 1).
double energy0(const InitialData& init, const LagrangianGrid& grid, const MaterialParams& params);

/// Closed-form uniform lower bound for J over the whole trajectory:
/// exp(-(2 sqrt(2)/lambda) * sqrt(||rho0||_1 * E0)).  Depends only on the
/// initial data.
double j_lower_bound(double rho0_l1, double e0, const MaterialParams& params);
double j_lower_bound(const InitialData& init, const LagrangianGrid& grid,
                     const MaterialParams& params);

/// Per-cell running time integrals accumulated along a trajectory
/// (trapezoidal in t), needed by the log-Jacobian identity.
struct TimeIntegrals {
    /// integral over (0, t) of P + |h|^2/(8 pi), per cell.
    CenterField p_plus_mag;
    /// integral over (0, t) of G at the first cell: the boundary anchor of
    /// the identity on a truncated box (vanishes as the box grows).
    double g_at_left = 0.0;
    double t = 0.0;

    static TimeIntegrals zeros(std::size_t n_cells) {
        TimeIntegrals ti;
        ti.p_plus_mag.assign(n_cells, 0.0);
        return ti;
    }

    void accumulate(const LagrangianGrid& grid, const FluidState& before, const FluidState& after,
                    const MaterialParams& params);
};

/// Residual of the integrated momentum identity
///   lambda ln J(y, t) = int_{y_min}^{y} rho0 (u - u0) dy'
///                       + int_0^t (P + |h|^2/8pi) dtau  + int_0^t G|_{y_min} dtau
/// per cell.  The spatial integral is the cumulative sum over faces up to and
/// including the cell's left face; the time integrals come from `acc`.  The
/// last term anchors the identity at the truncated boundary; it is bounded
/// by the far-field decay and absent in the whole-line limit.
CenterField lnj_identity_residual(const LagrangianGrid& grid, const FluidState& state,
                                  const FluidState& initial, const TimeIntegrals& acc,
                                  const MaterialParams& params);

/// Pointwise residual of the closed H = |h|^2 evolution equation
///   H_t + H^2/(4 pi lambda) + H/(2 pi mu) + 2 H P/lambda
///     = (2/mu) F . h - 2 H G/lambda
/// with a supplied dH/dt estimate.
CenterField h_ode_residual(const FluidState& state, const DerivedFluxes& fluxes,
                           const CenterField& dH_dt, const MaterialParams& params);

/// Pointwise residual of the closed pressure equation
///   P_t + (1/lambda)(P + (2-gamma)/2 G + (2-gamma)/(16 pi) H)^2
///     = (gamma^2/(4 lambda))(G + H/8pi)^2 + ((gamma-1)/mu)|F - h/4pi|^2
/// with a supplied dP/dt estimate.
CenterField p_ode_residual(const FluidState& state, const DerivedFluxes& fluxes,
                           const CenterField& dP_dt, const MaterialParams& params);

/// Difference-quotient versions across one accepted step: dH/dt and dP/dt
/// from the two states, algebraic terms at the midpoint average.
CenterField h_ode_residual_step(const LagrangianGrid& grid, const FluidState& before,
                                const FluidState& after, const MaterialParams& params);
CenterField p_ode_residual_step(const LagrangianGrid& grid, const FluidState& before,
                                const FluidState& after, const MaterialParams& params);

/// L2 residual of a parabolic flux equation over the non-vacuum cells.
struct FluxEquationResidual {
    double l2 = 0.0;
    std::size_t admissible_cells = 0;
    std::size_t excluded_cells = 0;
};

/// Residual of G_t - (lambda/J)(G_y/rho0)_y = -gamma (u_y/J) G
///   + ((2-gamma)/8pi)(u_y/J) H - (gamma-1) mu |w_y/J|^2 - h . w_y/(4 pi J),
/// evaluated between two consecutive states on cells whose own and
/// neighboring rho0 exceed rho0_min (the 1/rho0 term is singular in vacuum).
FluxEquationResidual g_equation_residual(const LagrangianGrid& grid, const FluidState& before,
                                         const FluidState& after, const MaterialParams& params,
                                         double rho0_min);

/// Residual of F_t - (mu/J)(F_y/rho0)_y = -(u_y/J) F + (1/4pi)(w_y/J),
/// same admissibility rule as g_equation_residual.
FluxEquationResidual f_equation_residual(const LagrangianGrid& grid, const FluidState& before,
                                         const FluidState& after, const MaterialParams& params,
                                         double rho0_min);

/// Cellwise variants used by the structural (term-dropout) checks.
CenterField g_equation_residual_cells(const LagrangianGrid& grid, const FluidState& before,
                                      const FluidState& after, const MaterialParams& params);
CenterField2 f_equation_residual_cells(const LagrangianGrid& grid, const FluidState& before,
                                       const FluidState& after, const MaterialParams& params);

/// Monitored a priori norms; the theory bounds each of these uniformly in
/// time on solutions, so growth indicates an unresolved or blown-up run.
struct MonitorNorms {
    double sqrt_rho0_omega_l2 = 0.0;
    double sqrt_j_f_l2 = 0.0;
    double sqrt_j_g_l2 = 0.0;
    double h_l4 = 0.0;
    double h_linf = 0.0;
    double p_linf = 0.0;
    double j_linf = 0.0;
    double h_y_l2 = 0.0;
    double p_y_l2 = 0.0;
    double u_y_l2 = 0.0;
    double omega_y_l2 = 0.0;
};

MonitorNorms monitor_norms(const LagrangianGrid& grid, const FluidState& state,
                           const MaterialParams& params);

/// Snapshot of every checked identity at one instant.
struct InvariantReport {
    double t = 0.0;
    double energy = 0.0;
    double energy_drift_rel = 0.0;
    double j_min = 0.0;
    double j_lower_bound = 0.0;
    double lnj_residual_linf = 0.0;
    double h_ode_residual_linf = 0.0;
    double p_ode_residual_linf = 0.0;
    double g_eq_residual_l2 = 0.0;
    double f_eq_residual_l2 = 0.0;
    std::size_t g_excluded_cells = 0;
    std::size_t f_excluded_cells = 0;
    MonitorNorms monitor_norms;
    double mass_floor_used = 0.0;
};

/// Assembles a full report at `state.t`.  `before` is the state one step
/// earlier (nullopt at t = 0, where the step-residuals are zero by
/// convention); E0 and the J bound are precomputed from the initial data.
InvariantReport report(const LagrangianGrid& grid, const std::optional<FluidState>& before,
                       const FluidState& state, const FluidState& initial,
                       const TimeIntegrals& acc, const MaterialParams& params, double e0,
                       double j_bound, double rho0_min, double mass_floor);

} // namespace lamhd
