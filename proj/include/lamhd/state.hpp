#pragma once

#include <functional>
#include <memory>

#include "lamhd/core.hpp"
#include "lamhd/grid.hpp"

namespace lamhd {

/// Initial data as sampling functions of the Lagrangian coordinate.
/// The Jacobian starts identically at 1 and is not sampled.
///
/// Admissibility: 0 <= rho0 <= rho_bar, P0 >= 0, and u0, w0, h0, P0 must have
/// decayed below `decay_tol` (relative to the field's max magnitude) at the
/// domain boundary; rho0 itself is allowed to stay positive at the boundary.
struct InitialData {
    std::function<double(double)> rho0;
    std::function<double(double)> u0;
    std::function<Vec2(double)> w0;
    std::function<Vec2(double)> h0;
    std::function<double(double)> P0;

    /// Declared uniform upper bound for the initial density.
    double rho_bar = 1.0;
    /// Relative boundary-decay tolerance for u0, w0, h0, P0.
    double decay_tol = 1e-8;
};

/// One time level of the evolved system.  u and w live on faces; J, P, h and
/// the frozen initial density rho0 live on cell centers.  The current
/// density is never stored: it is rho0 / J by the mass identity.
///
/// States are immutable snapshots once built (the stepper returns fresh
/// ones); rho0 is shared across all states of a trajectory.
struct FluidState {
    double t = 0.0;
    CenterField J;
    FaceField u;
    FaceField2 w;
    CenterField2 h;
    CenterField P;
    std::shared_ptr<const CenterField> rho0;

    std::size_t n_cells() const { return J.size(); }
    double rho(std::size_t cell) const { return (*rho0)[cell] / J[cell]; }
};

/// Samples initial data onto the staggered grid; J == 1, t == 0.
/// Throws std::invalid_argument on negative rho0/P0 samples, rho0 above
/// rho_bar, or boundary-decay violations.
FluidState discretize(const InitialData& init, const LagrangianGrid& grid);

/// Total mass = sum of rho0 * dy.  Time-independent along a trajectory
/// because rho0 is frozen.
double total_mass(const LagrangianGrid& grid, const FluidState& state);

} // namespace lamhd
