#pragma once

#include "lamhd/core.hpp"
#include "lamhd/grid.hpp"
#include "lamhd/state.hpp"

namespace lamhd {

/// Flow map eta(y, t): Eulerian position of each Lagrangian site.  Faces by
/// cumulative integration of eta_y = J anchored at eta(y_min) = y_min;
/// centers are the face midpoints.  Strictly increasing since J > 0.
struct FlowMap {
    FaceField eta_face;
    CenterField eta_center;
};

FlowMap build_flow_map(const LagrangianGrid& grid, const FluidState& state);

/// Eulerian-coordinate samples of a Lagrangian state.  Density is the
/// located cell's rho0/J (piecewise constant, so jumps stay crisp); all
/// other fields are linearly interpolated between their mapped sites.
struct EulerianSnapshot {
    std::vector<double> x;
    std::vector<double> rho;
    std::vector<double> u;
    FaceField2 w;  // sampled at x, same length as x
    CenterField2 h;
    std::vector<double> P;
    std::vector<double> J;
};

/// Samples the state at the given Eulerian positions; every x must lie in
/// [eta(y_min), eta(y_max)] or std::invalid_argument is thrown.
EulerianSnapshot to_eulerian(const LagrangianGrid& grid, const FluidState& state,
                             const FlowMap& map, const std::vector<double>& x_grid);

/// Integral of the reconstructed Eulerian density over the image of the
/// domain, by exact change of variables over the mapped cell partition.
double eulerian_mass(const LagrangianGrid& grid, const FluidState& state, const FlowMap& map);

} // namespace lamhd
