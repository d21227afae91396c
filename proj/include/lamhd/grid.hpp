#pragma once

#include <cstddef>
#include <numbers>

#include "lamhd/core.hpp"

namespace lamhd {

/// Material and closure constants of the planar non-resistive model.
///
/// `lambda` is the effective longitudinal viscosity lambda' + 2*mu acting on
/// the longitudinal velocity; `mu` is the shear viscosity acting on the
/// transverse velocity; `gamma` is the adiabatic exponent of the pressure
/// law P = (gamma - 1) * rho * e.  All magnetic terms carry the fixed
/// Gaussian-units factor 1/(4*pi).
struct MaterialParams {
    double mu = 1.0;
    double lambda = 3.0;
    double gamma = 5.0 / 3.0;

    static constexpr double four_pi = 4.0 * std::numbers::pi;
    static constexpr double eight_pi = 8.0 * std::numbers::pi;

    /// Throws std::invalid_argument unless mu > 0, lambda > 0, gamma > 1.
    void validate() const;
};

/// Uniform 1D grid in the Lagrangian coordinate y, truncated to
/// [y_min, y_max].  Faces sit at y_min + i*dy (i = 0..n_cells) and carry the
/// velocities u, w; cell centers sit halfway between faces and carry
/// J, rho0, P, h.
struct LagrangianGrid {
    double y_min = -1.0;
    double y_max = 1.0;
    std::size_t n_cells = 2;
    double dy = 1.0;

    static LagrangianGrid make(double y_min, double y_max, std::size_t n_cells);

    std::size_t n_faces() const { return n_cells + 1; }
    double face(std::size_t i) const { return y_min + static_cast<double>(i) * dy; }
    double center(std::size_t i) const { return y_min + (static_cast<double>(i) + 0.5) * dy; }
};

} // namespace lamhd
