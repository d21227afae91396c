#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lamhd/core.hpp"
#include "lamhd/grid.hpp"

namespace lamhd {

/// Ghost rule for differentiating a center field out to the boundary faces.
/// zero_value models fields that vanish in the far field (P, h, fluxes);
/// zero_gradient models fields that level off (J).
enum class GhostRule { zero_value, zero_gradient };

namespace detail {

inline void require_face_length(const LagrangianGrid& g, std::size_t len) {
    if (len != g.n_faces()) {
        throw std::invalid_argument("spatial op: face field length " + std::to_string(len) +
                                    " does not match grid (" + std::to_string(g.n_faces()) + ")");
    }
}

inline void require_center_length(const LagrangianGrid& g, std::size_t len) {
    if (len != g.n_cells) {
        throw std::invalid_argument("spatial op: center field length " + std::to_string(len) +
                                    " does not match grid (" + std::to_string(g.n_cells) + ")");
    }
}

} // namespace detail

/// Centered derivative of a face field, landing on cell centers:
/// (f[i+1] - f[i]) / dy.  Exact for affine fields.
template <class T>
std::vector<T> d_center_of_faces(const LagrangianGrid& grid, const std::vector<T>& f) {
    detail::require_face_length(grid, f.size());
    std::vector<T> out(grid.n_cells);
    const double inv_dy = 1.0 / grid.dy;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        out[i] = (f[i + 1] - f[i]) * inv_dy;
    }
    return out;
}

/// Centered derivative of a center field, landing on faces:
/// interior faces (g[i] - g[i-1]) / dy, boundary faces per the ghost rule.
template <class T>
std::vector<T> d_face_of_centers(const LagrangianGrid& grid, const std::vector<T>& g, GhostRule bc) {
    detail::require_center_length(grid, g.size());
    std::vector<T> out(grid.n_faces());
    const double inv_dy = 1.0 / grid.dy;
    for (std::size_t i = 1; i < grid.n_cells; ++i) {
        out[i] = (g[i] - g[i - 1]) * inv_dy;
    }
    if (bc == GhostRule::zero_value) {
        out.front() = g.front() * inv_dy;
        out.back() = g.back() * (-inv_dy);
    } else {
        out.front() = T{};
        out.back() = T{};
    }
    return out;
}

/// Two-point mean of a center field at faces; boundary faces copy the
/// adjacent center.
template <class T>
std::vector<T> avg_center_to_face(const LagrangianGrid& grid, const std::vector<T>& g) {
    detail::require_center_length(grid, g.size());
    std::vector<T> out(grid.n_faces());
    for (std::size_t i = 1; i < grid.n_cells; ++i) {
        out[i] = (g[i - 1] + g[i]) * 0.5;
    }
    out.front() = g.front();
    out.back() = g.back();
    return out;
}

/// Two-point mean of a face field at cell centers.
template <class T>
std::vector<T> avg_face_to_center(const LagrangianGrid& grid, const std::vector<T>& f) {
    detail::require_face_length(grid, f.size());
    std::vector<T> out(grid.n_cells);
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        out[i] = (f[i] + f[i + 1]) * 0.5;
    }
    return out;
}

/// Midpoint-rule integral of a cell-centered integrand.
inline double integrate_centers(const LagrangianGrid& grid, const CenterField& g) {
    detail::require_center_length(grid, g.size());
    double s = 0.0;
    for (double v : g) s += v;
    return s * grid.dy;
}

/// Trapezoidal integral of a face-sited integrand (half weights at the two
/// boundary faces).
inline double integrate_faces(const LagrangianGrid& grid, const FaceField& f) {
    detail::require_face_length(grid, f.size());
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i < grid.n_cells; ++i) s += f[i];
    return s * grid.dy;
}

} // namespace lamhd
