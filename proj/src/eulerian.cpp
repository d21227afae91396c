#include "lamhd/eulerian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lamhd {

FlowMap build_flow_map(const LagrangianGrid& grid, const FluidState& s) {
    FlowMap m;
    m.eta_face.resize(grid.n_faces());
    m.eta_center.resize(grid.n_cells);
    m.eta_face[0] = grid.y_min;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        if (!(s.J[i] > 0.0)) {
            throw std::invalid_argument("build_flow_map: J <= 0 at cell " + std::to_string(i));
        }
        m.eta_face[i + 1] = m.eta_face[i] + s.J[i] * grid.dy;
        m.eta_center[i] = 0.5 * (m.eta_face[i] + m.eta_face[i + 1]);
    }
    return m;
}

namespace {

/// Index of the cell whose image [eta_face[k], eta_face[k+1]] contains x.
std::size_t locate_cell(const FaceField& eta_face, double x) {
    const auto it = std::upper_bound(eta_face.begin(), eta_face.end(), x);
    std::size_t k = static_cast<std::size_t>(it - eta_face.begin());
    if (k > 0) --k;
    return std::min(k, eta_face.size() - 2);
}

/// Piecewise-linear interpolation over a strictly increasing node set,
/// clamped at the ends.
template <class T>
T lerp_nodes(const std::vector<double>& pos, const std::vector<T>& val, double x) {
    if (x <= pos.front()) return val.front();
    if (x >= pos.back()) return val.back();
    const auto it = std::upper_bound(pos.begin(), pos.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - pos.begin()) - 1;
    const double frac = (x - pos[k]) / (pos[k + 1] - pos[k]);
    return val[k] + (val[k + 1] - val[k]) * frac;
}

} // namespace

EulerianSnapshot to_eulerian(const LagrangianGrid& grid, const FluidState& s, const FlowMap& map,
                             const std::vector<double>& x_grid) {
    if (map.eta_face.size() != grid.n_faces() || s.J.size() != grid.n_cells) {
        throw std::invalid_argument("to_eulerian: map/state do not match the grid");
    }
    EulerianSnapshot out;
    out.x = x_grid;
    const std::size_t n = x_grid.size();
    out.rho.resize(n);
    out.u.resize(n);
    out.w.resize(n);
    out.h.resize(n);
    out.P.resize(n);
    out.J.resize(n);

    const double lo = map.eta_face.front();
    const double hi = map.eta_face.back();
    const double edge_tol = 1e-12 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
        double x = x_grid[i];
        if (!(x >= lo - edge_tol && x <= hi + edge_tol)) {
            throw std::invalid_argument("to_eulerian: x = " + std::to_string(x) +
                                        " outside the image of the flow map [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        x = std::clamp(x, lo, hi);
        const std::size_t k = locate_cell(map.eta_face, x);
        out.rho[i] = (*s.rho0)[k] / s.J[k];

        const double span = map.eta_face[k + 1] - map.eta_face[k];
        const double frac = (x - map.eta_face[k]) / span;
        out.u[i] = s.u[k] + (s.u[k + 1] - s.u[k]) * frac;
        out.w[i] = s.w[k] + (s.w[k + 1] - s.w[k]) * frac;

        out.h[i] = lerp_nodes(map.eta_center, s.h, x);
        out.P[i] = lerp_nodes(map.eta_center, s.P, x);
        out.J[i] = lerp_nodes(map.eta_center, s.J, x);
    }
    return out;
}

double eulerian_mass(const LagrangianGrid& grid, const FluidState& s, const FlowMap& map) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.n_cells; ++i) {
        m += (*s.rho0)[i] / s.J[i] * (map.eta_face[i + 1] - map.eta_face[i]);
    }
    return m;
}

} // namespace lamhd
