#include "lamhd/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lamhd {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_norm(const std::vector<Vec2>& v) {
    double m = 0.0;
    for (Vec2 x : v) m = std::max(m, norm(x));
    return m;
}

void check_decay(const char* name, double boundary_mag, double field_max, double tol) {
    if (field_max == 0.0) return;
    if (boundary_mag > tol * field_max) {
        throw std::invalid_argument(
            std::string("discretize: initial ") + name +
            " does not decay at the domain boundary (|boundary| = " + std::to_string(boundary_mag) +
            ", max = " + std::to_string(field_max) +
            "); enlarge the domain or loosen decay_tol");
    }
}

} // namespace

FluidState discretize(const InitialData& init, const LagrangianGrid& grid) {
    const std::size_t n = grid.n_cells;
    FluidState s;
    s.t = 0.0;
    s.J.assign(n, 1.0);
    s.P.resize(n);
    s.h.resize(n);
    s.u.resize(grid.n_faces());
    s.w.resize(grid.n_faces());

    auto rho0 = std::make_shared<CenterField>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = grid.center(i);
        const double r = init.rho0(y);
        if (!(r >= 0.0)) {
            throw std::invalid_argument("discretize: rho0 < 0 at y = " + std::to_string(y));
        }
        if (r > init.rho_bar) {
            throw std::invalid_argument("discretize: rho0 exceeds rho_bar at y = " + std::to_string(y));
        }
        const double p = init.P0(y);
        if (!(p >= 0.0)) {
            throw std::invalid_argument("discretize: P0 < 0 at y = " + std::to_string(y));
        }
        (*rho0)[i] = r;
        s.P[i] = p;
        s.h[i] = init.h0(y);
    }
    s.rho0 = std::move(rho0);

    for (std::size_t i = 0; i < grid.n_faces(); ++i) {
        const double y = grid.face(i);
        s.u[i] = init.u0(y);
        s.w[i] = init.w0(y);
    }

    // Far-field contract: dynamic fields must already be negligible in the
    // boundary cells/faces, otherwise the truncated domain is too small.
    const double tol = init.decay_tol;
    check_decay("u0", std::max(std::abs(s.u.front()), std::abs(s.u.back())), max_abs(s.u), tol);
    check_decay("w0", std::max(norm(s.w.front()), norm(s.w.back())), max_norm(s.w), tol);
    check_decay("h0", std::max(norm(s.h.front()), norm(s.h.back())), max_norm(s.h), tol);
    check_decay("P0", std::max(s.P.front(), s.P.back()), max_abs(s.P), tol);

    return s;
}

double total_mass(const LagrangianGrid& grid, const FluidState& state) {
    double m = 0.0;
    for (double r : *state.rho0) m += r;
    return m * grid.dy;
}

} // namespace lamhd
