#include "lamhd/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace lamhd {

namespace {

double gauss(double y, double inv_two_sigma_sq) { return std::exp(-y * y * inv_two_sigma_sq); }

InitialData quiescent(const PresetParams& p) {
    InitialData d;
    d.rho0 = [](double y) { return gauss(y, 0.5); };
    d.u0 = [](double) { return 0.0; };
    d.w0 = [](double) { return Vec2{}; };
    d.h0 = [](double) { return Vec2{}; };
    d.P0 = [](double) { return 0.0; };
    d.rho_bar = 1.0;
    d.decay_tol = p.decay_tol;
    return d;
}

InitialData smooth_large_data(const PresetParams& p) {
    const double a = p.amplitude;
    InitialData d;
    d.rho0 = [](double y) { return 0.6 + 0.9 * gauss(y, 0.5); };
    d.u0 = [a](double y) { return 0.8 * a * std::sin(y) * gauss(y, 0.25); };
    d.w0 = [a](double y) {
        return Vec2{0.6 * a * std::cos(y) * gauss(y, 0.25),
                    -0.5 * a * std::sin(y) * gauss(y, 0.25)};
    };
    d.h0 = [a](double y) {
        return Vec2{0.8 * a * gauss(y, 0.5), 0.5 * a * y * gauss(y, 0.5)};
    };
    d.P0 = [a](double y) { return 0.5 * a * gauss(y, 0.5); };
    d.rho_bar = 1.5;
    d.decay_tol = p.decay_tol;
    return d;
}

InitialData vacuum_patch(const PresetParams& p) {
    const double a = p.amplitude;
    InitialData d;
    d.rho0 = [](double y) { return std::max(0.0, 1.0 - y * y); };
    d.u0 = [a](double y) { return 0.3 * a * std::sin(2.0 * y) * gauss(y, 2.0); };
    d.w0 = [a](double y) {
        return Vec2{0.25 * a * gauss(y, 2.0), -0.2 * a * y * gauss(y, 2.0)};
    };
    d.h0 = [a](double y) {
        return Vec2{0.4 * a * gauss(y, 2.0), 0.25 * a * y * gauss(y, 2.0)};
    };
    d.P0 = [a](double y) { return 0.2 * a * gauss(y, 2.0); };
    d.rho_bar = 1.0;
    d.decay_tol = p.decay_tol;
    return d;
}

InitialData density_jump(const PresetParams& p) {
    const double a = p.amplitude;
    InitialData d;
    d.rho0 = [](double y) { return y < 0.0 ? 2.0 : 1.0; };
    d.u0 = [a](double y) { return 0.4 * a * gauss(y, 2.0); };
    d.w0 = [](double) { return Vec2{}; };
    d.h0 = [](double) { return Vec2{}; };
    d.P0 = [a](double y) { return 0.1 * a * gauss(y, 2.0); };
    d.rho_bar = 2.0;
    d.decay_tol = p.decay_tol;
    return d;
}

InitialData point_vacuum(const PresetParams& p) {
    const double a = p.amplitude;
    InitialData d;
    d.rho0 = [](double y) { return std::min(1.0, y * y); };
    d.u0 = [a](double y) { return 0.15 * a * std::sin(2.0 * y) * gauss(y, 2.0); };
    d.w0 = [a](double y) {
        return Vec2{0.12 * a * gauss(y, 2.0), -0.1 * a * y * gauss(y, 2.0)};
    };
    d.h0 = [a](double y) {
        return Vec2{0.2 * a * gauss(y, 2.0), 0.12 * a * y * gauss(y, 2.0)};
    };
    d.P0 = [a](double y) { return 0.1 * a * gauss(y, 2.0); };
    d.rho_bar = 1.0;
    d.decay_tol = p.decay_tol;
    return d;
}

InitialData transverse_only(const PresetParams& p) {
    const double a = p.amplitude;
    InitialData d;
    d.rho0 = [](double) { return 1.0; };
    d.u0 = [](double) { return 0.0; };
    d.w0 = [a](double y) {
        return Vec2{0.5 * a * gauss(y, 1.0), -0.3 * a * gauss(y, 1.0)};
    };
    d.h0 = [a](double y) {
        return Vec2{0.6 * a * gauss(y, 1.0), 0.4 * a * y * gauss(y, 1.0)};
    };
    d.P0 = [](double) { return 0.0; };
    d.rho_bar = 1.0;
    d.decay_tol = p.decay_tol;
    return d;
}

} // namespace

std::vector<PresetInfo> presets() {
    return {
        {"quiescent", "gaussian density at rest; exact fixed point of the dynamics", -8.0, 8.0},
        {"smooth-large-data",
         "O(1) sinusoidal velocities, gaussian magnetic field and pressure, density >= 0.6", -10.0,
         10.0},
        {"vacuum-patch", "parabolic density max(0, 1 - y^2), vacuum outside |y| < 1", -4.0, 4.0},
        {"density-jump", "piecewise-constant density 2/1 with a jump at y = 0", -4.0, 4.0},
        {"point-vacuum", "density min(1, y^2), vanishing at the single point y = 0", -4.0, 4.0},
        {"transverse-only", "u = P = 0, rho0 = 1; drives the transverse flux coupling", -6.0, 6.0},
    };
}

bool preset_exists(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return true;
    }
    return false;
}

InitialData make_preset(const std::string& name, const PresetParams& p) {
    if (name == "quiescent") return quiescent(p);
    if (name == "smooth-large-data") return smooth_large_data(p);
    if (name == "vacuum-patch") return vacuum_patch(p);
    if (name == "density-jump") return density_jump(p);
    if (name == "point-vacuum") return point_vacuum(p);
    if (name == "transverse-only") return transverse_only(p);
    throw std::invalid_argument("unknown preset: " + name);
}

} // namespace lamhd
