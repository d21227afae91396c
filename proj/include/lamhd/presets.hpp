#pragma once

#include <string>
#include <vector>

#include "lamhd/state.hpp"

namespace lamhd {

/// Shared knobs of the built-in scenarios.  `amplitude` scales the dynamic
/// initial fields (u0, w0, h0, P0); rho0 shapes are fixed per preset.
struct PresetParams {
    double amplitude = 1.0;
    double decay_tol = 1e-8;
};

struct PresetInfo {
    std::string name;
    std::string description;
    /// Suggested truncation box, wide enough for the default amplitude to
    /// satisfy the boundary-decay contract.
    double y_min = -1.0;
    double y_max = 1.0;
};

/// Registry of built-in scenarios.
std::vector<PresetInfo> presets();

bool preset_exists(const std::string& name);

/// Builds the initial data for a named preset; throws std::invalid_argument
/// for unknown names.
InitialData make_preset(const std::string& name, const PresetParams& p = {});

} // namespace lamhd
