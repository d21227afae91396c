#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lamhd/diagnostics.hpp"
#include "lamhd/eulerian.hpp"
#include "lamhd/grid.hpp"
#include "lamhd/state.hpp"

namespace lamhd {

inline constexpr const char* kCodeVersion = "lamhd 0.1.0";

/// One NDJSON record per report, fixed key order.
nlohmann::ordered_json report_to_json(const InvariantReport& r);
InvariantReport report_from_json(const nlohmann::json& j);

/// Columnar text snapshot: one JSON header line, one column-name line, then
/// one row per site (faces carry u, w; centers carry J, rho0, h, P and the
/// derived fluxes; off-site columns print as nan).  Vacuum cells are
/// flagged since the velocity there is the regularized, not physical, one.
void write_lagrangian_snapshot(std::ostream& out, const LagrangianGrid& grid,
                               const FluidState& state, const MaterialParams& params);

/// Same container with an eulerian coordinate tag and per-sample rows.
void write_eulerian_snapshot(std::ostream& out, const EulerianSnapshot& snap,
                             const LagrangianGrid& grid, const MaterialParams& params, double t);

void write_text_file(const std::string& path, const std::string& text);

} // namespace lamhd
