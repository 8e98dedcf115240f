#pragma once

#include "risgeo/types.hpp"

namespace risgeo {

/// List of violated invariants; empty means the scenario is usable.
using ValidationReport = std::vector<std::string>;

/// Checks every scenario invariant and returns the violations as short tags,
/// e.g. "ris-in-tx-plane" or "non-square element count". Never throws.
ValidationReport validate(const Scenario& s);

/// Throws std::invalid_argument listing all violations if validate() is
/// non-empty.
void require_valid(const Scenario& s);

/// Derives all center-of-RIS distances and angles. Pure and deterministic.
/// Rejects y_s == 0 (the RIS plane would contain the Tx).
CenterGeometry derive_center_geometry(const Scenario& s);

}  // namespace risgeo
