#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bse2/rigidity.hpp"

namespace bse2 {

/// Machine-readable form of a rigidity report. The nullspace basis is
/// included as a list of 3n-vectors.
nlohmann::json to_json(const RigidityReport& r);

/// Human-readable summary, e.g. "bearing rank 14 / required 14".
std::string format_report(const RigidityReport& r, const std::string& title = {});

}  // namespace bse2
