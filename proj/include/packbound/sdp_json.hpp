#pragma once

#include <string>

#include <json.hpp>

#include "packbound/sdp.hpp"

namespace packbound {

/// JSON schema for problems:
/// { "sense": "max"|"min", "blocks": [orders...],
///   "objective": [[block,i,j,value]...],
///   "constraints": [ {"rhs": r, "entries": [[block,i,j,value]...]}... ] }
nlohmann::json problem_to_json(const SdpProblem& p);
SdpProblem problem_from_json(const nlohmann::json& j);

/// Solutions carry status, sense-adjusted values, diagnostics and the packed
/// lower triangles of the X/Z blocks.
nlohmann::json solution_to_json(const SdpSolution& s);
SdpSolution solution_from_json(const nlohmann::json& j);

/// Doubles at 17 significant digits (lossless round-trip).
std::string format_double(double v);

}  // namespace packbound
