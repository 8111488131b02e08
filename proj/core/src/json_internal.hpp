#pragma once

// Shared nlohmann-based helpers; kept out of the public headers so the
// installed interface stays dependency-free.

#include <json.hpp>

#include "warpcheck/soliton.hpp"

namespace warpcheck::detail {

using nlohmann::json;

MetricField metric_from_json(const json& j);
WarpedProduct warped_from_json(const json& j);
SolitonData soliton_from_json(const json& j);

json metric_to_json(const MetricField& g);
json warped_to_json(const WarpedProduct& wp);
json soliton_to_json(const SolitonData& s);

inline bool looks_like_warped(const json& j) { return j.contains("base") && j.contains("h"); }

}  // namespace warpcheck::detail
