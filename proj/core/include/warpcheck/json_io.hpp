#pragma once

#include <string>

#include "warpcheck/soliton.hpp"

namespace warpcheck {

/// JSON forms (see docs/schema/ for the published schemas):
///   metric         { "coords": [...], "components": {"i,j": "expr"},
///                    "domain": "true"|inequalities, "label": str,
///                    "box": [[lo,hi],...] }        (missing components are 0)
///   warped product { "base": metric, "fiber": metric, "h": "expr" }
///   soliton        { "metric": metric|warped product, "f": "expr",
///                    "lambda": "expr" }
/// Parsers throw ConfigError on malformed documents and propagate ParseError
/// from expression sources.

MetricField parse_metric_json(const std::string& text);
WarpedProduct parse_warped_json(const std::string& text);
SolitonData parse_soliton_json(const std::string& text);

std::string to_json_string(const MetricField& g, int indent = 2);
std::string to_json_string(const WarpedProduct& wp, int indent = 2);
std::string to_json_string(const SolitonData& s, int indent = 2);

}  // namespace warpcheck
