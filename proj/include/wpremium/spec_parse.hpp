#pragma once

// Parsers for the compact model and weight specs used on the command line:
//   distributions: "exp:1.0", "lognormal:0:0.5", "pareto:2:1", "gamma:2:1",
//                  "uniform:0:2", "empirical:losses.txt"
//   weights:       a family name or alias ("esscher", "w3", ...) or "all"
// Malformed specs raise ParseError carrying the offset of the bad token.

#include <string>
#include <vector>

#include "wpremium/loss_model.hpp"
#include "wpremium/weight_family.hpp"

namespace wpremium {

LossModel parse_dist_spec(const std::string& spec);

// "all" fans out to the seven built-in families, in canonical order.
std::vector<WeightFamily> parse_weight_spec(const std::string& spec);

}  // namespace wpremium
