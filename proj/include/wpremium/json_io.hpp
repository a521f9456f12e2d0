#pragma once

// JSON and CSV serialization for the result structs.  JSON objects use
// insertion order (ordered_json) so output is byte-stable across runs;
// CSV numbers are printed with %.12g.

#include <string>
#include <vector>

#include <json.hpp>

#include "wpremium/calibrate.hpp"
#include "wpremium/premium.hpp"
#include "wpremium/verifier.hpp"

namespace wpremium {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const PremiumResult& r);
ordered_json to_json(const CurvePoint& p);
ordered_json to_json(const std::vector<CurvePoint>& curve);
ordered_json to_json(const LambdaDomain& d);
ordered_json to_json(const CheckReport& r);
ordered_json to_json(const AssumptionAuditReport& r);
ordered_json to_json(const CalibrationResult& r);

// %.12g, with non-finite values spelled inf/-inf/nan.
std::string csv_num(double v);

std::string curve_csv(const std::vector<CurvePoint>& curve);

}  // namespace wpremium
