#include "wpremium/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace wpremium {

namespace {

// JSON has no literal for non-finite doubles (nlohmann would emit null);
// spell them out as strings instead so nothing is silently lost.
ordered_json json_num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

ordered_json location_object(const std::vector<std::pair<std::string, double>>& loc) {
    ordered_json j = ordered_json::object();
    for (const auto& [name, value] : loc) j[name] = json_num(value);
    return j;
}

void csv_append_field(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

}  // namespace

std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ordered_json to_json(const PremiumResult& r) {
    ordered_json j;
    j["lambda"] = r.lambda;
    j["premium"] = r.premium;
    j["net_premium"] = r.net_premium;
    j["loading"] = r.loading;
    j["path"] = to_string(r.path);
    j["abs_error_estimate"] = r.abs_error_estimate;
    return j;
}

ordered_json to_json(const CurvePoint& p) {
    if (p.ok) {
        ordered_json j = to_json(p.result);
        j["ok"] = true;
        return j;
    }
    ordered_json j;
    j["lambda"] = p.lambda;
    j["ok"] = false;
    j["error"] = p.error;
    return j;
}

ordered_json to_json(const std::vector<CurvePoint>& curve) {
    ordered_json arr = ordered_json::array();
    for (const CurvePoint& p : curve) arr.push_back(to_json(p));
    return arr;
}

ordered_json to_json(const LambdaDomain& d) {
    ordered_json j;
    j["empty"] = d.empty;
    if (!d.empty) {
        j["lower"] = json_num(d.lower);
        j["upper"] = json_num(d.upper);
    }
    ordered_json probes = ordered_json::array();
    for (const LambdaProbe& p : d.probes) {
        ordered_json q;
        q["lambda"] = p.lambda;
        q["finite"] = p.finite;
        if (!p.note.empty()) q["note"] = p.note;
        probes.push_back(std::move(q));
    }
    j["probes"] = std::move(probes);
    return j;
}

ordered_json to_json(const CheckReport& r) {
    ordered_json j;
    j["property"] = r.property;
    j["pass"] = r.pass;
    j["worst_violation"] = json_num(r.worst_violation);
    j["worst_location"] = location_object(r.worst_location);
    j["grid"] = r.grid;
    j["tolerance"] = r.tolerance;
    j["points_checked"] = r.points_checked;
    j["points_skipped"] = r.points_skipped;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

ordered_json to_json(const AssumptionAuditReport& r) {
    ordered_json j;
    j["pass"] = r.pass;
    j["lambda_direction"] = to_json(r.lambda_direction);
    j["separation"] = to_json(r.separation);
    j["anchor"] = to_json(r.anchor);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

ordered_json to_json(const CalibrationResult& r) {
    ordered_json j;
    j["status"] = to_string(r.status);
    j["target"] = r.target;
    switch (r.status) {
        case CalibrationStatus::UniqueSolution:
        case CalibrationStatus::PlateauSolution:
            j["lambda_star"] = r.lambda_star;
            j["premium"] = r.premium;
            j["residual"] = r.residual;
            j["bracket"] = ordered_json::array({r.bracket_lo, r.bracket_hi});
            if (r.status == CalibrationStatus::PlateauSolution) {
                j["plateau_left"] = r.plateau_left;
                j["plateau_right"] = r.plateau_right;
            }
            break;
        case CalibrationStatus::NotAttained:
            j["jump_location"] = r.jump_location;
            j["jump_low"] = r.jump_low;
            j["jump_high"] = r.jump_high;
            break;
        case CalibrationStatus::NoSolutionBelowRange:
        case CalibrationStatus::NoSolutionAboveRange:
            break;
    }
    j["iterations"] = r.iterations;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

// Three columns: the error field is the absolute error estimate for points
// that evaluated, or the failure message for points that did not.
std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "lambda,premium,error\n";
    for (const CurvePoint& p : curve) {
        out += csv_num(p.lambda);
        out += ',';
        if (p.ok) {
            out += csv_num(p.result.premium);
            out += ',';
            out += csv_num(p.result.abs_error_estimate);
        } else {
            out += ',';
            csv_append_field(out, p.error);
        }
        out += '\n';
    }
    return out;
}

}  // namespace wpremium
