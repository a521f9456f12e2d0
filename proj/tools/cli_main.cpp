// Command-line front end: premium evaluation, curve generation, calibration,
// and property verification with machine-readable (JSON/CSV) output.
//
// Exit codes: 0 success; 1 usage or parse error; 2 numerical failure
// (divergence, no calibration solution); 3 property verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpremium/calibrate.hpp"
#include "wpremium/errors.hpp"
#include "wpremium/json_io.hpp"
#include "wpremium/premium.hpp"
#include "wpremium/spec_parse.hpp"
#include "wpremium/verifier.hpp"

namespace {

using namespace wpremium;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

struct Output {
    std::string path;  // empty: stdout

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw FileError("cannot open output file '" + path + "'");
        f.write(text.data(), std::streamsize(text.size()));
    }
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

WeightFamily single_family(const std::string& spec, const char* subcommand) {
    std::vector<WeightFamily> fams = parse_weight_spec(spec);
    if (fams.size() != 1)
        throw ValidationError(std::string("'") + subcommand +
                              "' needs a single weight family (--weight all is only "
                              "valid for verify)");
    return std::move(fams.front());
}

// Family-tagged copy of a report: {"family": ..., <report fields>}.
ordered_json tagged(const std::string& family, const ordered_json& body) {
    ordered_json j;
    j["family"] = family;
    for (const auto& [key, value] : body.items()) j[key] = value;
    return j;
}

// theta/lambda representative pair for slice checks: the 25% and 75% points
// of the lambda range in log scale.
std::pair<double, double> slice_pair(const GridSpec& grid) {
    const double llo = std::log(grid.lambda_min), lhi = std::log(grid.lambda_max);
    return {std::exp(llo + 0.25 * (lhi - llo)), std::exp(llo + 0.75 * (lhi - llo))};
}

std::vector<ordered_json> family_reports(const WeightFamily& family, const GridSpec& grid,
                                         double mixed_tol,
                                         const std::optional<LossModel>& model) {
    std::vector<ordered_json> out;
    const auto [theta, lambda] = slice_pair(grid);
    out.push_back(tagged(family.name(), to_json(mixed_partial_check(family, grid, mixed_tol))));
    out.push_back(tagged(family.name(), to_json(lattice_check(family, grid))));
    out.push_back(tagged(family.name(),
                         to_json(ratio_monotone_check(family, theta, lambda, grid.x_grid()))));
    if (model.has_value()) {
        const AssumptionAuditReport audit = assumption_audit(family, *model, theta, lambda, grid);
        ordered_json j = to_json(audit);
        ordered_json entry;
        entry["family"] = family.name();
        entry["property"] = "assumption_audit";
        for (const auto& [key, value] : j.items()) entry[key] = value;
        out.push_back(std::move(entry));
    }
    return out;
}

bool all_pass(const std::vector<ordered_json>& reports) {
    for (const ordered_json& r : reports)
        if (!r.at("pass").get<bool>()) return false;
    return true;
}

int run(int argc, char** argv) {
    CLI::App app{"Weighted-premium calculator: distorted premiums "
                 "H(lambda) = E[X w(lambda,X)] / E[w(lambda,X)], premium curves, "
                 "curve inversion, and structural property verification"};
    app.require_subcommand(1);

    std::string dist_spec, weight_spec, out_path, format;
    double lambda = 0.0, lambda_min = 0.1, lambda_max = 10.0, target = 0.0, tol = -1.0;
    int points = 50, grid_n = 64;

    CLI::App* cmd_premium =
        app.add_subcommand("premium", "Premium at one lambda (JSON)");
    cmd_premium->add_option("--dist", dist_spec, "loss model, e.g. exp:1.0")->required();
    cmd_premium->add_option("--weight", weight_spec, "weight family name")->required();
    cmd_premium->add_option("--lambda", lambda, "loading parameter")->required();
    cmd_premium->add_option("--out", out_path, "write to file instead of stdout");
    cmd_premium->add_option("--format", format, "json (default) or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* cmd_curve = app.add_subcommand(
        "curve", "Premium at evenly spaced lambdas (CSV lambda,premium,error)");
    cmd_curve->add_option("--dist", dist_spec, "loss model")->required();
    cmd_curve->add_option("--weight", weight_spec, "weight family name")->required();
    cmd_curve->add_option("--lambda-min", lambda_min, "first lambda (default 0.1)");
    cmd_curve->add_option("--lambda-max", lambda_max, "last lambda (default 10)");
    cmd_curve->add_option("--points", points, "number of lambdas (default 50)");
    cmd_curve->add_option("--out", out_path, "write to file instead of stdout");
    cmd_curve->add_option("--format", format, "csv (default) or json")
        ->check(CLI::IsMember({"json", "csv"}));

    CLI::App* cmd_calibrate = app.add_subcommand(
        "calibrate", "Find lambda with premium = target (JSON)");
    cmd_calibrate->add_option("--dist", dist_spec, "loss model")->required();
    cmd_calibrate->add_option("--weight", weight_spec, "weight family name")->required();
    cmd_calibrate->add_option("--target", target, "target premium")->required();
    cmd_calibrate->add_option("--tol", tol, "premium tolerance (default 1e-8)");
    cmd_calibrate->add_option("--out", out_path, "write to file instead of stdout");

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "Structural property checks for a family (JSON array)");
    cmd_verify->add_option("--weight", weight_spec, "family name, or 'all'")->required();
    cmd_verify->add_option("--grid", grid_n, "grid points per axis (default 64)");
    cmd_verify->add_option("--dist", dist_spec,
                           "also audit the standing assumptions over this model");
    cmd_verify->add_option("--tol", tol, "mixed-partial tolerance (default 1e-6)");
    cmd_verify->add_option("--out", out_path, "write to file instead of stdout");

    CLI::App* cmd_check = app.add_subcommand(
        "check-weights", "Full property + inequality suite over all built-in "
                         "families (JSON array; nonzero exit on failure)");
    cmd_check->add_option("--grid", grid_n, "grid points per axis (default 64)");
    cmd_check->add_option("--out", out_path, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    const Output out{out_path};

    if (cmd_premium->parsed()) {
        const LossModel model = parse_dist_spec(dist_spec);
        const WeightFamily family = single_family(weight_spec, "premium");
        const PremiumResult r = premium(model, family, lambda);
        if (format == "csv") {
            std::string text = "lambda,premium,error\n";
            text += csv_num(r.lambda) + "," + csv_num(r.premium) + "," +
                    csv_num(r.abs_error_estimate) + "\n";
            out.emit(text);
        } else {
            out.emit(dump(to_json(r)));
        }
        return kExitOk;
    }

    if (cmd_curve->parsed()) {
        const LossModel model = parse_dist_spec(dist_spec);
        const WeightFamily family = single_family(weight_spec, "curve");
        if (points < 1) throw ValidationError("--points must be >= 1");
        if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
            throw ValidationError("need 0 < --lambda-min <= --lambda-max");
        std::vector<double> lambdas(static_cast<std::size_t>(points));
        for (int i = 0; i < points; ++i)
            lambdas[std::size_t(i)] =
                points == 1 ? lambda_min
                            : lambda_min + (lambda_max - lambda_min) * double(i) /
                                               double(points - 1);
        const std::vector<CurvePoint> curve = premium_curve(model, family, lambdas);
        out.emit(format == "json" ? dump(to_json(curve)) : curve_csv(curve));
        return kExitOk;
    }

    if (cmd_calibrate->parsed()) {
        const LossModel model = parse_dist_spec(dist_spec);
        const WeightFamily family = single_family(weight_spec, "calibrate");
        CalibrationOptions opts;
        if (tol > 0.0) opts.tol_premium = tol;
        const CalibrationResult r = calibrate(model, family, target, opts);
        out.emit(dump(to_json(r)));
        const bool solved = r.status == CalibrationStatus::UniqueSolution ||
                            r.status == CalibrationStatus::PlateauSolution;
        return solved ? kExitOk : kExitNumerical;
    }

    if (cmd_verify->parsed()) {
        const std::vector<WeightFamily> fams = parse_weight_spec(weight_spec);
        std::optional<LossModel> model;
        if (!dist_spec.empty()) model = parse_dist_spec(dist_spec);
        GridSpec grid;
        grid.lambda_points = grid.x_points = grid_n;
        const double mixed_tol = tol > 0.0 ? tol : 1e-6;
        std::vector<ordered_json> reports;
        for (const WeightFamily& f : fams)
            for (ordered_json& j : family_reports(f, grid, mixed_tol, model))
                reports.push_back(std::move(j));
        ordered_json arr = ordered_json::array();
        const bool pass = all_pass(reports);
        for (ordered_json& j : reports) arr.push_back(std::move(j));
        out.emit(dump(arr));
        return pass ? kExitOk : kExitVerification;
    }

    // check-weights: property checks for every family plus the scalar
    // inequality suite behind the W4/W7 mixed-partial signs.
    {
        GridSpec grid;
        grid.lambda_points = grid.x_points = grid_n;
        std::vector<ordered_json> reports;
        for (const WeightFamily& f : parse_weight_spec("all"))
            for (ordered_json& j : family_reports(f, grid, 1e-6, std::nullopt))
                reports.push_back(std::move(j));
        const std::vector<double> axis = log_spaced(1e-4, 1e3, 200);
        reports.push_back(tagged("-", to_json(log_bound_chain_check(axis))));
        reports.push_back(tagged("-", to_json(rel_error_bound_check(axis, axis))));
        reports.push_back(tagged("-", to_json(sign_surface_positivity_check(axis, axis))));
        ordered_json arr = ordered_json::array();
        const bool pass = all_pass(reports);
        for (ordered_json& j : reports) arr.push_back(std::move(j));
        out.emit(dump(arr));
        return pass ? kExitOk : kExitVerification;
    }
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {  // numerical failures from the engine
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
