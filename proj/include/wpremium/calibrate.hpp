#pragma once

// Premium-curve inversion: given a target premium pi, find lambda with
// H(lambda) = pi.  Relies on the premium being non-decreasing in lambda
// (the property the verifier checks).  Handles three qualitatively
// different curves:
//   - strictly increasing (smooth families over continuous models): a
//     unique root, found by bracket + bisection;
//   - step functions (tail-conditional weights over empirical samples):
//     targets equal to a step value are attained on a whole interval
//     (reported as a plateau, leftmost point returned); targets strictly
//     between steps are never attained (reported with the jump location);
//   - curves that blow up or lose mass at a finite lambda: evaluations
//     that diverge count as "above any target" during bracketing.

#include <limits>
#include <optional>
#include <string>

#include "wpremium/loss_model.hpp"
#include "wpremium/premium.hpp"
#include "wpremium/weight_family.hpp"

namespace wpremium {

enum class CalibrationStatus {
    UniqueSolution,        // one lambda attains the target within tolerance
    PlateauSolution,       // an interval attains it; leftmost point returned
    NotAttained,           // the curve jumps across the target
    NoSolutionBelowRange,  // target below the premium at lambda_floor
    NoSolutionAboveRange,  // target above every finite premium up to lambda_cap
};

const char* to_string(CalibrationStatus status);

struct CalibrationOptions {
    double lambda_floor = 1e-12;
    double lambda_cap = 1e12;
    double tol_lambda = 1e-10;   // bisection width target
    double tol_premium = 1e-8;   // |H(lambda) - target| acceptance
    int max_iter = 200;          // per bracketing/bisection phase
    PremiumOptions premium;
};

struct CalibrationResult {
    CalibrationStatus status = CalibrationStatus::NotAttained;
    double target = 0.0;
    // UniqueSolution / PlateauSolution: the solution (leftmost for a plateau).
    double lambda_star = std::numeric_limits<double>::quiet_NaN();
    double premium = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();  // |premium - target|
    // Bracket the solution was isolated in (solution statuses only).
    double bracket_lo = std::numeric_limits<double>::quiet_NaN();
    double bracket_hi = std::numeric_limits<double>::quiet_NaN();
    // PlateauSolution only: extent of the solution interval.
    double plateau_left = std::numeric_limits<double>::quiet_NaN();
    double plateau_right = std::numeric_limits<double>::quiet_NaN();
    // NotAttained only: where the curve crosses the target and the premium
    // values just left and right of the crossing.
    double jump_location = std::numeric_limits<double>::quiet_NaN();
    double jump_low = std::numeric_limits<double>::quiet_NaN();
    double jump_high = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;  // premium evaluations spent
    std::string note;
};

struct BracketResult {
    bool found = false;
    double lo = 0.0;  // premium(lo) < target
    double hi = 0.0;  // premium(hi) >= target, or not finite
    double premium_lo = 0.0;
    std::optional<double> premium_hi;  // empty when the hi side is not finite
    int iterations = 0;
    CalibrationStatus failure = CalibrationStatus::NoSolutionAboveRange;
    std::string note;
};

// Doubling search for [lo, hi] with premium(lo) < target <= premium(hi).
// Evaluations that diverge or lose all weight count as above-target.  The
// overload taking a LambdaDomain confines the search to it and throws
// DomainEmpty when the domain has no finite-premium interval.
BracketResult bracket_target(const LossModel& model, const WeightFamily& family,
                             double target, const CalibrationOptions& opts = {});
BracketResult bracket_target(const LossModel& model, const WeightFamily& family,
                             double target, const LambdaDomain& domain,
                             const CalibrationOptions& opts = {});

CalibrationResult calibrate(const LossModel& model, const WeightFamily& family,
                            double target, const CalibrationOptions& opts = {});

// Convenience for consistency tests: computes pi = H(lambda0), calibrates to
// that pi, and returns the calibration result (whose lambda_star should
// recover lambda0 up to the curve's local flatness).
CalibrationResult roundtrip(const LossModel& model, const WeightFamily& family,
                            double lambda0, const CalibrationOptions& opts = {});

}  // namespace wpremium
