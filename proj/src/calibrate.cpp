#include "wpremium/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wpremium/errors.hpp"

namespace wpremium {

namespace {

// One premium evaluation; empty optional means "effectively above any finite
// target" (the curve diverges, or no mass carries positive weight there).
class CurveEval {
  public:
    CurveEval(const LossModel& model, const WeightFamily& family,
              const PremiumOptions& opts)
        : model_(model), family_(family), opts_(opts) {}

    std::optional<double> operator()(double lambda) {
        ++count_;
        try {
            return premium(model_, family_, lambda, opts_).premium;
        } catch (const DivergentPremium&) {
        } catch (const DivergentExpectation&) {
        } catch (const ZeroNormalizer&) {
        } catch (const AllZeroWeights&) {
        }
        return std::nullopt;
    }

    int count() const { return count_; }

  private:
    const LossModel& model_;
    const WeightFamily& family_;
    const PremiumOptions& opts_;
    int count_ = 0;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

bool at_or_above(const std::optional<double>& h, double target) {
    return !h.has_value() || *h >= target;
}

void validate(double target, const CalibrationOptions& opts) {
    if (!(opts.lambda_floor > 0.0) || !(opts.lambda_cap > opts.lambda_floor))
        throw ValidationError("calibrate: need 0 < lambda_floor < lambda_cap");
    if (!(opts.tol_lambda > 0.0) || !(opts.tol_premium > 0.0))
        throw ValidationError("calibrate: tolerances must be positive");
    if (!std::isfinite(target)) throw ValidationError("calibrate: target must be finite");
}

BracketResult bracket_impl(CurveEval& eval, double target, double floor, double cap,
                           const CalibrationOptions& opts) {
    BracketResult br;

    const std::optional<double> h_floor = eval(floor);
    if (!h_floor.has_value()) {
        br.failure = CalibrationStatus::NoSolutionAboveRange;
        br.note = "premium is not finite even at the lower end of the range";
        return br;
    }
    if (*h_floor > target + opts.tol_premium) {
        br.failure = CalibrationStatus::NoSolutionBelowRange;
        br.note = "premium at the lower end of the range is " + fmt(*h_floor) +
                  " > target";
        return br;
    }
    if (*h_floor >= target) {  // within [target, target + tol]: floor solves it
        br.found = true;
        br.lo = br.hi = floor;
        br.premium_lo = *h_floor;
        br.premium_hi = *h_floor;
        br.note = "target met at the lower end of the range";
        return br;
    }

    double lo = floor;
    double premium_lo = *h_floor;
    double hi = std::min(std::max(1.0, 2.0 * floor), cap);
    double largest_finite = premium_lo;
    for (int i = 0; i < opts.max_iter; ++i) {
        const std::optional<double> h = eval(hi);
        if (h.has_value()) largest_finite = std::max(largest_finite, *h);
        if (at_or_above(h, target)) {
            br.found = true;
            br.lo = lo;
            br.hi = hi;
            br.premium_lo = premium_lo;
            br.premium_hi = h;
            return br;
        }
        if (hi >= cap) {
            br.failure = CalibrationStatus::NoSolutionAboveRange;
            br.note = "largest premium on the range is " + fmt(largest_finite);
            return br;
        }
        lo = hi;
        premium_lo = *h;
        hi = std::min(hi * 2.0, cap);
    }
    throw MaxIterExceeded("bracket_target: no bracket after " +
                          std::to_string(opts.max_iter) + " doublings");
}

}  // namespace

const char* to_string(CalibrationStatus status) {
    switch (status) {
        case CalibrationStatus::UniqueSolution: return "unique_solution";
        case CalibrationStatus::PlateauSolution: return "plateau_solution";
        case CalibrationStatus::NotAttained: return "not_attained";
        case CalibrationStatus::NoSolutionBelowRange: return "no_solution_below_range";
        case CalibrationStatus::NoSolutionAboveRange: return "no_solution_above_range";
    }
    return "?";
}

BracketResult bracket_target(const LossModel& model, const WeightFamily& family,
                             double target, const CalibrationOptions& opts) {
    validate(target, opts);
    CurveEval eval(model, family, opts.premium);
    BracketResult br = bracket_impl(eval, target, opts.lambda_floor, opts.lambda_cap, opts);
    br.iterations = eval.count();
    return br;
}

BracketResult bracket_target(const LossModel& model, const WeightFamily& family,
                             double target, const LambdaDomain& domain,
                             const CalibrationOptions& opts) {
    validate(target, opts);
    if (domain.empty)
        throw DomainEmpty("bracket_target: no lambda with a finite premium");
    const double floor = std::max(opts.lambda_floor, domain.lower);
    const double cap = std::min(opts.lambda_cap, domain.upper);
    if (!(floor < cap))
        throw DomainEmpty("bracket_target: domain and lambda range do not overlap");
    CurveEval eval(model, family, opts.premium);
    BracketResult br = bracket_impl(eval, target, floor, cap, opts);
    br.iterations = eval.count();
    return br;
}

CalibrationResult calibrate(const LossModel& model, const WeightFamily& family,
                            double target, const CalibrationOptions& opts) {
    validate(target, opts);
    CurveEval eval(model, family, opts.premium);
    CalibrationResult res;
    res.target = target;

    const BracketResult br =
        bracket_impl(eval, target, opts.lambda_floor, opts.lambda_cap, opts);
    if (!br.found) {
        res.status = br.failure;
        res.note = br.note;
        res.iterations = eval.count();
        return res;
    }
    res.bracket_lo = br.lo;
    res.bracket_hi = br.hi;

    // Bisect on "premium >= target" (divergent evaluations count as above).
    // Invariant: a is strictly below target with a finite premium, b at or
    // above.  Stops on width <= tol_lambda or a non-representable midpoint.
    double a = br.lo, b = br.hi;
    double h_a = br.premium_lo;
    std::optional<double> h_b = br.premium_hi;
    if (a < b) {
        for (int i = 0; i < opts.max_iter && b - a > opts.tol_lambda; ++i) {
            const double mid = 0.5 * (a + b);
            if (!(mid > a && mid < b)) break;
            const std::optional<double> h = eval(mid);
            if (at_or_above(h, target)) {
                b = mid;
                h_b = h;
            } else {
                a = mid;
                h_a = *h;
            }
        }
    }

    // Pick the solution point: the side of the converged bracket whose
    // residual clears the premium tolerance (left side first, so exact
    // plateau values resolve to their left evaluation).
    double sol = std::numeric_limits<double>::quiet_NaN();
    double h_sol = std::numeric_limits<double>::quiet_NaN();
    if (std::abs(h_a - target) <= opts.tol_premium) {
        sol = a;
        h_sol = h_a;
    } else if (h_b.has_value() && std::abs(*h_b - target) <= opts.tol_premium) {
        sol = b;
        h_sol = *h_b;
    } else if (h_b.has_value()) {
        res.status = CalibrationStatus::NotAttained;
        res.jump_location = 0.5 * (a + b);
        res.jump_low = h_a;
        res.jump_high = *h_b;
        res.note = "curve jumps from " + fmt(h_a) + " to " + fmt(*h_b) +
                   " near lambda=" + fmt(res.jump_location);
        res.iterations = eval.count();
        return res;
    } else {
        res.status = CalibrationStatus::NoSolutionAboveRange;
        res.note = "premium reaches " + fmt(h_a) + " at lambda=" + fmt(a) +
                   " and is not finite beyond";
        res.iterations = eval.count();
        return res;
    }

    const auto accept_unique = [&] {
        res.status = CalibrationStatus::UniqueSolution;
        res.lambda_star = sol;
        res.premium = h_sol;
        res.residual = std::abs(h_sol - target);
        if (sol == opts.lambda_floor) res.note = "solution at lambda_floor";
    };

    // Strict-monotonicity fast path: a smooth family over a model whose cdf
    // increases on the whole support has a strictly increasing premium, so
    // the converged point is the unique root and no plateau probing is
    // needed.
    if (family.smooth() && model.has_increasing_cdf()) {
        accept_unique();
        res.bracket_lo = std::min(res.bracket_lo, sol);
        res.iterations = eval.count();
        return res;
    }

    // Plateau detection: find how far the curve stays (numerically) at the
    // value h_sol on both sides, by outward doubling plus edge bisection.
    const double eq_tol = 1e-12 * std::max(1.0, std::abs(h_sol));
    const auto same_value = [&](double lambda) -> bool {
        const std::optional<double> h = eval(lambda);
        return h.has_value() && std::abs(*h - h_sol) <= eq_tol;
    };
    const auto find_edge = [&](bool leftward) -> double {
        const double bound = leftward ? opts.lambda_floor : opts.lambda_cap;
        double inside = sol;  // known same_value side
        double step = std::max(opts.tol_lambda, 64.0 * sol *
                               std::numeric_limits<double>::epsilon());
        double probe = leftward ? sol - step : sol + step;
        for (int i = 0; i < opts.max_iter; ++i) {
            if (leftward ? probe <= bound : probe >= bound) probe = bound;
            if (!same_value(probe)) break;
            inside = probe;
            if (probe == bound) return bound;  // plateau runs to the range edge
            step *= 2.0;
            probe = leftward ? sol - step : sol + step;
        }
        // Edge between `probe` (different value) and `inside` (same value).
        for (int i = 0; i < opts.max_iter &&
                        std::abs(inside - probe) > opts.tol_lambda; ++i) {
            const double mid = 0.5 * (inside + probe);
            if (mid == inside || mid == probe) break;
            if (same_value(mid))
                inside = mid;
            else
                probe = mid;
        }
        return inside;
    };

    const double left = find_edge(true);
    const double right = find_edge(false);
    const double width = right - left;
    const double point_scale = std::max(4.0 * opts.tol_lambda, 1e-7 * std::max(1.0, sol));

    if (width > point_scale) {
        res.status = CalibrationStatus::PlateauSolution;
        res.lambda_star = left;  // leftmost solution
        res.premium = h_sol;
        res.residual = std::abs(h_sol - target);
        res.plateau_left = left;
        res.plateau_right = right;
        res.note = "curve is flat at " + fmt(h_sol) + " on [" + fmt(left) + ", " +
                   fmt(right) + "]";
    } else {
        accept_unique();
    }
    res.bracket_lo = std::min(res.bracket_lo, res.lambda_star);
    res.iterations = eval.count();
    return res;
}

CalibrationResult roundtrip(const LossModel& model, const WeightFamily& family,
                            double lambda0, const CalibrationOptions& opts) {
    const PremiumResult base = premium(model, family, lambda0, opts.premium);
    return calibrate(model, family, base.premium, opts);
}

}  // namespace wpremium
