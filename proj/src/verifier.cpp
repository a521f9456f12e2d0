#include "wpremium/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "wpremium/errors.hpp"
#include "wpremium/quadrature.hpp"

namespace wpremium {

namespace {

std::vector<double> spaced(double lo, double hi, int n, bool log_space) {
    if (n < 2 || !(hi > lo) || (log_space && !(lo > 0.0)))
        throw ValidationError("grid axis needs n >= 2 and 0 < lo < hi");
    std::vector<double> g(static_cast<std::size_t>(n));
    if (log_space) {
        const double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < n; ++i)
            g[std::size_t(i)] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    } else {
        for (int i = 0; i < n; ++i)
            g[std::size_t(i)] = lo + (hi - lo) * double(i) / double(n - 1);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::string axis_desc(const char* name, double lo, double hi, int n, bool log_space) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s[%.6g,%.6g]x%d%s", name, lo, hi, n,
                  log_space ? ":log" : "");
    return buf;
}

std::string vector_axis_desc(const char* name, const std::vector<double>& g) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s[%.6g,%.6g]x%zu", name, g.front(), g.back(), g.size());
    return buf;
}

// Half the distance to the nearest grid neighbor, the room available for a
// finite-difference step.
double half_min_gap(const std::vector<double>& g, std::size_t i) {
    double gap = kPosInf;
    if (i > 0) gap = std::min(gap, g[i] - g[i - 1]);
    if (i + 1 < g.size()) gap = std::min(gap, g[i + 1] - g[i]);
    return 0.5 * gap;
}

// Serial index-order argmin/argmax reduction helpers (ties -> lowest index).
std::size_t argmax(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}
std::size_t argmin(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] < v[best]) best = i;
    return best;
}

constexpr double kSkipped = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::vector<double> GridSpec::lambda_grid() const {
    return spaced(lambda_min, lambda_max, lambda_points, log_spaced);
}
std::vector<double> GridSpec::x_grid() const {
    return spaced(x_min, x_max, x_points, log_spaced);
}
std::string GridSpec::describe() const {
    return axis_desc("lambda", lambda_min, lambda_max, lambda_points, log_spaced) + " " +
           axis_desc("x", x_min, x_max, x_points, log_spaced);
}

std::vector<double> log_spaced(double lo, double hi, int points) {
    return spaced(lo, hi, points, true);
}

double mixed_partial_estimate(const WeightFamily& family, double lambda, double x,
                              const FdSteps& steps) {
    const double h = std::max(steps.lambda_rel * lambda, steps.floor);
    const double k = std::max(steps.x_rel * x, steps.floor);
    const double pp = family.eval_log(lambda + h, x + k);
    const double pm = family.eval_log(lambda + h, x - k);
    const double mp = family.eval_log(lambda - h, x + k);
    const double mm = family.eval_log(lambda - h, x - k);
    if (!std::isfinite(pp) || !std::isfinite(pm) || !std::isfinite(mp) || !std::isfinite(mm))
        return kSkipped;
    // L = -log w, so the stencil on eval_log gets negated.
    return -(pp - pm - mp + mm) / (4.0 * h * k);
}

CheckReport mixed_partial_check(const WeightFamily& family, const GridSpec& grid, double tol,
                                const FdSteps& steps, ExecPolicy policy) {
    const std::vector<double> ls = grid.lambda_grid();
    const std::vector<double> xs = grid.x_grid();

    for (std::size_t i = 0; i < ls.size(); ++i)
        if (std::max(steps.lambda_rel * ls[i], steps.floor) > half_min_gap(ls, i))
            throw GridDegenerate("lambda step exceeds half the grid spacing at lambda=" +
                                 std::to_string(ls[i]));
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (std::max(steps.x_rel * xs[j], steps.floor) > half_min_gap(xs, j))
            throw GridDegenerate("x step exceeds half the grid spacing at x=" +
                                 std::to_string(xs[j]));

    const std::size_t n = ls.size() * xs.size();
    std::vector<double> est(n);
    parallel_for(std::ptrdiff_t(n), policy, [&](std::ptrdiff_t idx) {
        const std::size_t i = std::size_t(idx) / xs.size();
        const std::size_t j = std::size_t(idx) % xs.size();
        est[std::size_t(idx)] = mixed_partial_estimate(family, ls[i], xs[j], steps);
    });

    CheckReport rep;
    rep.property = "mixed_partial_submodular";
    rep.grid = grid.describe();
    rep.tolerance = tol;
    rep.worst_violation = kNegInf;
    std::size_t worst_idx = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (std::isnan(est[idx])) {
            ++rep.points_skipped;
            continue;
        }
        ++rep.points_checked;
        if (est[idx] > rep.worst_violation) {
            rep.worst_violation = est[idx];
            worst_idx = idx;
        }
    }
    rep.worst_location = {{"lambda", ls[worst_idx / xs.size()]}, {"x", xs[worst_idx % xs.size()]}};
    rep.pass = rep.points_checked > 0 && rep.worst_violation <= tol;
    if (rep.points_checked == 0) rep.note = "no positive-weight stencil on this grid";
    return rep;
}

CheckReport lattice_check(const WeightFamily& family, const GridSpec& grid, double tol,
                          int random_quadruples, unsigned seed, ExecPolicy policy) {
    struct Quad {
        double theta, lambda, x1, x2;
    };
    std::vector<Quad> quads;

    // All adjacent-pair combinations on a coarse 16x16 subgrid...
    GridSpec sub = grid;
    sub.lambda_points = 16;
    sub.x_points = 16;
    const std::vector<double> lsub = sub.lambda_grid();
    const std::vector<double> xsub = sub.x_grid();
    for (std::size_t i = 0; i + 1 < lsub.size(); ++i)
        for (std::size_t j = 0; j + 1 < xsub.size(); ++j)
            quads.push_back({lsub[i], lsub[i + 1], xsub[j], xsub[j + 1]});

    // ...plus log-uniform random quadruples from a fixed seed.
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ul(std::log(grid.lambda_min),
                                              std::log(grid.lambda_max));
    std::uniform_real_distribution<double> ux(std::log(grid.x_min), std::log(grid.x_max));
    for (int r = 0; r < random_quadruples; ++r) {
        double a = std::exp(ul(rng)), b = std::exp(ul(rng));
        double c = std::exp(ux(rng)), d = std::exp(ux(rng));
        quads.push_back({std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d)});
    }

    // Violation metric in log scale: log of RHS/LHS, required <= 0.
    std::vector<double> viol(quads.size());
    parallel_for(std::ptrdiff_t(quads.size()), policy, [&](std::ptrdiff_t idx) {
        const Quad& q = quads[std::size_t(idx)];
        const double lhs =
            family.eval_log(q.theta, q.x1) + family.eval_log(q.lambda, q.x2);
        const double rhs =
            family.eval_log(q.theta, q.x2) + family.eval_log(q.lambda, q.x1);
        double v;
        if (rhs == kNegInf)
            v = kNegInf;  // RHS = 0: never a violation
        else if (lhs == kNegInf)
            v = kPosInf;  // LHS = 0 < RHS
        else
            v = rhs - lhs;
        viol[std::size_t(idx)] = v;
    });

    CheckReport rep;
    rep.property = "lattice_log_supermodular";
    rep.grid = grid.describe() + " subgrid16 rand" + std::to_string(random_quadruples) +
               " seed" + std::to_string(seed);
    rep.tolerance = tol;
    const std::size_t worst = argmax(viol);
    rep.worst_violation = viol[worst];
    rep.worst_location = {{"theta", quads[worst].theta},
                          {"lambda", quads[worst].lambda},
                          {"x1", quads[worst].x1},
                          {"x2", quads[worst].x2}};
    rep.points_checked = long(quads.size());
    rep.pass = rep.worst_violation <= tol;
    return rep;
}

CheckReport ratio_monotone_check(const WeightFamily& family, double theta, double lambda,
                                 const std::vector<double>& x_grid, double tol) {
    if (x_grid.empty()) throw ValidationError("ratio_monotone_check: empty grid");
    std::vector<double> xs = x_grid;
    std::sort(xs.begin(), xs.end());

    std::vector<double> h(xs.size());
    bool any_ref_positive = false;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lt = family.eval_log(theta, xs[i]);
        if (lt == kNegInf) {
            h[i] = 0.0;  // reference slice vanishes: h := 0 there
            continue;
        }
        any_ref_positive = true;
        const double d = family.eval_log(lambda, xs[i]) - lt;
        h[i] = d > 700.0 ? kPosInf : std::exp(d);
    }
    if (!any_ref_positive)
        throw AllZeroWeights("w(theta, .) vanishes on the whole grid, theta=" +
                             std::to_string(theta));

    CheckReport rep;
    rep.property = "ratio_monotone";
    rep.grid = vector_axis_desc("x", xs) + " theta=" + std::to_string(theta) +
               " lambda=" + std::to_string(lambda);
    rep.tolerance = tol;
    rep.worst_violation = kNegInf;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        double v;
        if (std::isinf(h[i]) && std::isinf(h[i + 1]))
            v = 0.0;  // both off scale: no ordering information
        else
            v = h[i] - h[i + 1];
        ++rep.points_checked;
        if (v > rep.worst_violation) {
            rep.worst_violation = v;
            worst_i = i;
        }
    }
    rep.worst_location = {{"x", xs[worst_i]}};
    rep.pass = rep.worst_violation <= tol;
    return rep;
}

CheckReport log_bound_chain_check(const std::vector<double>& y_grid) {
    CheckReport rep;
    rep.property = "log_bound_chain";
    rep.grid = vector_axis_desc("y", y_grid);
    rep.tolerance = 0.0;  // strict
    rep.worst_violation = kPosInf;
    for (double y : y_grid) {
        const double upper = (y + 1.0) * std::log1p(y) - y;  // > 0
        const double lower = y - std::log1p(y);              // > 0
        ++rep.points_checked;
        if (upper < rep.worst_violation) {
            rep.worst_violation = upper;
            rep.worst_location = {{"y", y}, {"leg", 1.0}};
        }
        if (lower < rep.worst_violation) {
            rep.worst_violation = lower;
            rep.worst_location = {{"y", y}, {"leg", 2.0}};
        }
    }
    rep.pass = rep.worst_violation > 0.0;
    return rep;
}

namespace {

// t - log(1+t) without cancellation: series t^2 (1/2 - t/3 + t^2/4 - ...)
// below 1e-3, where the direct subtraction loses the leading digits.
double t_minus_log1p(double t) {
    if (std::abs(t) < 1e-3) {
        return t * t *
               (0.5 + t * (-1.0 / 3 + t * (0.25 + t * (-0.2 + t * (1.0 / 6 - t / 7)))));
    }
    return t - std::log1p(t);
}

}  // namespace

// LHS of the relative-error chain: (e^y - (ly+1)^{1/l}) / (ly+1)^{1/l},
// rewritten as expm1(y - log1p(ly)/l).  The exponent is computed as
// (t - log(1+t))/l with t = ly, which stays accurate when it is tiny;
// the margin over the RHS is only O(l^2 y^3) there.
double rel_error_lhs(double lambda, double y) {
    const double z = t_minus_log1p(lambda * y) / lambda;
    if (z > 700.0) return kPosInf;
    return std::expm1(z);
}

double rel_error_rhs(double lambda, double y) {
    const double t = lambda * y;
    // 1 - t/((1+t)log(1+t)) = D/((1+t)log(1+t)) with the cancellation-free
    // D = (1+t)log(1+t) - t = t log(1+t) - (t - log(1+t)).
    const double lg = std::log1p(t);
    const double d = t * lg - t_minus_log1p(t);
    return y * d / ((1.0 + t) * lg);
}

CheckReport rel_error_bound_check(const std::vector<double>& lambda_grid,
                                  const std::vector<double>& y_grid, ExecPolicy policy) {
    const std::size_t n = lambda_grid.size() * y_grid.size();
    std::vector<double> margin(n);
    parallel_for(std::ptrdiff_t(n), policy, [&](std::ptrdiff_t idx) {
        const double l = lambda_grid[std::size_t(idx) / y_grid.size()];
        const double y = y_grid[std::size_t(idx) % y_grid.size()];
        const double lhs = rel_error_lhs(l, y);
        const double rhs = rel_error_rhs(l, y);
        margin[std::size_t(idx)] = std::min(lhs - rhs, rhs);
    });

    CheckReport rep;
    rep.property = "rel_error_bound_chain";
    rep.grid = vector_axis_desc("lambda", lambda_grid) + " " + vector_axis_desc("y", y_grid);
    rep.tolerance = 0.0;  // strict
    const std::size_t worst = argmin(margin);
    rep.worst_violation = margin[worst];
    rep.worst_location = {{"lambda", lambda_grid[worst / y_grid.size()]},
                          {"y", y_grid[worst % y_grid.size()]}};
    rep.points_checked = long(n);
    rep.pass = rep.worst_violation > 0.0;
    return rep;
}

double w4_sign_surface_x(double lambda, double x) {
    const double p = std::pow(1.0 + x, lambda);  // (1+x)^lambda
    const double lg = std::log1p(x);
    const double a = (p - 1.0) / lambda;
    return lambda * lambda * p * lg * (std::exp(a) - x) +
           (lambda * p * lg - p + 1.0) * (1.0 - (p - 1.0) * x);
}

double w4_sign_surface_y(double lambda, double y) {
    const double t = lambda * y;
    const double lg = std::log1p(t);
    const double pw = std::exp(lg / lambda);  // (ly+1)^{1/l}
    return lambda * (t + 1.0) * lg * (std::exp(y) - pw + 1.0) +
           ((t + 1.0) * lg - t) * ((t + 1.0) - t * pw);
}

namespace {

// Relative positivity margin (P - N)/(P + N) of the W4 surface, computed from
// log P and log N so the e^y and (ly+1)^{1/l} factors never overflow.  The
// split uses the strict bound D = (1+t) log(1+t) - t > 0 with t = ly:
//   P = l (1+t) log(1+t) (e^y - e^B + 1) + D (1+t),   B = log(1+t)/l <= y
//   N = D t e^B
double w4_margin_rel(double lambda, double y) {
    const double t = lambda * y;
    const double lg = std::log1p(t);
    const double b = lg / lambda;
    const double d = t * lg - t_minus_log1p(t);  // (1+t)log(1+t) - t, stable

    // log(e^y - e^B + 1) = log(e^B expm1(y - B) + 1)
    const double z = y - b;
    const double log_big = log_add(b + log_expm1(z), 0.0);
    const double log_p = log_add(std::log(lambda * (1.0 + t)) + std::log(lg) + log_big,
                                 std::log(d * (1.0 + t)));
    const double log_n = std::log(d * t) + b;
    return std::tanh(0.5 * (log_p - log_n));
}

// Relative margin (P - Q)/(P + Q) of the W7 surface.
double w7_margin_rel(double y) {
    const double lg = std::log1p(y);
    const double p = (1.0 + y) * lg * (1.0 + y) * lg;
    const double q = y * y * lg + y * y;
    return (p - q) / (p + q);
}

}  // namespace

double w7_sign_surface(double y) {
    const double lg = std::log1p(y);
    const double s = (1.0 + y) * lg;
    return s * s - y * y * lg - y * y;
}

CheckReport w4_surface_positivity_check(const std::vector<double>& lambda_grid,
                                        const std::vector<double>& y_grid, ExecPolicy policy) {
    const std::size_t n = lambda_grid.size() * y_grid.size();
    std::vector<double> margin(n);
    parallel_for(std::ptrdiff_t(n), policy, [&](std::ptrdiff_t idx) {
        const double l = lambda_grid[std::size_t(idx) / y_grid.size()];
        const double y = y_grid[std::size_t(idx) % y_grid.size()];
        margin[std::size_t(idx)] = w4_margin_rel(l, y);
    });
    CheckReport rep;
    rep.property = "w4_surface_positive";
    rep.grid = vector_axis_desc("lambda", lambda_grid) + " " + vector_axis_desc("y", y_grid);
    rep.tolerance = 0.0;
    const std::size_t worst = argmin(margin);
    rep.worst_violation = margin[worst];
    rep.worst_location = {{"lambda", lambda_grid[worst / y_grid.size()]},
                          {"y", y_grid[worst % y_grid.size()]}};
    rep.points_checked = long(n);
    rep.pass = rep.worst_violation > 0.0;
    return rep;
}

CheckReport w7_surface_positivity_check(const std::vector<double>& y_grid) {
    CheckReport rep;
    rep.property = "w7_surface_positive";
    rep.grid = vector_axis_desc("y", y_grid);
    rep.tolerance = 0.0;
    rep.worst_violation = kPosInf;
    for (double y : y_grid) {
        const double v = w7_sign_surface(y);
        ++rep.points_checked;
        if (v < rep.worst_violation) {
            rep.worst_violation = v;
            rep.worst_location = {{"y", y}};
        }
    }
    rep.pass = rep.worst_violation > 0.0;
    return rep;
}

CheckReport sign_surface_positivity_check(const std::vector<double>& lambda_grid,
                                          const std::vector<double>& y_grid,
                                          ExecPolicy policy) {
    const CheckReport w4rep = w4_surface_positivity_check(lambda_grid, y_grid, policy);
    CheckReport rep;
    rep.property = "sign_surfaces_positive";
    rep.grid = w4rep.grid;
    rep.tolerance = 0.0;
    rep.worst_violation = w4rep.worst_violation;
    rep.worst_location = w4rep.worst_location;
    rep.worst_location.emplace_back("surface", 4.0);
    rep.points_checked = w4rep.points_checked;

    for (double y : y_grid) {
        const double m = w7_margin_rel(y);
        ++rep.points_checked;
        if (m < rep.worst_violation) {
            rep.worst_violation = m;
            rep.worst_location = {{"y", y}, {"surface", 7.0}};
        }
    }
    rep.pass = rep.worst_violation > 0.0;
    return rep;
}

namespace {

// Direction audit of lambda |-> w(lambda, x) at one x, via eval_log (log is
// monotone, so comparing logs compares weights).  Returns the violation of
// the profile's requirement, <= 0 when conforming.
double direction_violation(const WeightFamily& family, double theta, double lambda,
                           double x) {
    const double lt = family.eval_log(theta, x);
    const double ll = family.eval_log(lambda, x);
    const auto not_above = [](double a, double b) {  // violation of a <= b
        if (a == kNegInf) return kNegInf;
        if (b == kNegInf) return kPosInf;
        return a - b;
    };
    switch (family.lambda_profile()) {
        case LambdaProfile::Increasing:
            return not_above(lt, ll);
        case LambdaProfile::Decreasing:
        case LambdaProfile::NonIncreasing:
            return not_above(ll, lt);
        case LambdaProfile::MixedAtOne:
            if (x < 1.0) return not_above(ll, lt);
            if (x > 1.0) return not_above(lt, ll);
            return std::abs(ll - lt) - 1e-9;  // slices cross at x = 1
        case LambdaProfile::Unknown:
            return kSkipped;
    }
    return kSkipped;
}

}  // namespace

AssumptionAuditReport assumption_audit(const WeightFamily& family, const LossModel& model,
                                       double theta, double lambda, const GridSpec& grid) {
    if (!(theta < lambda))
        throw ValidationError("assumption_audit: need theta < lambda");
    AssumptionAuditReport audit;

    std::vector<double> xs =
        model.is_empirical() ? model.samples() : grid.x_grid();
    if (family.lambda_profile() == LambdaProfile::MixedAtOne) {
        xs.push_back(1.0);  // exercise the crossing point explicitly
        std::sort(xs.begin(), xs.end());
    }

    {
        CheckReport& rep = audit.lambda_direction;
        rep.property = "lambda_direction_profile";
        rep.grid = vector_axis_desc("x", xs);
        rep.tolerance = 1e-9;
        rep.worst_violation = kNegInf;
        for (double x : xs) {
            const double v = direction_violation(family, theta, lambda, x);
            if (std::isnan(v)) {
                ++rep.points_skipped;
                continue;
            }
            ++rep.points_checked;
            if (v > rep.worst_violation) {
                rep.worst_violation = v;
                rep.worst_location = {{"x", x}};
            }
        }
        if (rep.points_checked == 0) {
            rep.pass = true;
            rep.note = "profile unknown: nothing to audit";
            rep.worst_violation = 0.0;
        } else {
            rep.pass = rep.worst_violation <= rep.tolerance;
        }
    }

    {
        // F-measure of the set where the two slices coincide.  Empirical
        // models measure atoms exactly; continuous models accumulate the
        // cdf mass of grid cells whose endpoints both test equal.
        CheckReport& rep = audit.separation;
        rep.property = "separation_f_null";
        rep.grid = vector_axis_desc("x", xs);
        rep.tolerance = 0.01;  // flagged when >1% of the mass sits on equal slices
        const auto equal_at = [&](double x) {
            const double lt = family.eval_log(theta, x);
            const double ll = family.eval_log(lambda, x);
            if (lt == kNegInf && ll == kNegInf) return true;
            if (lt == kNegInf || ll == kNegInf) return false;
            return std::abs(lt - ll) <= 1e-12;
        };
        double measure = 0.0;
        double worst_x = xs.front();
        if (model.is_empirical()) {
            const auto& atoms = model.samples();
            long hits = 0;
            for (double a : atoms)
                if (equal_at(a)) {
                    ++hits;
                    worst_x = a;
                }
            measure = double(hits) / double(atoms.size());
            rep.points_checked = long(atoms.size());
        } else {
            std::vector<char> eq(xs.size());
            for (std::size_t i = 0; i < xs.size(); ++i) eq[i] = equal_at(xs[i]) ? 1 : 0;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i)
                if (eq[i] && eq[i + 1]) {
                    measure += model.cdf(xs[i + 1]) - model.cdf(xs[i]);
                    worst_x = xs[i];
                }
            // Mass below the grid and in the far tail.
            if (eq.front()) measure += model.cdf(xs.front());
            if (equal_at(std::max(xs.back() * 1e3, lambda * 10.0)))
                measure += 1.0 - model.cdf(xs.back());
            rep.points_checked = long(xs.size());
        }
        rep.worst_violation = measure;
        rep.worst_location = {{"x", worst_x}};
        rep.pass = measure <= rep.tolerance;
        if (!family.separation())
            rep.note = "family does not claim separation; overlap is the known exception";
        else if (family.equal_value_x())
            rep.note = "slices cross at x=" + std::to_string(*family.equal_value_x()) +
                       " (single point, F-null under continuous models)";
    }

    {
        CheckReport& rep = audit.anchor;
        rep.property = "anchor_value_one";
        rep.tolerance = 1e-9;
        rep.worst_violation = kNegInf;
        const auto deviation = [&](double l) {
            switch (family.anchor()) {
                case AnchorPoint::AtZero:
                    return std::max(std::abs(family.limit_at_zero(l) - 1.0),
                                    std::abs(family.eval(l, 1e-30) - 1.0));
                case AnchorPoint::AtInfinity:
                    return std::abs(family.eval(l, 1e12) - 1.0);
                case AnchorPoint::AtOne:
                    return std::abs(family.eval(l, 1.0) - 1.0);
                case AnchorPoint::Unknown:
                    return kSkipped;
            }
            return kSkipped;
        };
        const char* names[] = {"x->0", "x->inf", "x=1", "unknown"};
        rep.grid = std::string("anchor:") + names[int(family.anchor())];
        for (double l : {theta, lambda}) {
            const double d = deviation(l);
            if (std::isnan(d)) {
                ++rep.points_skipped;
                continue;
            }
            ++rep.points_checked;
            if (d > rep.worst_violation) {
                rep.worst_violation = d;
                rep.worst_location = {{"lambda", l}};
            }
        }
        if (rep.points_checked == 0) {
            rep.pass = true;
            rep.note = "anchor unknown: nothing to audit";
            rep.worst_violation = 0.0;
        } else {
            rep.pass = rep.worst_violation <= rep.tolerance;
        }
    }

    audit.pass = audit.lambda_direction.pass && audit.separation.pass && audit.anchor.pass;
    if (family.equal_value_x()) audit.note = audit.separation.note;
    return audit;
}

}  // namespace wpremium
