#include "wpremium/premium.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wpremium/errors.hpp"

namespace wpremium {

namespace {

std::string point_desc(const LossModel& model, const WeightFamily& family, double lambda) {
    return family.name() + " over " + model.describe() + " at lambda=" + std::to_string(lambda);
}

// E[X^k w(lambda, X)] in log scale for parametric models, with the ladder's
// divergence classification mapped onto the premium error types.
LogExpectation log_weighted_moment(const LossModel& model, const WeightFamily& family,
                                   double lambda, int k, const QuadratureOptions& quad) {
    const auto log_phi = [&family, lambda, k](double x) {
        double v = family.eval_log(lambda, x);
        if (k == 1) v += std::log(x);
        return v;
    };
    return model.log_expect(log_phi, quad, family.support_cutoff(lambda));
}

void throw_on_failure(const LogExpectation& e, const char* which, const LossModel& model,
                      const WeightFamily& family, double lambda) {
    switch (e.status) {
        case LogExpectStatus::Divergent:
            throw DivergentPremium(std::string(which) + " diverges for " +
                                   point_desc(model, family, lambda));
        case LogExpectStatus::QuadratureFail:
            throw QuadratureFailure(std::string(which) + " did not converge for " +
                                    point_desc(model, family, lambda));
        default:
            break;
    }
}

// Closed forms over Exponential(rate) for the three named families.
std::optional<double> closed_form_premium(const LossModel& model, const WeightFamily& family,
                                          double lambda) {
    if (model.kind() != LossModel::Kind::Exponential) return std::nullopt;
    const double rate = 1.0 / model.mean();
    switch (family.id()) {
        case WeightId::Esscher:
            if (lambda >= rate)
                throw DivergentPremium("Esscher premium diverges at lambda >= rate for " +
                                       model.describe());
            return 1.0 / (rate - lambda);
        case WeightId::Cte:
            return lambda + 1.0 / rate;
        case WeightId::Kamps:
            return (2.0 * rate * lambda + 1.0) / (rate * (rate * lambda + 1.0));
        default:
            return std::nullopt;
    }
}

struct EmpiricalMoments {
    double num = 0.0;    // sum x_i * w_i (possibly shifted)
    double den = 0.0;    // sum w_i (same shift)
};

// Ascending-index sums; the shift cancels in the ratio.
EmpiricalMoments empirical_moments(const LossModel& model, const WeightFamily& family,
                                   double lambda) {
    const auto& xs = model.samples();
    EmpiricalMoments m;
    if (family.overflow_risk()) {
        double shift = kNegInf;
        for (double x : xs) shift = std::max(shift, family.eval_log(lambda, x));
        if (shift == kNegInf) return m;
        for (double x : xs) {
            const double w = std::exp(family.eval_log(lambda, x) - shift);
            m.num += x * w;
            m.den += w;
        }
    } else {
        for (double x : xs) {
            const double w = family.eval(lambda, x);
            m.num += x * w;
            m.den += w;
        }
    }
    return m;
}

// Panel boundaries marching geometrically inward from both ends of [a, b].
// Integrand structure can hide at any scale against either endpoint — a ramp
// of width lambda just above the left end, or a cliff squeezed under the top
// of a bounded support when the weight concentrates there — and one adaptive
// pass places no node closer to a panel edge than ~0.4% of the panel width,
// so a single [a, b] panel never samples (and never reports) a tight enough
// feature.  Edge-anchored panels at every decade of scale put nodes hard
// against both ends.
std::vector<double> edge_refined_panels(double a, double b) {
    std::vector<double> pts{a};
    const double mid = a + 0.5 * (b - a);
    for (double w = std::max((b - a) * 1e-9, 1e-300); a + w < mid; w *= 10.0) {
        if (a + w > pts.back()) pts.push_back(a + w);
    }
    std::vector<double> upper;
    for (double w = std::max((b - a) * 1e-9, 1e-300); b - w > mid; w *= 10.0) {
        const double p = b - w;
        if (p < b && (upper.empty() || p < upper.back())) upper.push_back(p);
    }
    for (auto it = upper.rbegin(); it != upper.rend(); ++it)
        if (*it > pts.back()) pts.push_back(*it);
    if (b > pts.back()) pts.push_back(b);
    return pts;
}

}  // namespace

std::string to_string(PremiumPath path) {
    switch (path) {
        case PremiumPath::RatioOfExpectations: return "ratio_of_expectations";
        case PremiumPath::TailIntegral: return "tail_integral";
        case PremiumPath::EmpiricalExact: return "empirical_exact";
        case PremiumPath::ClosedForm: return "closed_form";
    }
    return "?";
}

static void require_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("lambda must be positive and finite, got " +
                              std::to_string(lambda));
}

// Analytic divergence screen.  The truncation ladder integrates further and
// further out, but an integrand can dip below every tolerance before its far
// tail resurges (exponential weights over a lognormal model do exactly that),
// so combinations whose moments provably diverge are rejected before any
// quadrature: superpolynomially growing weights over models carrying only
// polynomial moments, and weights growing like e^{r x} once r reaches the
// model's exponential moment boundary.
static void require_integrable(const LossModel& model, const WeightFamily& family,
                               double lambda) {
    const double r_max = model.max_exponential_moment_rate();
    if (r_max == kPosInf) return;
    if (r_max == 0.0 && family.superpolynomial_growth())
        throw DivergentPremium("E[Xw] diverges for " + point_desc(model, family, lambda) +
                               ": superpolynomial weight growth over a model with only "
                               "polynomial moments");
    const std::optional<double> rate = family.exp_growth_rate(lambda);
    if (rate.has_value() && *rate > 0.0 && *rate >= r_max)
        throw DivergentPremium("E[Xw] diverges for " + point_desc(model, family, lambda) +
                               ": weight growth rate reaches the exponential moment "
                               "boundary " + std::to_string(r_max));
}

PremiumResult premium(const LossModel& model, const WeightFamily& family, double lambda,
                      const PremiumOptions& opts) {
    require_lambda(lambda);
    require_integrable(model, family, lambda);
    PremiumResult out;
    out.lambda = lambda;

    if (model.is_empirical()) {
        const EmpiricalMoments m = empirical_moments(model, family, lambda);
        if (m.den <= 0.0)
            throw ZeroNormalizer("all weights vanish for " + point_desc(model, family, lambda));
        out.premium = m.num / m.den;
        out.path = PremiumPath::EmpiricalExact;
        out.abs_error_estimate = 1e-12 * std::max(1.0, out.premium);
    } else if (opts.prefer_closed_form) {
        const auto cf = closed_form_premium(model, family, lambda);
        if (cf) {
            out.premium = *cf;
            out.path = PremiumPath::ClosedForm;
            out.abs_error_estimate =
                4.0 * std::numeric_limits<double>::epsilon() * std::abs(*cf);
        } else {
            return premium(model, family, lambda, PremiumOptions{opts.quad, false});
        }
    } else {
        const LogExpectation den = log_weighted_moment(model, family, lambda, 0, opts.quad);
        throw_on_failure(den, "E[w]", model, family, lambda);
        if (den.status == LogExpectStatus::Zero)
            throw ZeroNormalizer("E[w] = 0 for " + point_desc(model, family, lambda));

        const LogExpectation num = log_weighted_moment(model, family, lambda, 1, opts.quad);
        throw_on_failure(num, "E[Xw]", model, family, lambda);

        out.premium = std::exp(num.log_value - den.log_value);
        out.path = PremiumPath::RatioOfExpectations;
        out.abs_error_estimate = out.premium * (num.rel_error + den.rel_error);
    }

    out.net_premium = model.mean();
    out.loading = out.premium - out.net_premium;
    return out;
}

PremiumResult premium_tail(const LossModel& model, const WeightFamily& family, double lambda,
                           const PremiumOptions& opts) {
    require_lambda(lambda);
    require_integrable(model, family, lambda);
    PremiumResult out;
    out.lambda = lambda;
    out.path = PremiumPath::TailIntegral;

    if (model.is_empirical()) {
        // The weighted survival function is a right-continuous step function
        // on the atoms; integrate it segment by segment starting from
        // S(x) = 1 on [0, smallest atom).
        const auto& xs = model.samples();
        const std::size_t n = xs.size();
        std::vector<double> w(n);
        if (family.overflow_risk()) {
            double shift = kNegInf;
            for (double x : xs) shift = std::max(shift, family.eval_log(lambda, x));
            if (shift == kNegInf)
                throw ZeroNormalizer("all weights vanish for " +
                                     point_desc(model, family, lambda));
            for (std::size_t i = 0; i < n; ++i)
                w[i] = std::exp(family.eval_log(lambda, xs[i]) - shift);
        } else {
            for (std::size_t i = 0; i < n; ++i) w[i] = family.eval(lambda, xs[i]);
        }
        std::vector<double> suffix(n + 1, 0.0);
        for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + w[i];
        if (suffix[0] <= 0.0)
            throw ZeroNormalizer("all weights vanish for " + point_desc(model, family, lambda));
        double integral = xs[0];  // S = 1 below the smallest atom
        for (std::size_t i = 0; i + 1 < n; ++i)
            integral += (xs[i + 1] - xs[i]) * (suffix[i + 1] / suffix[0]);
        out.premium = integral;
        out.abs_error_estimate = 1e-12 * std::max(1.0, out.premium);
        out.net_premium = model.mean();
        out.loading = out.premium - out.net_premium;
        return out;
    }

    // Parametric: outer adaptive integral of the weighted survival function,
    // each evaluation resolving one inner integral of w * density.
    QuadratureOptions inner_quad = opts.quad;
    inner_quad.rel_tol = std::max(opts.quad.rel_tol, 1e-9);

    const LogExpectation den = log_weighted_moment(model, family, lambda, 0, opts.quad);
    throw_on_failure(den, "E[w]", model, family, lambda);
    if (den.status == LogExpectStatus::Zero)
        throw ZeroNormalizer("E[w] = 0 for " + point_desc(model, family, lambda));
    const LogExpectation num = log_weighted_moment(model, family, lambda, 1, opts.quad);
    throw_on_failure(num, "E[Xw]", model, family, lambda);

    const double t_outer = std::max(den.truncation, num.truncation);
    const double log_den = den.log_value;
    const auto log_w = [&](double x) { return family.eval_log(lambda, x); };

    double worst_inner_rel = 0.0;
    const auto log_survival = [&](double x) {
        // Edge-refined panels: w * density can carry structure tight against
        // either endpoint (the O(lambda) ramp of 1 - e^{-x/lambda} above x,
        // or the concentration spike under a bounded support's top).
        double acc = kNegInf;
        const std::vector<double> pts = edge_refined_panels(x, t_outer);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const LogIntegral part =
                model.log_integral_range(log_w, pts[i], pts[i + 1], inner_quad);
            worst_inner_rel = std::max(worst_inner_rel, part.rel_error);
            if (part.log_value > kNegInf) acc = log_add(acc, part.log_value);
        }
        if (acc == kNegInf) return kNegInf;
        return std::min(0.0, acc - log_den);
    };

    QuadratureOptions outer_quad = opts.quad;
    outer_quad.rel_tol = std::max(opts.quad.rel_tol, 1e-9);
    // Below the weight's support cutoff no weight mass sits at or below x,
    // so the weighted survival is exactly 1.  Integrate that stretch
    // analytically to keep the kink off the quadrature grid.
    const double cut = std::min(family.support_cutoff(lambda), t_outer);

    // The weighted survival can carry structure at any scale against either
    // end: the O(lambda)-wide ramp of 1 - e^{-x/lambda} at the left, or a
    // cliff just below the top of a bounded support once the weight
    // concentrates there.  Edge-refined panels keep both in view.
    double log_total = kNegInf;
    double log_err_acc = kNegInf;
    const std::vector<double> panels = edge_refined_panels(cut, t_outer);
    for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
        const LogIntegral seg =
            log_adaptive_integrate(log_survival, panels[i], panels[i + 1], outer_quad);
        if (!seg.converged)
            throw QuadratureFailure("tail integral did not converge for " +
                                    point_desc(model, family, lambda));
        if (seg.log_value > kNegInf) {
            log_total = log_add(log_total, seg.log_value);
            log_err_acc = log_add(log_err_acc,
                                  seg.log_value + std::log(std::max(seg.rel_error, 1e-300)));
        }
    }

    const double beyond_cut = log_total == kNegInf ? 0.0 : std::exp(log_total);
    const double outer_rel = log_total == kNegInf ? 0.0 : std::exp(log_err_acc - log_total);
    out.premium = cut + beyond_cut;
    out.abs_error_estimate =
        beyond_cut * (outer_rel + den.rel_error + worst_inner_rel);
    out.net_premium = model.mean();
    out.loading = out.premium - out.net_premium;
    return out;
}

WeightedCdf::WeightedCdf(const LossModel& model, const WeightFamily& family, double lambda,
                         const PremiumOptions& opts)
    : model_(model), family_(family), lambda_(lambda), opts_(opts) {
    require_lambda(lambda);
    require_integrable(model_, family_, lambda_);
    if (model_.is_empirical()) {
        const auto& xs = model_.samples();
        prefix_.resize(xs.size());
        double shift = 0.0;
        if (family_.overflow_risk()) {
            shift = kNegInf;
            for (double x : xs) shift = std::max(shift, family_.eval_log(lambda_, x));
            if (shift == kNegInf)
                throw ZeroNormalizer("all weights vanish for " +
                                     point_desc(model_, family_, lambda_));
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double w = family_.overflow_risk()
                                 ? std::exp(family_.eval_log(lambda_, xs[i]) - shift)
                                 : family_.eval(lambda_, xs[i]);
            acc += w;
            prefix_[i] = acc;
        }
        total_ = acc;
        if (total_ <= 0.0)
            throw ZeroNormalizer("all weights vanish for " +
                                 point_desc(model_, family_, lambda_));
        return;
    }
    const LogExpectation den = log_weighted_moment(model_, family_, lambda_, 0, opts_.quad);
    throw_on_failure(den, "E[w]", model_, family_, lambda_);
    if (den.status == LogExpectStatus::Zero)
        throw ZeroNormalizer("E[w] = 0 for " + point_desc(model_, family_, lambda_));
    log_den_ = den.log_value;
    truncation_ = den.truncation;
}

double WeightedCdf::operator()(double x) const {
    if (model_.is_empirical()) {
        const auto& xs = model_.samples();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        if (it == xs.begin()) return 0.0;
        return prefix_[std::size_t(it - xs.begin()) - 1] / total_;
    }
    const double lo = std::max(model_.support_lower(), family_.support_cutoff(lambda_));
    if (x <= lo) return 0.0;
    const auto log_w = [&](double t) { return family_.eval_log(lambda_, t); };
    const LogIntegral part =
        model_.log_integral_range(log_w, lo, std::min(x, truncation_), opts_.quad);
    if (part.log_value == kNegInf) return 0.0;
    return std::min(1.0, std::exp(part.log_value - log_den_));
}

double weighted_cdf(const LossModel& model, const WeightFamily& family, double lambda,
                    double x, const PremiumOptions& opts) {
    return WeightedCdf(model, family, lambda, opts)(x);
}

LambdaDomain probe_lambda_domain(const LossModel& model, const WeightFamily& family,
                                 const std::vector<double>& lambda_grid,
                                 const PremiumOptions& opts) {
    std::vector<double> grid = lambda_grid;
    std::sort(grid.begin(), grid.end());

    LambdaDomain dom;
    dom.probes.reserve(grid.size());
    for (double l : grid) {
        LambdaProbe p;
        p.lambda = l;
        try {
            const PremiumResult r = premium(model, family, l, opts);
            p.finite = std::isfinite(r.premium);
        } catch (const Error& e) {
            p.finite = false;
            p.note = e.what();
        }
        dom.probes.push_back(std::move(p));
    }

    // Longest consecutive finite run (first one on ties).
    std::size_t best_lo = 0, best_len = 0, cur_lo = 0, cur_len = 0;
    for (std::size_t i = 0; i < dom.probes.size(); ++i) {
        if (dom.probes[i].finite) {
            if (cur_len == 0) cur_lo = i;
            ++cur_len;
            if (cur_len > best_len) {
                best_len = cur_len;
                best_lo = cur_lo;
            }
        } else {
            cur_len = 0;
        }
    }
    if (best_len == 0) return dom;

    dom.empty = false;
    const std::size_t lo_i = best_lo, hi_i = best_lo + best_len - 1;
    dom.lower = lo_i == 0 ? 0.0 : 0.5 * (grid[lo_i - 1] + grid[lo_i]);
    dom.upper = hi_i + 1 == grid.size() ? kPosInf : 0.5 * (grid[hi_i] + grid[hi_i + 1]);
    return dom;
}

std::vector<CurvePoint> premium_curve(const LossModel& model, const WeightFamily& family,
                                      const std::vector<double>& lambdas,
                                      const PremiumOptions& opts, ExecPolicy policy) {
    std::vector<CurvePoint> out(lambdas.size());
    parallel_for(std::ptrdiff_t(lambdas.size()), policy, [&](std::ptrdiff_t i) {
        CurvePoint& p = out[std::size_t(i)];
        p.lambda = lambdas[std::size_t(i)];
        try {
            p.result = premium(model, family, p.lambda, opts);
            p.ok = true;
        } catch (const Error& e) {
            p.ok = false;
            p.error = e.what();
        }
    });
    return out;
}

}  // namespace wpremium
