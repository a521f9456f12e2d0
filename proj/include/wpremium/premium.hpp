#pragma once

// The weighted premium H[lambda, X] = E[X w(lambda, X)] / E[w(lambda, X)]
// and its companions: the tail-integral route through the weighted cdf, the
// weighted cdf itself, domain probing for the set of lambdas with a finite
// premium, and parallel evaluation of whole premium curves.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpremium/loss_model.hpp"
#include "wpremium/parallel.hpp"
#include "wpremium/weight_family.hpp"

namespace wpremium {

enum class PremiumPath { RatioOfExpectations, TailIntegral, EmpiricalExact, ClosedForm };

std::string to_string(PremiumPath path);

struct PremiumResult {
    double lambda = 0.0;
    double premium = 0.0;
    double net_premium = 0.0;          // E[X]
    double loading = 0.0;              // premium - net_premium, >= 0 in theory
    PremiumPath path = PremiumPath::RatioOfExpectations;
    double abs_error_estimate = 0.0;
};

struct PremiumOptions {
    QuadratureOptions quad;
    // Use the closed forms (Esscher/CTE/Kamps over Exponential) when they
    // apply instead of quadrature.
    bool prefer_closed_form = false;
};

// Ratio route.  Parametric models integrate both moments in log scale (so
// overflow-risk families never overflow); empirical models use exact sums in
// ascending sample order, shifted through eval_log when the family flags
// overflow risk.  Throws DivergentPremium outside the premium's domain and
// ZeroNormalizer when E[w] = 0.
PremiumResult premium(const LossModel& model, const WeightFamily& family, double lambda,
                      const PremiumOptions& opts = {});

// Independent route via the layer (tail-integral) identity:
// H = integral of (1 - F_w) over [0, inf).  Used to cross-check `premium`.
PremiumResult premium_tail(const LossModel& model, const WeightFamily& family, double lambda,
                           const PremiumOptions& opts = {});

// F_w(x) = E[1{X <= x} w(lambda, X)] / E[w(lambda, X)].  Construction caches
// the normalizer; evaluation costs one bounded integral (parametric) or one
// prefix lookup (empirical).
class WeightedCdf {
  public:
    WeightedCdf(const LossModel& model, const WeightFamily& family, double lambda,
                const PremiumOptions& opts = {});
    double operator()(double x) const;
    double lambda() const { return lambda_; }
    double log_normalizer() const { return log_den_; }

  private:
    const LossModel model_;
    const WeightFamily family_;
    double lambda_;
    PremiumOptions opts_;
    double log_den_ = 0.0;
    double truncation_ = 0.0;
    // Empirical prefix sums of shifted weights, aligned with model.samples().
    std::vector<double> prefix_;
    double total_ = 0.0;
};

double weighted_cdf(const LossModel& model, const WeightFamily& family, double lambda,
                    double x, const PremiumOptions& opts = {});

struct LambdaProbe {
    double lambda = 0.0;
    bool finite = false;
    std::string note;  // why the point was rejected, when it was
};

// Interval estimate for the set of lambdas with a finite premium, built from
// the longest consecutive finite run of the probe grid.  Boundaries between a
// finite and a divergent probe are estimated by their midpoint; a run that
// reaches the grid edge extends to 0 or +inf.
struct LambdaDomain {
    bool empty = true;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<LambdaProbe> probes;

    bool contains(double lambda) const {
        return !empty && lambda > lower && lambda < upper;
    }
};

LambdaDomain probe_lambda_domain(const LossModel& model, const WeightFamily& family,
                                 const std::vector<double>& lambda_grid,
                                 const PremiumOptions& opts = {});

struct CurvePoint {
    double lambda = 0.0;
    bool ok = false;
    PremiumResult result;
    std::string error;
};

// Evaluates the premium at every lambda; failures are recorded per point, not
// thrown.  Points are independent, so the Parallel policy gives bit-identical
// results to Serial.
std::vector<CurvePoint> premium_curve(const LossModel& model, const WeightFamily& family,
                                      const std::vector<double>& lambdas,
                                      const PremiumOptions& opts = {},
                                      ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace wpremium
