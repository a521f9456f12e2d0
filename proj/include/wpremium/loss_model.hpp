#pragma once

// Nonnegative loss distributions: parametric families evaluated through
// closed-form cdf/quantile/log-density plus adaptive quadrature for
// expectations, and empirical samples evaluated through exact sums.

#include <functional>
#include <string>
#include <vector>

#include "wpremium/quadrature.hpp"

namespace wpremium {

struct ExpectationResult {
    double value = 0.0;
    double abs_error = 0.0;
    double truncation = 0.0;  // upper integration limit actually used
    long evals = 0;
};

enum class LogExpectStatus { Ok, Divergent, Zero, QuadratureFail };

// Result of integrating exp(log_phi) against the distribution in log scale.
struct LogExpectation {
    LogExpectStatus status = LogExpectStatus::Ok;
    double log_value = kNegInf;
    double rel_error = 0.0;
    double truncation = 0.0;
    long evals = 0;
};

class LossModel {
  public:
    enum class Kind { Exponential, LogNormal, Pareto, Gamma, Uniform, Empirical };

    static LossModel exponential(double rate);
    static LossModel lognormal(double mu, double sigma);
    static LossModel pareto(double alpha, double xm);
    static LossModel gamma(double shape, double scale);
    static LossModel uniform(double a, double b);
    static LossModel empirical(std::vector<double> samples);
    static LossModel empirical_from_file(const std::string& path);

    Kind kind() const { return kind_; }
    bool is_empirical() const { return kind_ == Kind::Empirical; }
    std::string describe() const;

    // Right-continuous cdf; 0 at the lower support end, monotone, limit 1.
    double cdf(double x) const;
    // log of the density (parametric kinds only; -inf outside the support).
    double log_density(double x) const;
    // Inverse cdf for p in (0, 1); for empirical models the p-th order statistic.
    double quantile(double p) const;
    // Closed-form mean; throws DivergentExpectation when infinite (Pareto alpha <= 1).
    double mean() const;
    bool finite_mean() const;
    // True when the cdf is strictly increasing on all of (0, inf), the
    // condition under which a CTE premium curve is strictly increasing.
    bool has_increasing_cdf() const;
    // sup{r >= 0 : E[e^{r X}] < infinity}, the exponential moment boundary.
    // 0 for the heavy-tailed kinds (lognormal, pareto), which carry only
    // polynomial moments; +inf for bounded-support and empirical models.
    double max_exponential_moment_rate() const;

    double support_lower() const;
    double support_upper() const;  // +inf when unbounded
    // Initial truncation point for tail integrals: the 1 - 1e-7 quantile,
    // extended by doubling inside log_expect until the tail stops mattering.
    double truncation_anchor() const;

    // Ascending-sorted samples (empirical models only).
    const std::vector<double>& samples() const;

    // E[phi(X)] for nonnegative phi supplied in log scale.  Parametric models
    // integrate adaptively over [support_lo, T] and extend T by doubling: the
    // extension stops once a doubling contributes less than tail_rel_tol
    // relative, and the expectation is classified Divergent once the running
    // total grows by more than (1 + growth_factor) for divergence_run
    // consecutive doublings whose contributions are not geometrically
    // decaying (a slowly convergent polynomial tail keeps growing the total
    // but its doublings shrink; a divergent one contributes non-shrinking
    // segments).  Empirical models sum exactly.  `lower_cutoff`
    // restricts integration to [lower_cutoff, inf) for integrands known to
    // vanish below it (indicator weights), which keeps the jump out of the
    // quadrature grid.
    LogExpectation log_expect(const std::function<double(double)>& log_phi,
                              const QuadratureOptions& opts = {},
                              double lower_cutoff = 0.0) const;

    // Same integrand restricted to [a, b] (parametric models only; no tail
    // extension, no divergence ladder).
    LogIntegral log_integral_range(const std::function<double(double)>& log_phi, double a,
                                   double b, const QuadratureOptions& opts = {}) const;

    // E[phi(X)] for nonnegative phi in linear scale.  Throws
    // DivergentExpectation when the growth diagnostic trips and
    // QuadratureFailure when the error estimate cannot be driven below
    // tolerance.
    ExpectationResult expect_transform(const std::function<double(double)>& phi,
                                       const QuadratureOptions& opts = {}) const;

  private:
    LossModel(Kind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}
    explicit LossModel(std::vector<double> samples);

    Kind kind_;
    double p1_ = 0.0;
    double p2_ = 0.0;
    std::vector<double> samples_;
};

// Reads one positive decimal per line; '#' starts a comment, blank lines are
// skipped.  Nonpositive or malformed values raise FileError with the 1-based
// line number.
std::vector<double> load_empirical_samples(const std::string& path);

}  // namespace wpremium
