#include "wpremium/weight_family.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "wpremium/errors.hpp"
#include "wpremium/quadrature.hpp"

namespace wpremium {

namespace {

void check_args(double lambda, double x) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ValidationError("weight: lambda must be positive and finite");
    if (x < 0.0 || std::isnan(x))
        throw ValidationError("weight: x must be nonnegative");
}

// ((1+x)^lambda - 1)/lambda, the exponent inside w4.
double w4_exponent(double lambda, double x) {
    return std::expm1(lambda * std::log1p(x)) / lambda;
}

// Series seam for the removable singularities of w5/w6.  Four terms keep the
// switch-over mismatch near machine epsilon so finite-difference stencils
// straddling the threshold see no jump.
constexpr double kSeriesThreshold = 1e-4;

// expm1(u)/u via series for |u| below the threshold.
double expm1_over_u_series(double u) {
    return 1.0 + u * (0.5 + u * (1.0 / 6.0 + u / 24.0));
}

// t/log1p(t) via series for |t| below the threshold.
double t_over_log1p_series(double t) {
    return 1.0 + t * (0.5 + t * (-1.0 / 12.0 + t / 24.0));
}

double eval_w5(double lambda, double x) {
    const double u = x * std::log1p(lambda);
    if (std::abs(u) < kSeriesThreshold)
        return std::log1p(lambda) / lambda * expm1_over_u_series(u);
    return std::expm1(u) / (x * lambda);
}

double eval_log_w5(double lambda, double x) {
    const double u = x * std::log1p(lambda);
    if (std::abs(u) < kSeriesThreshold)
        return std::log(std::log1p(lambda) / lambda * expm1_over_u_series(u));
    return log_expm1(u) - std::log(x) - std::log(lambda);
}

double eval_w6(double lambda, double x) {
    const double t = x * lambda;
    if (std::abs(t) < kSeriesThreshold) return t_over_log1p_series(t);
    return t / std::log1p(t);
}

double eval_w7(double lambda, double x) {
    if (x < 1e-8) return std::log1p(lambda) / lambda;  // x -> 0 limit
    return std::log1p(x + lambda) / (x + lambda) * (x / std::log1p(x));
}

double log_kamps(double r) {  // log(1 - e^{-r}) for r = x/lambda > 0
    if (r <= 0.0) return kNegInf;
    if (r > 0.5) return std::log1p(-std::exp(-r));
    return std::log(-std::expm1(-r));
}

}  // namespace

WeightFamily WeightFamily::esscher() {
    WeightFamily f;
    f.id_ = WeightId::Esscher;
    f.name_ = "esscher";
    f.profile_ = LambdaProfile::Increasing;
    f.anchor_ = AnchorPoint::AtZero;
    f.smooth_ = true;
    f.overflow_risk_ = true;
    return f;
}

WeightFamily WeightFamily::cte() {
    WeightFamily f;
    f.id_ = WeightId::Cte;
    f.name_ = "cte";
    f.profile_ = LambdaProfile::NonIncreasing;
    f.anchor_ = AnchorPoint::AtInfinity;
    f.separation_ = false;  // slices agree off (theta, lambda], a set of
                            // positive probability
    f.smooth_ = false;
    return f;
}

WeightFamily WeightFamily::kamps() {
    WeightFamily f;
    f.id_ = WeightId::Kamps;
    f.name_ = "kamps";
    f.profile_ = LambdaProfile::Decreasing;
    f.anchor_ = AnchorPoint::AtInfinity;
    f.smooth_ = true;
    return f;
}

WeightFamily WeightFamily::w4() {
    WeightFamily f;
    f.id_ = WeightId::W4;
    f.name_ = "w4";
    f.profile_ = LambdaProfile::Increasing;
    f.anchor_ = AnchorPoint::AtZero;
    f.smooth_ = true;
    f.overflow_risk_ = true;
    return f;
}

WeightFamily WeightFamily::w5() {
    WeightFamily f;
    f.id_ = WeightId::W5;
    f.name_ = "w5";
    f.profile_ = LambdaProfile::MixedAtOne;
    f.anchor_ = AnchorPoint::AtOne;
    f.smooth_ = true;
    f.equal_value_x_ = 1.0;  // every slice passes through w5(lambda, 1) = 1
    return f;
}

WeightFamily WeightFamily::w6() {
    WeightFamily f;
    f.id_ = WeightId::W6;
    f.name_ = "w6";
    f.profile_ = LambdaProfile::Increasing;
    f.anchor_ = AnchorPoint::AtZero;
    f.smooth_ = true;
    return f;
}

WeightFamily WeightFamily::w7() {
    WeightFamily f;
    f.id_ = WeightId::W7;
    f.name_ = "w7";
    f.profile_ = LambdaProfile::Decreasing;
    f.anchor_ = AnchorPoint::AtInfinity;
    f.smooth_ = true;
    return f;
}

WeightFamily WeightFamily::custom(CustomSpec spec) {
    if (!spec.eval) throw ValidationError("custom weight: eval function is required");
    WeightFamily f;
    f.id_ = WeightId::Custom;
    f.name_ = std::move(spec.name);
    f.profile_ = spec.profile;
    f.anchor_ = spec.anchor;
    f.separation_ = spec.separation;
    f.smooth_ = spec.smooth;
    f.overflow_risk_ = spec.overflow_risk;
    f.custom_eval_ = std::move(spec.eval);
    if (spec.eval_log) {
        f.custom_eval_log_ = std::move(spec.eval_log);
    } else {
        const auto ev = f.custom_eval_;
        f.custom_eval_log_ = [ev](double l, double x) {
            const double v = ev(l, x);
            return v <= 0.0 ? kNegInf : std::log(v);
        };
    }
    return f;
}

WeightFamily WeightFamily::product(const WeightFamily& a, double lambda_a,
                                   const WeightFamily& b, double lambda_b) {
    CustomSpec spec;
    spec.name = a.name() + "*" + b.name();
    spec.eval = [a, lambda_a, b, lambda_b](double, double x) {
        return a.eval(lambda_a, x) * b.eval(lambda_b, x);
    };
    spec.eval_log = [a, lambda_a, b, lambda_b](double, double x) {
        return a.eval_log(lambda_a, x) + b.eval_log(lambda_b, x);
    };
    spec.smooth = a.smooth() && b.smooth();
    spec.overflow_risk = a.overflow_risk() || b.overflow_risk();
    return custom(std::move(spec));
}

double WeightFamily::eval(double lambda, double x) const {
    check_args(lambda, x);
    switch (id_) {
        case WeightId::Esscher:
            return std::exp(lambda * x);  // +inf past ~709/lambda, by design
        case WeightId::Cte:
            return x > lambda ? 1.0 : 0.0;
        case WeightId::Kamps:
            return -std::expm1(-x / lambda);
        case WeightId::W4: {
            const double a = w4_exponent(lambda, x);
            if (a > 709.0) return kPosInf;
            return std::exp(a) - x;
        }
        case WeightId::W5:
            if (x == 0.0) return std::log1p(lambda) / lambda;
            return eval_w5(lambda, x);
        case WeightId::W6:
            return eval_w6(lambda, x);
        case WeightId::W7:
            return eval_w7(lambda, x);
        case WeightId::Custom:
            return custom_eval_(lambda, x);
    }
    return 0.0;
}

double WeightFamily::eval_log(double lambda, double x) const {
    check_args(lambda, x);
    switch (id_) {
        case WeightId::Esscher:
            return lambda * x;
        case WeightId::Cte:
            return x > lambda ? 0.0 : kNegInf;
        case WeightId::Kamps:
            return log_kamps(x / lambda);
        case WeightId::W4: {
            // log(e^A - x) = A + log(1 - x e^{-A}); A >= log(1+x) keeps the
            // argument inside (0, 1].
            const double a = w4_exponent(lambda, x);
            return a + std::log1p(-x * std::exp(-a));
        }
        case WeightId::W5:
            if (x == 0.0) return std::log(std::log1p(lambda) / lambda);
            return eval_log_w5(lambda, x);
        case WeightId::W6:
            return std::log(eval_w6(lambda, x));
        case WeightId::W7: {
            if (x < 1e-8) return std::log(std::log1p(lambda) / lambda);
            return std::log(std::log1p(x + lambda)) - std::log(x + lambda) +
                   std::log(x) - std::log(std::log1p(x));
        }
        case WeightId::Custom:
            return custom_eval_log_(lambda, x);
    }
    return kNegInf;
}

double WeightFamily::limit_at_zero(double lambda) const {
    check_args(lambda, 0.0);
    switch (id_) {
        case WeightId::Esscher:
        case WeightId::W4:
        case WeightId::W6:
            return 1.0;
        case WeightId::Cte:
        case WeightId::Kamps:
            return 0.0;
        case WeightId::W5:
        case WeightId::W7:
            return std::log1p(lambda) / lambda;
        case WeightId::Custom:
            return custom_eval_(lambda, 1e-300);
    }
    return 0.0;
}

double WeightFamily::support_cutoff(double lambda) const {
    return id_ == WeightId::Cte ? lambda : 0.0;
}

std::optional<double> WeightFamily::exp_growth_rate(double lambda) const {
    switch (id_) {
        case WeightId::Esscher:
            return lambda;
        case WeightId::W5:
            // (1+l)^x / (x l) = e^{x log(1+l)} / (x l).
            return std::log1p(lambda);
        case WeightId::W4:
            // log w4 ~ (1+x)^lambda / lambda: superlinear past lambda = 1,
            // exactly x at lambda = 1, stretched-exponential (rate 0) below.
            if (lambda > 1.0) return kPosInf;
            if (lambda == 1.0) return 1.0;
            return 0.0;
        case WeightId::Cte:
        case WeightId::Kamps:
        case WeightId::W6:
        case WeightId::W7:
            return 0.0;
        case WeightId::Custom:
            return std::nullopt;
    }
    return std::nullopt;
}

bool WeightFamily::superpolynomial_growth() const {
    return id_ == WeightId::Esscher || id_ == WeightId::W4 || id_ == WeightId::W5;
}

WeightFamily weight_family_from_name(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (s == "esscher" || s == "w1") return WeightFamily::esscher();
    if (s == "cte" || s == "w2") return WeightFamily::cte();
    if (s == "kamps" || s == "w3") return WeightFamily::kamps();
    if (s == "w4") return WeightFamily::w4();
    if (s == "w5") return WeightFamily::w5();
    if (s == "w6") return WeightFamily::w6();
    if (s == "w7") return WeightFamily::w7();
    throw ParseError("unknown weight family: '" + name + "'", 0);
}

}  // namespace wpremium
