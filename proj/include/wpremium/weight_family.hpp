#pragma once

// The seven weight families behind the weighted premium
// H[lambda, X] = E[X w(lambda, X)] / E[w(lambda, X)], plus user-defined
// weights.  Each family carries the metadata the verifier and calibration
// layers need: how w moves with lambda, where its anchor point sits, whether
// two slices w(theta, .), w(lambda, .) can coincide on a set of positive
// probability, and whether values overflow double for large lambda*x (in
// which case the premium engine works with eval_log throughout).

#include <functional>
#include <optional>
#include <string>

namespace wpremium {

enum class WeightId { Esscher, Cte, Kamps, W4, W5, W6, W7, Custom };

// Direction of lambda |-> w(lambda, x) pointwise in x.  MixedAtOne is the W5
// pattern: decreasing for x < 1, constant 1 at x = 1, increasing for x > 1.
enum class LambdaProfile { Increasing, NonIncreasing, Decreasing, MixedAtOne, Unknown };

// Where w(lambda, .) equals 1 for every lambda.
enum class AnchorPoint { AtZero, AtInfinity, AtOne, Unknown };

class WeightFamily {
  public:
    static WeightFamily esscher();  // w1(l, x) = e^{l x}
    static WeightFamily cte();      // w2(l, x) = 1{x > l}
    static WeightFamily kamps();    // w3(l, x) = 1 - e^{-x/l}
    static WeightFamily w4();       // w4(l, x) = e^{((1+x)^l - 1)/l} - x
    static WeightFamily w5();       // w5(l, x) = ((1+l)^x - 1)/(x l)
    static WeightFamily w6();       // w6(l, x) = x l / log(1 + x l)
    static WeightFamily w7();       // w7(l, x) = [log(1+x+l)/(x+l)] * [x/log(1+x)]

    struct CustomSpec {
        std::string name = "custom";
        std::function<double(double, double)> eval;                 // required
        std::function<double(double, double)> eval_log;             // defaults to log(eval)
        LambdaProfile profile = LambdaProfile::Unknown;
        AnchorPoint anchor = AnchorPoint::Unknown;
        bool separation = true;   // slices coincide only on F-null sets
        bool smooth = false;      // C^2 in (lambda, x), enables derivative checks
        bool overflow_risk = false;
    };
    static WeightFamily custom(CustomSpec spec);

    // Fixed-lambda product u(x) * w(x) of two families, used for the weighted
    // cdf composition and sandwich identities.  The result ignores its lambda
    // argument.
    static WeightFamily product(const WeightFamily& a, double lambda_a,
                                const WeightFamily& b, double lambda_b);

    WeightId id() const { return id_; }
    const std::string& name() const { return name_; }

    // w(lambda, x) for lambda > 0, x >= 0.  May return +inf for the
    // overflow-risk families (Esscher, W4) at large lambda*x; eval_log stays
    // finite there.
    double eval(double lambda, double x) const;
    // log w(lambda, x); -inf where the weight vanishes.
    double eval_log(double lambda, double x) const;
    // lim_{x -> 0+} w(lambda, x).
    double limit_at_zero(double lambda) const;

    LambdaProfile lambda_profile() const { return profile_; }
    AnchorPoint anchor() const { return anchor_; }
    // Common anchor value (1 for all seven families).
    double anchor_value() const { return 1.0; }
    // False when distinct slices agree on a set of positive probability under
    // generic continuous models (the CTE indicator).
    bool separation() const { return separation_; }
    // The single x where all W5 slices cross (w5(lambda, 1) = 1); audits
    // report it as the known exception to strict separation.
    std::optional<double> equal_value_x() const { return equal_value_x_; }
    bool overflow_risk() const { return overflow_risk_; }
    bool smooth() const { return smooth_; }
    // Largest x below which the weight is identically zero (lambda for the
    // CTE indicator, 0 otherwise); integrals start there.
    double support_cutoff(double lambda) const;
    // Strictly positive on (0, inf) for every lambda.
    bool strictly_positive() const { return id_ != WeightId::Cte; }

    // Growth class of x |-> log w(lambda, x) as x -> infinity, used to rule
    // out divergent premiums analytically before any quadrature (an integrand
    // can dip below every tolerance before its far tail resurges, which no
    // truncation ladder can see):
    //   - exp_growth_rate: the r with log w ~ r x (0 for polynomially
    //     bounded families, log(1+lambda) for w5, +inf for w4 past
    //     lambda > 1); nullopt for custom families, whose growth is unknown.
    //   - superpolynomial_growth: log w eventually beats every c log x
    //     (esscher, w4, w5), so expectations under models carrying only
    //     polynomial moments diverge for every lambda.
    std::optional<double> exp_growth_rate(double lambda) const;
    bool superpolynomial_growth() const;

  private:
    WeightFamily() = default;

    WeightId id_ = WeightId::Custom;
    std::string name_;
    LambdaProfile profile_ = LambdaProfile::Unknown;
    AnchorPoint anchor_ = AnchorPoint::Unknown;
    bool separation_ = true;
    bool smooth_ = false;
    bool overflow_risk_ = false;
    std::optional<double> equal_value_x_;
    std::function<double(double, double)> custom_eval_;
    std::function<double(double, double)> custom_eval_log_;
};

// Resolves "esscher", "cte", "kamps", "w4".."w7" (case-insensitive, plus the
// aliases w1/w2/w3); throws ParseError for anything else.
WeightFamily weight_family_from_name(const std::string& name);

}  // namespace wpremium
