#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpremium/errors.hpp"
#include "wpremium/verifier.hpp"

using namespace wpremium;

namespace {

// Deliberately log-submodular-violating weight: w = e^{-l x} (1 + x) has
// -log w with mixed partial +1, so every supermodularity check must fail.
WeightFamily counterexample_weight() {
    WeightFamily::CustomSpec spec;
    spec.name = "counterexample";
    spec.eval = [](double l, double x) { return std::exp(-l * x) * (1.0 + x); };
    spec.eval_log = [](double l, double x) { return -l * x + std::log1p(x); };
    spec.profile = LambdaProfile::Decreasing;
    spec.smooth = true;
    return WeightFamily::custom(std::move(spec));
}

const std::vector<WeightFamily> kAllFamilies = {
    WeightFamily::esscher(), WeightFamily::cte(), WeightFamily::kamps(),
    WeightFamily::w4(),      WeightFamily::w5(), WeightFamily::w6(),
    WeightFamily::w7()};

}  // namespace

TEST_CASE("log_spaced and grid specs hit their endpoints exactly") {
    const std::vector<double> g = log_spaced(1e-4, 1e3, 200);
    REQUIRE(g.size() == 200);
    CHECK(g.front() == 1e-4);
    CHECK(g.back() == 1e3);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);

    GridSpec spec;
    CHECK(spec.lambda_grid().size() == 64);
    CHECK(spec.lambda_grid().front() == 1e-2);
    CHECK(spec.lambda_grid().back() == 10.0);
    CHECK(spec.x_grid().size() == 64);
    CHECK_FALSE(spec.describe().empty());
}

TEST_CASE("mixed partial estimate: esscher is exactly bilinear") {
    // L = -log w1 = -lambda x, so the cross difference is -1 at every point
    // and every step size, up to rounding of the O(1) stencil values divided
    // by the O(1e-8) step product.
    CHECK(mixed_partial_estimate(WeightFamily::esscher(), 0.7, 1.3) ==
          doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(mixed_partial_estimate(WeightFamily::esscher(), 3.0, 0.2) ==
          doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("mixed partial estimate matches the w6 closed form at (1, 1)") {
    // d^2(-log w6)/dl dx at lambda = x = 1 is (log 2 - 1)/(4 log^2 2).
    CHECK(mixed_partial_estimate(WeightFamily::w6(), 1.0, 1.0) ==
          doctest::Approx(-0.1596684850291610976274).epsilon(1e-6));
}

TEST_CASE("mixed partial sweep passes for every built-in family") {
    for (const auto& f : kAllFamilies) {
        const CheckReport rep = mixed_partial_check(f);
        INFO("family ", f.name());
        CHECK(rep.pass);
        CHECK(rep.property == "mixed_partial_submodular");
        CHECK(rep.points_checked > 0);
        CHECK_FALSE(rep.grid.empty());
        if (f.id() == WeightId::Cte) CHECK(rep.points_skipped > 0);
    }
}

TEST_CASE("mixed partial sweep rejects the counterexample weight") {
    const CheckReport rep = mixed_partial_check(counterexample_weight());
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_violation == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("finite-difference steps must fit inside the grid") {
    FdSteps huge;
    huge.lambda_rel = 0.5;
    CHECK_THROWS_AS(mixed_partial_check(WeightFamily::esscher(), {}, 1e-6, huge),
                    GridDegenerate);
}

TEST_CASE("lattice inequality holds for every built-in family") {
    for (const auto& f : kAllFamilies) {
        const CheckReport rep = lattice_check(f);
        INFO("family ", f.name());
        CHECK(rep.pass);
        CHECK(rep.property == "lattice_log_supermodular");
        CHECK(rep.worst_violation <= 1e-9);
        CHECK(rep.points_checked > 0);
    }
}

TEST_CASE("lattice inequality rejects the counterexample weight") {
    const CheckReport rep = lattice_check(counterexample_weight());
    CHECK_FALSE(rep.pass);
    CHECK(rep.worst_violation > 1e-6);
}

TEST_CASE("slice ratios are monotone for built-in families") {
    const std::vector<double> xs = log_spaced(1e-2, 10.0, 64);
    for (const auto& f : kAllFamilies) {
        const CheckReport rep = ratio_monotone_check(f, 0.5, 1.5, xs);
        INFO("family ", f.name());
        CHECK(rep.pass);
        CHECK(rep.property == "ratio_monotone");
    }
    // Indicator thresholds beyond the grid leave no usable reference slice.
    CHECK_THROWS_AS(ratio_monotone_check(WeightFamily::cte(), 50.0, 60.0, xs),
                    AllZeroWeights);
    // The counterexample ratio e^{-(l - t) x} decreases.
    CHECK_FALSE(ratio_monotone_check(counterexample_weight(), 0.5, 1.5, xs).pass);
}

TEST_CASE("scalar chain: (y+1)log(y+1) > y > log(y+1) strictly") {
    const CheckReport rep = log_bound_chain_check(log_spaced(1e-4, 1e3, 200));
    CHECK(rep.pass);
    CHECK(rep.property == "log_bound_chain");
    CHECK(rep.worst_violation > 0.0);
    // The margin shrinks like y^2/2 toward the small end of the grid.
    CHECK(rep.worst_violation == doctest::Approx(0.5e-8).epsilon(0.01));

    // Spot values at y = 1: legs are 2 log 2 - 1 and 1 - log 2.
    const CheckReport at1 = log_bound_chain_check({1.0});
    CHECK(at1.worst_violation == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("relative-error chain: frozen spot values at lambda = y = 1") {
    CHECK(rel_error_lhs(1.0, 1.0) ==
          doctest::Approx(0.3591409142295226176801).epsilon(1e-14));  // e/2 - 1
    CHECK(rel_error_rhs(1.0, 1.0) ==
          doctest::Approx(0.27865247955551829632).epsilon(1e-14));  // 1 - 1/(2 log 2)
}

TEST_CASE("relative-error chain holds strictly on the log grid") {
    const std::vector<double> axis = log_spaced(1e-4, 1e3, 200);
    const CheckReport rep = rel_error_bound_check(axis, axis);
    CHECK(rep.pass);
    CHECK(rep.property == "rel_error_bound_chain");
    // Tightest corner: lambda = y = 1e-4, where the margin is l^2 y^3 / 12.
    CHECK(rep.worst_violation > 0.0);
    CHECK(rep.worst_violation < 1e-20);
    CHECK(rep.points_checked == 200 * 200);
}

TEST_CASE("the two parameterizations of the first surface agree") {
    CHECK(w4_sign_surface_x(1.0, 1.0) == doctest::Approx(2.38204441).epsilon(1e-8));
    CHECK(w4_sign_surface_y(1.0, 1.0) == doctest::Approx(2.38204441).epsilon(1e-8));
    const double lambda = 0.7, x = 2.3;
    const double y = (std::pow(1.0 + x, lambda) - 1.0) / lambda;
    CHECK(w4_sign_surface_x(lambda, x) == doctest::Approx(w4_sign_surface_y(lambda, y)).epsilon(1e-10));
}

TEST_CASE("second surface: frozen spot value at y = 1") {
    const double l2 = std::log(2.0);
    CHECK(w7_sign_surface(1.0) == doctest::Approx(4.0 * l2 * l2 - l2 - 1.0).epsilon(1e-13));
    CHECK(w7_sign_surface(1.0) == doctest::Approx(0.2286648751128603892512).epsilon(1e-13));
}

TEST_CASE("positivity sweeps over both sign surfaces") {
    const std::vector<double> axis = log_spaced(1e-4, 1e3, 200);
    const CheckReport e6 = w4_surface_positivity_check(axis, axis);
    CHECK(e6.pass);
    CHECK(e6.worst_violation > 0.0);

    const CheckReport e8 = w7_surface_positivity_check(axis);
    CHECK(e8.pass);

    const CheckReport both = sign_surface_positivity_check(axis, axis);
    CHECK(both.pass);
    CHECK(both.property == "sign_surfaces_positive");
    bool has_surface_tag = false;
    for (const auto& [key, value] : both.worst_location)
        if (key == "surface") has_surface_tag = true;
    CHECK(has_surface_tag);
}

TEST_CASE("assumption audit passes for smooth families over Exp(1)") {
    const LossModel exp1 = LossModel::exponential(1.0);
    for (const char* name : {"esscher", "kamps", "w4", "w6", "w7"}) {
        const auto audit =
            assumption_audit(weight_family_from_name(name), exp1, 0.5, 1.5);
        INFO("family ", name);
        CHECK(audit.pass);
        CHECK(audit.lambda_direction.pass);
        CHECK(audit.separation.pass);
        CHECK(audit.anchor.pass);
        CHECK(audit.lambda_direction.property == "lambda_direction_profile");
        CHECK(audit.separation.property == "separation_f_null");
        CHECK(audit.anchor.property == "anchor_value_one");
    }
}

TEST_CASE("assumption audit handles the w5 crossing at x = 1") {
    const LossModel exp1 = LossModel::exponential(1.0);
    const auto audit = assumption_audit(WeightFamily::w5(), exp1, 0.5, 1.5);
    CHECK(audit.pass);
    CHECK(audit.lambda_direction.pass);  // mixed profile: direction flips at x = 1
    CHECK(audit.separation.pass);
    CHECK_FALSE(audit.separation.note.empty());  // names the crossing point
}

TEST_CASE("assumption audit reports the indicator overlap honestly") {
    const LossModel exp1 = LossModel::exponential(1.0);
    const auto audit = assumption_audit(WeightFamily::cte(), exp1, 0.5, 1.5);
    CHECK_FALSE(audit.pass);
    CHECK(audit.lambda_direction.pass);
    CHECK(audit.anchor.pass);
    CHECK_FALSE(audit.separation.pass);
    // Slices agree off (theta, lambda], mass F(0.5) + 1 - F(1.5) = 0.617.
    // The audit accumulates the mass of grid cells lying fully inside the
    // agreement set, so it can only undercount (boundary cells are dropped).
    const double agree = (1.0 - std::exp(-0.5)) + std::exp(-1.5);
    CHECK(audit.separation.worst_violation > 0.5);
    CHECK(audit.separation.worst_violation <= agree + 1e-12);
    CHECK(audit.separation.note ==
          "family does not claim separation; overlap is the known exception");
}

TEST_CASE("assumption audit works over empirical atoms") {
    const LossModel m = LossModel::empirical({1.0, 2.0, 3.0});
    const auto audit = assumption_audit(WeightFamily::esscher(), m, 0.5, 1.5);
    CHECK(audit.pass);

    const auto cte_audit = assumption_audit(WeightFamily::cte(), m, 1.5, 2.5);
    CHECK(cte_audit.lambda_direction.pass);
    // Slices 1{x > 1.5} and 1{x > 2.5} agree except on the atom at 2.
    CHECK(cte_audit.separation.worst_violation == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK_FALSE(cte_audit.separation.pass);
}

TEST_CASE("serial and parallel sweeps agree bit for bit") {
    const CheckReport a =
        mixed_partial_check(WeightFamily::w7(), {}, 1e-6, {}, ExecPolicy::Serial);
    const CheckReport b =
        mixed_partial_check(WeightFamily::w7(), {}, 1e-6, {}, ExecPolicy::Parallel);
    CHECK(a.worst_violation == b.worst_violation);
    CHECK(a.points_checked == b.points_checked);
    CHECK(a.pass == b.pass);
}
