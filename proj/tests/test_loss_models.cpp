#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "wpremium/errors.hpp"
#include "wpremium/loss_model.hpp"

using namespace wpremium;

TEST_CASE("exponential model closed forms") {
    const LossModel m = LossModel::exponential(1.0);
    CHECK(m.kind() == LossModel::Kind::Exponential);
    CHECK(m.mean() == doctest::Approx(1.0));
    CHECK(m.finite_mean());
    CHECK(m.cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.quantile(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(m.log_density(1.0) == doctest::Approx(-1.0));
    CHECK(m.has_increasing_cdf());
    CHECK(m.support_lower() == 0.0);
    CHECK(m.support_upper() == kPosInf);
    // truncation anchor is the 1 - 1e-7 quantile (up to the rounding of
    // 1 - (1 - 1e-7) inside the quantile evaluation)
    CHECK(m.truncation_anchor() == doctest::Approx(-std::log(1e-7)).epsilon(1e-9));

    const LossModel half = LossModel::exponential(2.0);
    CHECK(half.mean() == doctest::Approx(0.5));
}

TEST_CASE("gamma model closed forms") {
    const LossModel m = LossModel::gamma(2.0, 1.0);
    CHECK(m.mean() == doctest::Approx(2.0));
    // density x e^{-x} at x = 1
    CHECK(m.log_density(1.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(m.cdf(m.quantile(0.3)) == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(m.has_increasing_cdf());
}

TEST_CASE("uniform model closed forms") {
    const LossModel m = LossModel::uniform(0.0, 2.0);
    CHECK(m.mean() == doctest::Approx(1.0));
    CHECK(m.cdf(0.5) == doctest::Approx(0.25));
    CHECK(m.cdf(-1.0) == 0.0);
    CHECK(m.cdf(3.0) == 1.0);
    CHECK(m.quantile(0.25) == doctest::Approx(0.5));
    CHECK(m.log_density(1.0) == doctest::Approx(std::log(0.5)));
    CHECK(m.support_upper() == 2.0);
    CHECK_FALSE(m.has_increasing_cdf());  // flat beyond the upper endpoint
}

TEST_CASE("pareto model closed forms and divergent mean") {
    const LossModel m = LossModel::pareto(2.0, 1.0);
    CHECK(m.mean() == doctest::Approx(2.0));
    CHECK(m.cdf(2.0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(m.quantile(0.75) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.support_lower() == 1.0);
    CHECK_FALSE(m.has_increasing_cdf());  // flat below xm

    const LossModel heavy = LossModel::pareto(1.0, 1.0);
    CHECK_FALSE(heavy.finite_mean());
    CHECK_THROWS_AS(heavy.mean(), DivergentExpectation);
}

TEST_CASE("lognormal model closed forms") {
    const LossModel m = LossModel::lognormal(0.0, 0.5);
    CHECK(m.mean() == doctest::Approx(1.133148453066826316829).epsilon(1e-15));
    CHECK(m.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-12));  // median e^mu
    CHECK(m.has_increasing_cdf());
}

TEST_CASE("empirical model: exact sums, right-continuous cdf, order statistics") {
    const LossModel m = LossModel::empirical({3.0, 1.0, 2.0});  // sorted on construction
    CHECK(m.is_empirical());
    const std::vector<double> want = {1.0, 2.0, 3.0};
    CHECK(m.samples() == want);
    CHECK(m.mean() == doctest::Approx(2.0));
    CHECK_FALSE(m.has_increasing_cdf());

    // cdf jumps at atoms and is right-continuous there
    CHECK(m.cdf(0.999999) == 0.0);
    CHECK(m.cdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(m.cdf(1.5) == doctest::Approx(1.0 / 3.0));
    CHECK(m.cdf(2.0) == doctest::Approx(2.0 / 3.0));
    CHECK(m.cdf(3.0) == 1.0);
    CHECK(m.cdf(99.0) == 1.0);

    // quantile(p) returns the ceil(p n)-th order statistic
    CHECK(m.quantile(0.34) == 2.0);
    CHECK(m.quantile(0.5) == 2.0);
    CHECK(m.quantile(0.9) == 3.0);
    CHECK(m.quantile(0.01) == 1.0);

    CHECK_THROWS_AS(m.log_density(1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::exponential(1.0).samples(), ValidationError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(LossModel::exponential(0.0), ValidationError);
    CHECK_THROWS_AS(LossModel::exponential(-1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::lognormal(0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(LossModel::pareto(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::gamma(2.0, -1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::uniform(2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::uniform(-1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(LossModel::empirical({}), ValidationError);
    CHECK_THROWS_AS(LossModel::empirical({1.0, -2.0}), ValidationError);
    CHECK_THROWS_AS(LossModel::exponential(1.0).quantile(0.0), ValidationError);
    CHECK_THROWS_AS(LossModel::exponential(1.0).quantile(1.0), ValidationError);
}

TEST_CASE("sample file loader: comments, blanks, and error lines") {
    testsupport::ScratchFile good(
        "# header comment\n"
        "1.5\n"
        "\n"
        "2.5   # trailing comment\n"
        "0.25\n");
    const std::vector<double> xs = load_empirical_samples(good.path());
    const std::vector<double> want = {1.5, 2.5, 0.25};  // loader keeps file order
    CHECK(xs == want);

    const LossModel m = LossModel::empirical_from_file(good.path());
    CHECK(m.samples().front() == 0.25);  // model sorts

    testsupport::ScratchFile bad_value("1.0\nnot_a_number\n");
    CHECK_THROWS_AS(load_empirical_samples(bad_value.path()), FileError);
    try {
        load_empirical_samples(bad_value.path());
    } catch (const FileError& e) {
        CHECK(e.line == 2);
    }

    testsupport::ScratchFile negative("1.0\n-3.0\n");
    CHECK_THROWS_AS(load_empirical_samples(negative.path()), FileError);

    testsupport::ScratchFile empty("# nothing here\n");
    CHECK_THROWS_AS(load_empirical_samples(empty.path()), FileError);

    CHECK_THROWS_AS(load_empirical_samples("definitely_missing_file.txt"), FileError);
    try {
        load_empirical_samples("definitely_missing_file.txt");
    } catch (const FileError& e) {
        CHECK(e.line == 0);
    }
}

TEST_CASE("log_expect integrates against the density") {
    const LossModel m = LossModel::exponential(1.0);

    // E[X] = 1
    auto ex = m.log_expect([](double x) { return std::log(x); });
    CHECK(ex.status == LogExpectStatus::Ok);
    CHECK(std::exp(ex.log_value) == doctest::Approx(1.0).epsilon(1e-9));

    // E[e^{X/2}] = 2 for Exp(1)
    auto mgf = m.log_expect([](double x) { return 0.5 * x; });
    CHECK(mgf.status == LogExpectStatus::Ok);
    CHECK(std::exp(mgf.log_value) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(mgf.rel_error < 1e-8);

    // Empirical models sum exactly: E[X] over {1,2,3} = 2
    const LossModel e = LossModel::empirical({1.0, 2.0, 3.0});
    auto es = e.log_expect([](double x) { return std::log(x); });
    CHECK(std::exp(es.log_value) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("log_expect classifies divergence: lognormal has no mgf") {
    const LossModel m = LossModel::lognormal(0.0, 0.5);
    auto r = m.log_expect([](double x) { return 0.5 * x; });  // E[e^{x/2}] = inf
    CHECK(r.status == LogExpectStatus::Divergent);
}

TEST_CASE("log_expect honours the lower cutoff for indicator integrands") {
    const LossModel m = LossModel::exponential(1.0);
    // E[1{X > 2}] = e^{-2}, integrand restricted to [2, inf)
    auto r = m.log_expect([](double) { return 0.0; }, {}, 2.0);
    CHECK(r.status == LogExpectStatus::Ok);
    CHECK(std::exp(r.log_value) == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
}

TEST_CASE("bounded-range integral and linear-scale expectation") {
    const LossModel m = LossModel::exponential(1.0);

    // integral of x e^{-x} over [0, 1] = 1 - 2/e
    auto r = m.log_integral_range([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(std::exp(r.log_value) ==
          doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-10));

    // E[X^2] = 2 for Exp(1)
    auto s = m.expect_transform([](double x) { return x * x; });
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(s.evals > 0);

    CHECK_THROWS_AS(LossModel::empirical({1.0}).log_integral_range(
                        [](double x) { return std::log(x); }, 0.0, 1.0),
                    ValidationError);
}

TEST_CASE("describe names the distribution") {
    CHECK(LossModel::exponential(1.0).describe() == "exp:1");
    CHECK(LossModel::gamma(2.0, 1.0).describe() == "gamma:2:1");
    CHECK(LossModel::empirical({1.0, 2.0}).describe() == "empirical[n=2]");
}
