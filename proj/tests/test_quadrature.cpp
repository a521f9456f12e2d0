#include <doctest.h>

#include <cmath>

#include "wpremium/quadrature.hpp"

using namespace wpremium;

TEST_CASE("log_add combines magnitudes without overflow") {
    CHECK(log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
    CHECK(log_add(kNegInf, 1.5) == 1.5);
    CHECK(log_add(1.5, kNegInf) == 1.5);
    CHECK(log_add(kNegInf, kNegInf) == kNegInf);
    CHECK(log_add(kPosInf, 0.0) == kPosInf);
    // 1000 + log(1 + e^-1000): the small term is below double resolution.
    CHECK(log_add(1000.0, -1000.0) == doctest::Approx(1000.0));
}

TEST_CASE("log_sum equals repeated log_add") {
    const std::vector<double> v = {0.0, std::log(2.0), std::log(3.0), kNegInf};
    CHECK(log_sum(v) == doctest::Approx(std::log(6.0)));
    CHECK(log_sum({kNegInf, kNegInf}) == kNegInf);
}

TEST_CASE("log_expm1 is stable at both ends") {
    CHECK(log_expm1(1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
    CHECK(log_expm1(1.0) == doctest::Approx(std::log(std::exp(1.0) - 1.0)));
    CHECK(log_expm1(800.0) == doctest::Approx(800.0));  // e^{-800} invisible
    CHECK(log_expm1(0.0) == kNegInf);
    CHECK(log_expm1(-1.0) == kNegInf);
}

TEST_CASE("adaptive quadrature reproduces simple closed forms") {
    // integral of x^2 over [0, 1] = 1/3
    auto r = log_adaptive_integrate([](double x) { return 2.0 * std::log(x); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(std::exp(r.log_value) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(r.rel_error < 1e-8);
    CHECK(r.evals >= 15);

    // integral of e^{-x} over [0, 10] = 1 - e^{-10}
    auto s = log_adaptive_integrate([](double x) { return -x; }, 0.0, 10.0);
    CHECK(std::exp(s.log_value) == doctest::Approx(-std::expm1(-10.0)).epsilon(1e-10));
}

TEST_CASE("adaptive quadrature resolves a sharp peak") {
    // integral of e^{-1000 (x - 1/2)^2} over [0, 1]: the tails outside the
    // interval are below double resolution, so the value is sqrt(pi/1000).
    auto r = log_adaptive_integrate(
        [](double x) { return -1000.0 * (x - 0.5) * (x - 0.5); }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(std::exp(r.log_value) == doctest::Approx(0.05604991216397928).epsilon(1e-10));
}

TEST_CASE("quadrature works entirely in log scale") {
    // Integrand e^{1000}, constant: the linear-scale value overflows double,
    // the log-scale result is exactly 1000 + log(width).
    auto r = log_adaptive_integrate([](double) { return 1000.0; }, 0.0, 1.0);
    CHECK(r.log_value == doctest::Approx(1000.0).epsilon(1e-14));
    CHECK(std::isfinite(r.log_value));
}

TEST_CASE("vanishing and degenerate integrands are signalled, not thrown") {
    auto zero = log_adaptive_integrate([](double) { return kNegInf; }, 0.0, 1.0);
    CHECK(zero.log_value == kNegInf);

    auto empty = log_adaptive_integrate([](double) { return 0.0; }, 1.0, 1.0);
    CHECK(empty.log_value == kNegInf);  // zero-width interval
}

TEST_CASE("tight tolerance forces subdivision") {
    QuadratureOptions strict;
    strict.rel_tol = 1e-13;
    long evals_loose = 0, evals_strict = 0;
    {
        auto r = log_adaptive_integrate([](double x) { return std::log(x) * 0.5 - x; }, 0.0,
                                        40.0);
        evals_loose = r.evals;
    }
    {
        auto r = log_adaptive_integrate([](double x) { return std::log(x) * 0.5 - x; }, 0.0,
                                        40.0, strict);
        evals_strict = r.evals;
        CHECK(r.converged);
    }
    CHECK(evals_strict >= evals_loose);
}
