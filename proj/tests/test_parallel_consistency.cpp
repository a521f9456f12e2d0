#include <doctest.h>

#include <vector>

#include "wpremium/parallel.hpp"
#include "wpremium/premium.hpp"
#include "wpremium/verifier.hpp"

using namespace wpremium;

// The parallel kernels write into preallocated per-point slots and reduce in
// index order, so every result below must agree with the serial reference
// implementation bit for bit, not just within tolerance.

namespace {

bool same_bits(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b && std::signbit(a) == std::signbit(b);
}

bool same_report(const CheckReport& a, const CheckReport& b) {
    if (!same_bits(a.worst_violation, b.worst_violation)) return false;
    if (a.pass != b.pass) return false;
    if (a.points_checked != b.points_checked) return false;
    if (a.points_skipped != b.points_skipped) return false;
    if (a.worst_location.size() != b.worst_location.size()) return false;
    for (std::size_t i = 0; i < a.worst_location.size(); ++i) {
        if (a.worst_location[i].first != b.worst_location[i].first) return false;
        if (!same_bits(a.worst_location[i].second, b.worst_location[i].second))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("max_threads honours the policy") {
    CHECK(max_threads(ExecPolicy::Serial) == 1);
    CHECK(max_threads(ExecPolicy::Parallel) >= 1);
}

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<int> hits(257, 0);
    parallel_for(257, ExecPolicy::Parallel, [&](std::ptrdiff_t i) { hits[std::size_t(i)]++; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("premium curves are identical under both policies") {
    const LossModel m = LossModel::exponential(1.0);
    const WeightFamily f = WeightFamily::esscher();
    std::vector<double> lambdas;
    for (int i = 0; i < 24; ++i) lambdas.push_back(0.05 + 0.05 * i);  // crosses 1.0

    const auto serial = premium_curve(m, f, lambdas, {}, ExecPolicy::Serial);
    const auto parallel = premium_curve(m, f, lambdas, {}, ExecPolicy::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].ok == parallel[i].ok);
        CHECK(serial[i].error == parallel[i].error);
        if (serial[i].ok) {
            CHECK(same_bits(serial[i].result.premium, parallel[i].result.premium));
            CHECK(same_bits(serial[i].result.abs_error_estimate,
                            parallel[i].result.abs_error_estimate));
        }
    }
}

TEST_CASE("verifier sweeps are identical under both policies") {
    for (const auto& f : {WeightFamily::esscher(), WeightFamily::w5(), WeightFamily::w7()}) {
        CHECK(same_report(mixed_partial_check(f, {}, 1e-6, {}, ExecPolicy::Serial),
                          mixed_partial_check(f, {}, 1e-6, {}, ExecPolicy::Parallel)));
        CHECK(same_report(lattice_check(f, {}, 1e-9, 200, 42, ExecPolicy::Serial),
                          lattice_check(f, {}, 1e-9, 200, 42, ExecPolicy::Parallel)));
    }

    const std::vector<double> axis = log_spaced(1e-3, 1e2, 80);
    CHECK(same_report(rel_error_bound_check(axis, axis, ExecPolicy::Serial),
                      rel_error_bound_check(axis, axis, ExecPolicy::Parallel)));
    CHECK(same_report(sign_surface_positivity_check(axis, axis, ExecPolicy::Serial),
                      sign_surface_positivity_check(axis, axis, ExecPolicy::Parallel)));
    CHECK(same_report(w4_surface_positivity_check(axis, axis, ExecPolicy::Serial),
                      w4_surface_positivity_check(axis, axis, ExecPolicy::Parallel)));
}
