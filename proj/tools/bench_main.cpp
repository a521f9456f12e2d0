// Timing comparison of the serial and OpenMP execution policies on the three
// grid-sweep kernels (mixed-partial sweep, premium curve, inequality sweep).
// Both policies fill per-point arrays and reduce serially in index order, so
// the outputs are required to be bit-identical; this tool asserts that while
// measuring the speedup.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "wpremium/parallel.hpp"
#include "wpremium/premium.hpp"
#include "wpremium/verifier.hpp"

namespace {

using namespace wpremium;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Timing {
    double serial_s = 0.0;
    double parallel_s = 0.0;
    bool identical = false;
};

void print_row(const char* kernel, const Timing& t) {
    std::printf("%-22s %10.3f ms %12.3f ms %8.2fx   %s\n", kernel, 1e3 * t.serial_s,
                1e3 * t.parallel_s, t.serial_s / t.parallel_s,
                t.identical ? "identical" : "MISMATCH");
}

template <typename Fn>
Timing time_policies(Fn&& run) {
    Timing t;
    auto t0 = clock_type::now();
    const auto serial = run(ExecPolicy::Serial);
    t.serial_s = seconds_since(t0);
    t0 = clock_type::now();
    const auto parallel = run(ExecPolicy::Parallel);
    t.parallel_s = seconds_since(t0);
    t.identical = serial == parallel;
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    int n = 192;
    if (argc > 1) {
        char* end = nullptr;
        const long v = std::strtol(argv[1], &end, 10);
        if (end == argv[1] || *end != '\0' || v < 2 || v > 4096) {
            std::printf("usage: %s [grid-size]\n", argv[0]);
            std::printf("  grid-size: points per axis, 2..4096 (default 192)\n");
            return std::string(argv[1]) == "--help" || std::string(argv[1]) == "-h" ? 0 : 2;
        }
        n = int(v);
    }
    std::printf("grid %dx%d, %d threads available\n", n, n,
                max_threads(ExecPolicy::Parallel));
    std::printf("%-22s %13s %15s %9s\n", "kernel", "serial", "parallel", "speedup");

    bool all_identical = true;

    {
        GridSpec grid;
        grid.lambda_points = grid.x_points = n;
        const auto t = time_policies([&](ExecPolicy policy) {
            const CheckReport r = mixed_partial_check(WeightFamily::w7(), grid, 1e-6, {},
                                                      policy);
            return std::pair(r.worst_violation, r.points_checked);
        });
        print_row("mixed_partial w7", t);
        all_identical = all_identical && t.identical;
    }

    {
        const std::vector<double> lambdas = log_spaced(0.05, 20.0, std::max(8, n / 4));
        const LossModel model = LossModel::lognormal(0.0, 0.5);
        const auto t = time_policies([&](ExecPolicy policy) {
            std::vector<std::pair<double, double>> out;
            for (const CurvePoint& p :
                 premium_curve(model, WeightFamily::kamps(), lambdas, {}, policy))
                out.emplace_back(p.lambda, p.ok ? p.result.premium : -1.0);
            return out;
        });
        print_row("curve kamps/lognormal", t);
        all_identical = all_identical && t.identical;
    }

    {
        const std::vector<double> axis = log_spaced(1e-4, 1e3, 4 * n);
        const auto t = time_policies([&](ExecPolicy policy) {
            const CheckReport r = sign_surface_positivity_check(axis, axis, policy);
            return std::pair(r.worst_violation, r.points_checked);
        });
        print_row("inequality sweep", t);
        all_identical = all_identical && t.identical;
    }

    if (!all_identical) {
        std::printf("FAIL: policies disagree\n");
        return 1;
    }
    return 0;
}
