#pragma once

// Adaptive Gauss-Kronrod (7-15) quadrature carried out in log scale.
//
// Integrands here are nonnegative (weight * density * power of x), and for
// exponential-family weights the values overflow double long before the
// integral itself stops being meaningful.  Every routine in this header
// therefore consumes log f(x) and produces log of the integral: each
// subinterval is summed with a local shift (largest node value), and
// subintervals combine through log-sum-exp, so nothing overflows until the
// final exp() by the caller -- and ratios of integrals never need it at all.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace wpremium {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    if (a == kPosInf) return kPosInf;
    return a + std::log1p(std::exp(b - a));
}

// log(sum_i e^{v_i}) with a max shift.
inline double log_sum(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf || m == kPosInf) return m;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - m);
    return m + std::log(acc);
}

// log(e^x - 1) for x > 0, stable for both tiny and huge x.
inline double log_expm1(double x) {
    if (x <= 0.0) return kNegInf;
    if (x > 36.0) return x + std::log1p(-std::exp(-x));  // e^{-x} below 2^-52
    return std::log(std::expm1(x));
}

struct QuadratureOptions {
    double rel_tol = 1e-10;          // target relative error per integral
    int max_subdivisions = 2000;     // adaptive interval budget
    int max_doublings = 48;          // tail-extension budget for [0, inf) integrals
    double tail_rel_tol = 1e-10;     // stop extending once a doubling adds less than this
    double growth_factor = 1e-6;     // a doubling "grows" if it multiplies the total by > 1+this
    int divergence_run = 5;          // consecutive growing doublings before declaring divergence
};

struct LogIntegral {
    double log_value = kNegInf;  // log of the integral
    double rel_error = 0.0;      // estimated relative error (linear scale)
    bool converged = true;
    long evals = 0;
};

namespace detail {

// QUADPACK 15-point Kronrod abscissae (positive half) and weights, with the
// embedded 7-point Gauss weights on nodes 1, 3, 5, 7.
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Interval {
    double a, b;
    double log_value;
    double log_error;
};

template <typename LogF>
Interval gk15_log(LogF&& log_f, double a, double b, long& evals) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double g[15];
    for (int i = 0; i < 7; ++i) {
        g[2 * i] = log_f(mid - half * kXgk[i]);
        g[2 * i + 1] = log_f(mid + half * kXgk[i]);
    }
    g[14] = log_f(mid);
    evals += 15;

    double shift = kNegInf;
    for (double v : g) shift = std::max(shift, v);
    if (shift == kNegInf) return {a, b, kNegInf, kNegInf};
    if (shift == kPosInf || std::isnan(shift)) return {a, b, kPosInf, kPosInf};

    double fk = 0.0;
    for (int i = 0; i < 7; ++i)
        fk += kWgk[i] * (std::exp(g[2 * i] - shift) + std::exp(g[2 * i + 1] - shift));
    fk += kWgk[7] * std::exp(g[14] - shift);

    double fg = 0.0;
    for (int j = 0; j < 3; ++j) {
        const int i = 2 * j + 1;  // Gauss nodes sit at Kronrod indices 1, 3, 5
        fg += kWg[j] * (std::exp(g[2 * i] - shift) + std::exp(g[2 * i + 1] - shift));
    }
    fg += kWg[3] * std::exp(g[14] - shift);

    const double diff = std::abs(fk - fg);
    // Round-off floor: below ~50 ulp the Kronrod-Gauss gap is noise.
    const double floor_ = 50.0 * std::numeric_limits<double>::epsilon() * fk;
    const double log_half = std::log(half);
    Interval r{a, b, 0.0, 0.0};
    r.log_value = log_half + shift + std::log(fk);
    r.log_error = log_half + shift + std::log(std::max(diff, floor_));
    return r;
}

}  // namespace detail

// Adaptive integration of exp(log_f) over the finite interval [a, b].
template <typename LogF>
LogIntegral log_adaptive_integrate(LogF&& log_f, double a, double b,
                                   const QuadratureOptions& opt = {}) {
    LogIntegral out;
    if (!(b > a)) return out;

    std::vector<detail::Interval> ivs;
    ivs.push_back(detail::gk15_log(log_f, a, b, out.evals));

    const double log_rel = std::log(opt.rel_tol);
    for (;;) {
        double total = kNegInf, err = kNegInf;
        {
            double mt = kNegInf, me = kNegInf;
            for (const auto& iv : ivs) {
                mt = std::max(mt, iv.log_value);
                me = std::max(me, iv.log_error);
            }
            if (mt == kNegInf || mt == kPosInf || std::isnan(mt)) {
                out.log_value = mt;
                out.rel_error = 0.0;
                return out;
            }
            double at = 0.0, ae = 0.0;
            for (const auto& iv : ivs) {
                at += std::exp(iv.log_value - mt);
                if (me > kNegInf) ae += std::exp(iv.log_error - me);
            }
            total = mt + std::log(at);
            err = (me == kNegInf) ? kNegInf : me + std::log(ae);
        }

        const bool done = err == kNegInf || err - total <= log_rel || err < -690.0;
        if (done || (int)ivs.size() >= opt.max_subdivisions) {
            out.log_value = total;
            out.rel_error = err == kNegInf ? 0.0 : std::exp(err - total);
            out.converged = done;
            return out;
        }

        // Bisect the interval with the largest error (first such index, so the
        // refinement order -- and hence the floating-point result -- is
        // deterministic).
        std::size_t worst = 0;
        for (std::size_t i = 1; i < ivs.size(); ++i)
            if (ivs[i].log_error > ivs[worst].log_error) worst = i;
        const double wa = ivs[worst].a, wb = ivs[worst].b;
        const double wm = 0.5 * (wa + wb);
        if (!(wm > wa && wm < wb)) {  // interval collapsed to rounding width
            out.log_value = total;
            out.rel_error = std::exp(err - total);
            out.converged = false;
            return out;
        }
        ivs[worst] = detail::gk15_log(log_f, wa, wm, out.evals);
        ivs.push_back(detail::gk15_log(log_f, wm, wb, out.evals));
    }
}

}  // namespace wpremium
