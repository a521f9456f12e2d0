#include "wpremium/loss_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/lognormal.hpp>

#include "wpremium/errors.hpp"

namespace wpremium {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

boost::math::gamma_distribution<double> boost_gamma(double shape, double scale) {
    return boost::math::gamma_distribution<double>(shape, scale);
}

boost::math::lognormal_distribution<double> boost_lognormal(double mu, double sigma) {
    return boost::math::lognormal_distribution<double>(mu, sigma);
}

constexpr double kTailQuantile = 1e-7;  // truncation anchor is quantile(1 - this)

}  // namespace

LossModel LossModel::exponential(double rate) {
    require(rate > 0.0 && std::isfinite(rate), "exponential: rate must be positive");
    return LossModel(Kind::Exponential, rate, 0.0);
}

LossModel LossModel::lognormal(double mu, double sigma) {
    require(std::isfinite(mu), "lognormal: mu must be finite");
    require(sigma > 0.0 && std::isfinite(sigma), "lognormal: sigma must be positive");
    return LossModel(Kind::LogNormal, mu, sigma);
}

LossModel LossModel::pareto(double alpha, double xm) {
    require(alpha > 0.0 && std::isfinite(alpha), "pareto: alpha must be positive");
    require(xm > 0.0 && std::isfinite(xm), "pareto: xm must be positive");
    return LossModel(Kind::Pareto, alpha, xm);
}

LossModel LossModel::gamma(double shape, double scale) {
    require(shape > 0.0 && std::isfinite(shape), "gamma: shape must be positive");
    require(scale > 0.0 && std::isfinite(scale), "gamma: scale must be positive");
    return LossModel(Kind::Gamma, shape, scale);
}

LossModel LossModel::uniform(double a, double b) {
    require(a >= 0.0 && std::isfinite(a), "uniform: lower endpoint must be nonnegative");
    require(b > a && std::isfinite(b), "uniform: upper endpoint must exceed the lower");
    return LossModel(Kind::Uniform, a, b);
}

LossModel::LossModel(std::vector<double> samples) : kind_(Kind::Empirical) {
    require(!samples.empty(), "empirical: sample set must be nonempty");
    for (double x : samples)
        require(x > 0.0 && std::isfinite(x), "empirical: samples must be positive and finite");
    std::sort(samples.begin(), samples.end());
    samples_ = std::move(samples);
}

LossModel LossModel::empirical(std::vector<double> samples) {
    return LossModel(std::move(samples));
}

LossModel LossModel::empirical_from_file(const std::string& path) {
    return LossModel(load_empirical_samples(path));
}

std::string LossModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Exponential: os << "exp:" << p1_; break;
        case Kind::LogNormal: os << "lognormal:" << p1_ << ":" << p2_; break;
        case Kind::Pareto: os << "pareto:" << p1_ << ":" << p2_; break;
        case Kind::Gamma: os << "gamma:" << p1_ << ":" << p2_; break;
        case Kind::Uniform: os << "uniform:" << p1_ << ":" << p2_; break;
        case Kind::Empirical: os << "empirical[n=" << samples_.size() << "]"; break;
    }
    return os.str();
}

double LossModel::cdf(double x) const {
    switch (kind_) {
        case Kind::Exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
        case Kind::LogNormal:
            return x <= 0.0 ? 0.0 : boost::math::cdf(boost_lognormal(p1_, p2_), x);
        case Kind::Pareto:
            return x <= p2_ ? 0.0 : -std::expm1(p1_ * std::log(p2_ / x));
        case Kind::Gamma:
            return x <= 0.0 ? 0.0 : boost::math::cdf(boost_gamma(p1_, p2_), x);
        case Kind::Uniform:
            if (x <= p1_) return 0.0;
            if (x >= p2_) return 1.0;
            return (x - p1_) / (p2_ - p1_);
        case Kind::Empirical: {
            const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
            return double(it - samples_.begin()) / double(samples_.size());
        }
    }
    return 0.0;
}

double LossModel::log_density(double x) const {
    switch (kind_) {
        case Kind::Exponential:
            return x < 0.0 ? kNegInf : std::log(p1_) - p1_ * x;
        case Kind::LogNormal: {
            if (x <= 0.0) return kNegInf;
            const double z = (std::log(x) - p1_) / p2_;
            return -std::log(x) - std::log(p2_) - 0.9189385332046727 - 0.5 * z * z;
        }
        case Kind::Pareto:
            if (x < p2_) return kNegInf;
            return std::log(p1_) + p1_ * std::log(p2_) - (p1_ + 1.0) * std::log(x);
        case Kind::Gamma: {
            if (x <= 0.0) return kNegInf;
            return (p1_ - 1.0) * std::log(x) - x / p2_ - std::lgamma(p1_) -
                   p1_ * std::log(p2_);
        }
        case Kind::Uniform:
            return (x < p1_ || x > p2_) ? kNegInf : -std::log(p2_ - p1_);
        case Kind::Empirical:
            throw ValidationError("log_density: empirical models have no density");
    }
    return kNegInf;
}

double LossModel::quantile(double p) const {
    require(p > 0.0 && p < 1.0, "quantile: p must lie in (0, 1)");
    switch (kind_) {
        case Kind::Exponential:
            return -std::log1p(-p) / p1_;
        case Kind::LogNormal:
            return boost::math::quantile(boost_lognormal(p1_, p2_), p);
        case Kind::Pareto:
            return p2_ * std::pow(1.0 - p, -1.0 / p1_);
        case Kind::Gamma:
            return boost::math::quantile(boost_gamma(p1_, p2_), p);
        case Kind::Uniform:
            return p1_ + p * (p2_ - p1_);
        case Kind::Empirical: {
            const std::size_t n = samples_.size();
            std::size_t idx = (std::size_t)std::ceil(p * double(n));
            if (idx == 0) idx = 1;
            if (idx > n) idx = n;
            return samples_[idx - 1];
        }
    }
    return 0.0;
}

double LossModel::mean() const {
    switch (kind_) {
        case Kind::Exponential:
            return 1.0 / p1_;
        case Kind::LogNormal:
            return std::exp(p1_ + 0.5 * p2_ * p2_);
        case Kind::Pareto:
            if (p1_ <= 1.0)
                throw DivergentExpectation("mean: Pareto with alpha <= 1 has infinite mean");
            return p1_ * p2_ / (p1_ - 1.0);
        case Kind::Gamma:
            return p1_ * p2_;
        case Kind::Uniform:
            return 0.5 * (p1_ + p2_);
        case Kind::Empirical: {
            double s = 0.0;
            for (double x : samples_) s += x;  // ascending order: deterministic
            return s / double(samples_.size());
        }
    }
    return 0.0;
}

bool LossModel::finite_mean() const {
    return kind_ != Kind::Pareto || p1_ > 1.0;
}

bool LossModel::has_increasing_cdf() const {
    switch (kind_) {
        case Kind::Exponential:
        case Kind::LogNormal:
        case Kind::Gamma:
            return true;
        default:
            return false;
    }
}

double LossModel::max_exponential_moment_rate() const {
    switch (kind_) {
        case Kind::Exponential: return p1_;
        case Kind::Gamma: return 1.0 / p2_;
        case Kind::LogNormal:
        case Kind::Pareto: return 0.0;
        case Kind::Uniform:
        case Kind::Empirical: return kPosInf;
    }
    return kPosInf;
}

double LossModel::support_lower() const {
    switch (kind_) {
        case Kind::Pareto: return p2_;
        case Kind::Uniform: return p1_;
        case Kind::Empirical: return 0.0;
        default: return 0.0;
    }
}

double LossModel::support_upper() const {
    switch (kind_) {
        case Kind::Uniform: return p2_;
        case Kind::Empirical: return samples_.back();
        default: return kPosInf;
    }
}

double LossModel::truncation_anchor() const {
    if (kind_ == Kind::Uniform) return p2_;
    if (kind_ == Kind::Empirical) return samples_.back();
    return quantile(1.0 - kTailQuantile);
}

const std::vector<double>& LossModel::samples() const {
    if (kind_ != Kind::Empirical)
        throw ValidationError("samples: only empirical models carry samples");
    return samples_;
}

LogExpectation LossModel::log_expect(const std::function<double(double)>& log_phi,
                                     const QuadratureOptions& opts,
                                     double lower_cutoff) const {
    LogExpectation out;

    if (kind_ == Kind::Empirical) {
        // Exact log-sum-exp over the atoms, ascending index order.
        double shift = kNegInf;
        for (double x : samples_)
            if (x > lower_cutoff) shift = std::max(shift, log_phi(x));
        if (shift == kNegInf) {
            out.status = LogExpectStatus::Zero;
            return out;
        }
        if (shift == kPosInf || std::isnan(shift)) {
            out.status = LogExpectStatus::Divergent;
            return out;
        }
        double acc = 0.0;
        for (double x : samples_)
            if (x > lower_cutoff) acc += std::exp(log_phi(x) - shift);
        out.log_value = shift + std::log(acc) - std::log(double(samples_.size()));
        out.truncation = samples_.back();
        out.evals = (long)samples_.size();
        return out;
    }

    const auto integrand = [&](double x) { return log_phi(x) + log_density(x); };

    double lo = std::max(support_lower(), lower_cutoff);
    const double hi = support_upper();

    if (std::isfinite(hi)) {  // bounded support: single adaptive pass
        if (lo >= hi) {
            out.status = LogExpectStatus::Zero;
            return out;
        }
        const LogIntegral r = log_adaptive_integrate(integrand, lo, hi, opts);
        out.evals = r.evals;
        out.truncation = hi;
        if (std::isnan(r.log_value) || r.log_value == kPosInf) {
            out.status = LogExpectStatus::Divergent;
        } else if (!r.converged) {
            out.status = LogExpectStatus::QuadratureFail;
        } else if (r.log_value == kNegInf) {
            out.status = LogExpectStatus::Zero;
        } else {
            out.log_value = r.log_value;
            out.rel_error = r.rel_error;
        }
        return out;
    }

    // Unbounded support: integrate [lo, T], then keep doubling T.  A doubling
    // that contributes less than tail_rel_tol (relative) ends the ladder; a
    // run of divergence_run doublings each growing the total by more than
    // (1 + growth_factor) classifies the expectation as divergent.
    double t_hi = truncation_anchor();
    if (t_hi <= lo) t_hi = 2.0 * lo + 1.0;

    double cum = kNegInf;
    double err = kNegInf;
    int grow_run = 0;
    double seg_lo = lo;
    double prev_seg = kNegInf;
    const double log_growth = std::log1p(opts.growth_factor);
    const double log_tail = std::log(opts.tail_rel_tol);
    // A convergent regular tail decays at least geometrically under doubling
    // (factor 2^{1-a} for an x^{-a} integrand, a > 1), while a divergent one
    // contributes non-shrinking segments.  Segments decaying faster than this
    // factor are never counted as evidence of divergence, no matter how many
    // doublings the ladder still needs to meet tail_rel_tol.
    const double log_decay = std::log(0.66);

    for (int k = 0; k <= opts.max_doublings; ++k) {
        const LogIntegral seg = log_adaptive_integrate(integrand, seg_lo, t_hi, opts);
        out.evals += seg.evals;
        out.truncation = t_hi;
        if (std::isnan(seg.log_value) || seg.log_value == kPosInf) {
            out.status = LogExpectStatus::Divergent;
            return out;
        }
        if (!seg.converged) {
            out.status = LogExpectStatus::QuadratureFail;
            return out;
        }

        const double cum_new = log_add(cum, seg.log_value);
        if (cum > kNegInf && cum_new > kNegInf) {
            const bool grew = cum_new - cum > log_growth;
            const bool not_decaying =
                prev_seg == kNegInf || seg.log_value >= prev_seg + log_decay;
            if (grew && not_decaying)
                ++grow_run;
            else
                grow_run = 0;
            if (grow_run >= opts.divergence_run) {
                out.status = LogExpectStatus::Divergent;
                return out;
            }
        }
        prev_seg = seg.log_value;
        if (seg.log_value > kNegInf)
            err = log_add(err, seg.log_value + std::log(std::max(seg.rel_error, 1e-300)));

        const bool tail_done =
            cum > kNegInf &&
            (seg.log_value == kNegInf || seg.log_value - cum_new <= log_tail);
        cum = cum_new;
        if (tail_done) {
            if (cum == kNegInf) {
                out.status = LogExpectStatus::Zero;
            } else {
                out.log_value = cum;
                out.rel_error = err == kNegInf ? 0.0 : std::exp(err - cum);
            }
            return out;
        }
        seg_lo = t_hi;
        t_hi *= 2.0;
    }
    out.status = LogExpectStatus::QuadratureFail;
    return out;
}

LogIntegral LossModel::log_integral_range(const std::function<double(double)>& log_phi,
                                          double a, double b,
                                          const QuadratureOptions& opts) const {
    if (kind_ == Kind::Empirical)
        throw ValidationError("log_integral_range: not defined for empirical models");
    const auto integrand = [&](double x) { return log_phi(x) + log_density(x); };
    const double lo = std::max(a, support_lower());
    const double hi = std::min(b, support_upper());
    if (lo >= hi) return {};
    return log_adaptive_integrate(integrand, lo, hi, opts);
}

ExpectationResult LossModel::expect_transform(const std::function<double(double)>& phi,
                                              const QuadratureOptions& opts) const {
    ExpectationResult out;
    if (kind_ == Kind::Empirical) {
        // Exact sums in ascending sample order; bit-for-bit reproducible.
        double s = 0.0, sabs = 0.0;
        for (double x : samples_) {
            const double v = phi(x);
            s += v;
            sabs += std::abs(v);
        }
        out.value = s / double(samples_.size());
        out.abs_error = sabs / double(samples_.size()) *
                        std::numeric_limits<double>::epsilon() * double(samples_.size());
        out.truncation = samples_.back();
        out.evals = (long)samples_.size();
        return out;
    }

    const auto log_phi = [&](double x) {
        const double v = phi(x);
        if (v < 0.0)
            throw ValidationError("expect_transform: phi must be nonnegative");
        return v == 0.0 ? kNegInf : std::log(v);
    };
    const LogExpectation r = log_expect(log_phi, opts);
    switch (r.status) {
        case LogExpectStatus::Divergent:
            throw DivergentExpectation("expect_transform: truncated integral keeps growing (" +
                                       describe() + ")");
        case LogExpectStatus::QuadratureFail:
            throw QuadratureFailure("expect_transform: error estimate above tolerance (" +
                                    describe() + ")");
        case LogExpectStatus::Zero:
            out.value = 0.0;
            out.abs_error = 0.0;
            break;
        case LogExpectStatus::Ok:
            out.value = std::exp(r.log_value);
            out.abs_error = out.value * r.rel_error;
            break;
    }
    out.truncation = r.truncation;
    out.evals = r.evals;
    return out;
}

std::vector<double> load_empirical_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open sample file: " + path);

    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;  // blank or comment-only line
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);

        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end == token.c_str() || *end != '\0')
            throw FileError(path + ":" + std::to_string(lineno) +
                                ": not a decimal number: '" + token + "'",
                            lineno);
        if (!(v > 0.0) || !std::isfinite(v))
            throw FileError(path + ":" + std::to_string(lineno) +
                                ": samples must be positive, got " + token,
                            lineno);
        out.push_back(v);
    }
    if (out.empty()) throw FileError(path + ": no samples found");
    return out;
}

}  // namespace wpremium
