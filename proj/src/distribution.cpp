#include "plind/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "plind/errors.hpp"

namespace plind {

Params::Params(double theta, double beta) : theta_(theta), beta_(beta) {
    if (!std::isfinite(theta) || theta <= 0)
        throw DomainError("theta must be finite and > 0, got " + std::to_string(theta));
    if (!std::isfinite(beta) || beta <= 1)
        throw DomainError("beta must be finite and > 1, got " + std::to_string(beta));
}

double pdf(const Params& p, double x) noexcept {
    if (x < 0) return 0;
    const double t = p.theta();
    const double b = p.beta();
    return t * (b - 1 + t * x) * std::exp(-t * x) / b;
}

double log_pdf(const Params& p, double x) noexcept {
    if (x < 0) return -std::numeric_limits<double>::infinity();
    const double t = p.theta();
    const double b = p.beta();
    return std::log(t) + std::log(b - 1 + t * x) - t * x - std::log(b);
}

double cdf(const Params& p, double x) noexcept {
    if (x < 0) return 0;
    return 1 - survival(p, x);
}

double survival(const Params& p, double x) noexcept {
    if (x < 0) return 1;
    const double t = p.theta();
    const double b = p.beta();
    return (b + t * x) * std::exp(-t * x) / b;
}

double quantile(const Params& p, double u, const QuantileSettings& s) {
    if (!(u > 0) || !(u < 1))
        throw DomainError("quantile requires 0 < u < 1, got " + std::to_string(u));
    const double su = 1 - u;
    double hi = std::max(1.0, mean(p) + 40 * std::sqrt(variance(p)));
    int doublings = 0;
    while (survival(p, hi) > su) {
        if (++doublings > s.max_bracket_doublings)
            throw ConvergenceError("quantile bracket still open after " +
                                   std::to_string(s.max_bracket_doublings) + " doublings");
        hi *= 2;
    }
    double lo = 0;
    int steps = 0;
    while ((hi - lo) / 2 > s.abs_tolerance) {
        if (++steps > s.max_bisections)
            throw ConvergenceError("quantile bisection exceeded " +
                                   std::to_string(s.max_bisections) + " steps");
        const double mid = lo + (hi - lo) / 2;
        if (survival(p, mid) <= su)
            hi = mid;
        else
            lo = mid;
    }
    return lo + (hi - lo) / 2;
}

double raw_moment(const Params& p, int k) {
    if (k < 1)
        throw DomainError("raw_moment requires k >= 1, got " + std::to_string(k));
    double kfact = 1;
    for (int j = 2; j <= k; ++j) kfact *= j;
    const double t = p.theta();
    const double b = p.beta();
    const double value = kfact * (b + k) / (std::pow(t, k) * b);
    if (!std::isfinite(value))
        throw OverflowError("moment of order " + std::to_string(k) +
                            " is not representable");
    return value;
}

double mean(const Params& p) {
    const double t = p.theta();
    const double b = p.beta();
    return (b + 1) / (t * b);
}

double variance(const Params& p) {
    const double t = p.theta();
    const double b = p.beta();
    return (b * b + 2 * b - 1) / ((t * b) * (t * b));
}

std::vector<double> sample_inverse(const Params& p, RngStream r, std::size_t n,
                                   const QuantileSettings& s) {
    std::vector<double> out(n);
    CounterRng rng(r);
    for (double& x : out) x = quantile(p, rng.next_uniform01(), s);
    return out;
}

std::vector<double> sample_mixture(const Params& p, RngStream r, std::size_t n) {
    std::vector<double> out(n);
    CounterRng rng(r);
    const double t = p.theta();
    const double exp_weight = (p.beta() - 1) / p.beta();
    for (double& x : out) {
        const double u = rng.next_uniform01();
        double e = -std::log(rng.next_uniform01());
        if (u >= exp_weight) e -= std::log(rng.next_uniform01());
        x = e / t;
    }
    return out;
}

std::vector<double> sample(const Params& p, RngStream r, std::size_t n,
                           SamplerKind kind, const QuantileSettings& s) {
    return kind == SamplerKind::inverse ? sample_inverse(p, r, n, s)
                                        : sample_mixture(p, r, n);
}

double lindley_pdf(double theta, double x) {
    if (!std::isfinite(theta) || theta <= 0)
        throw DomainError("lindley_pdf requires theta > 0, got " + std::to_string(theta));
    if (x < 0) return 0;
    return theta * theta * (1 + x) * std::exp(-theta * x) / (1 + theta);
}

} // namespace plind
