#include "plind/asymptotics.hpp"

#include <cmath>
#include <string>

#include "plind/errors.hpp"
#include "plind/estimation.hpp"

namespace plind {

AsymptoticCoefficients coefficients(const Params& p) {
    const double t = p.theta();
    const double b = p.beta();
    const double rt2 = std::sqrt(2.0);
    AsymptoticCoefficients k;
    k.m = (b + 1) / (t * b);
    k.m2 = 2 * (b + 2) / (t * t * b);
    k.sigma2 = (b * b + 2 * b - 1) / ((t * b) * (t * b));
    k.eta = rt2 / (t * b);
    k.lambda = rt2 / t;
    const double eta3 = k.eta * k.eta * k.eta;
    k.a1 = 2 / (k.eta * k.lambda);
    k.b1 = -1 / (rt2 * k.eta * k.lambda * k.lambda);
    k.a2 = -k.lambda * (k.eta * rt2 + 2 * k.m) / eta3;
    k.b2 = (k.lambda + k.eta) / (2 * eta3);
    return k;
}

double eval_influence(const AsymptoticCoefficients& c, int which, double x) {
    if (which == 1) return c.a1 * x + c.b1 * x * x;
    if (which == 2) return c.a2 * x + c.b2 * x * x;
    throw DomainError("influence index must be 1 or 2, got " + std::to_string(which));
}

CovarianceMatrix covariance(const Params& p) {
    const auto k = coefficients(p);
    const double t = p.theta();
    const double b = p.beta();
    const double m3 = 6 * (b + 3) / (t * t * t * b);
    const double m4 = 24 * (b + 4) / (t * t * t * t * b);
    CovarianceMatrix s;
    s.gamma1 = k.a1 * k.m + k.b1 * k.m2;
    s.gamma2 = k.a2 * k.m + k.b2 * k.m2;
    s.tau1_sq = k.a1 * k.a1 * k.m2 + 2 * k.a1 * k.b1 * m3 + k.b1 * k.b1 * m4;
    s.tau2_sq = k.a2 * k.a2 * k.m2 + 2 * k.a2 * k.b2 * m3 + k.b2 * k.b2 * m4;
    s.c = k.a1 * k.a2 * k.m2 + (k.a1 * k.b2 + k.b1 * k.a2) * m3 + k.b1 * k.b2 * m4;
    s.s11 = s.tau1_sq - s.gamma1 * s.gamma1;
    s.s22 = s.tau2_sq - s.gamma2 * s.gamma2;
    s.s12 = s.c - s.gamma1 * s.gamma2;
    return s;
}

CovarianceMatrix covariance_mc_oracle(const Params& p, std::size_t draws,
                                      RngStream r) {
    if (draws < 10'000)
        throw DomainError("covariance_mc_oracle needs at least 10000 draws, got " +
                          std::to_string(draws));
    const auto k = coefficients(p);
    CounterRng rng(r);
    const double t = p.theta();
    const double exp_weight = (p.beta() - 1) / p.beta();
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        const double u = rng.next_uniform01();
        double e = -std::log(rng.next_uniform01());
        if (u >= exp_weight) e -= std::log(rng.next_uniform01());
        const double x = e / t;
        const double h1 = k.a1 * x + k.b1 * x * x;
        const double h2 = k.a2 * x + k.b2 * x * x;
        s1 += h1;
        s2 += h2;
        s11 += h1 * h1;
        s22 += h2 * h2;
        s12 += h1 * h2;
    }
    const double n = static_cast<double>(draws);
    CovarianceMatrix out;
    out.gamma1 = s1 / n;
    out.gamma2 = s2 / n;
    out.tau1_sq = s11 / n;
    out.tau2_sq = s22 / n;
    out.c = s12 / n;
    out.s11 = out.tau1_sq - out.gamma1 * out.gamma1;
    out.s22 = out.tau2_sq - out.gamma2 * out.gamma2;
    out.s12 = out.c - out.gamma1 * out.gamma2;
    return out;
}

EstimatorSamplingResult estimator_sampling_mc(const Params& p, std::size_t n,
                                              std::size_t reps, RngStream r,
                                              SamplerKind kind) {
    if (n < 50)
        throw DomainError("estimator_sampling_mc needs n >= 50, got " + std::to_string(n));
    if (reps < 100)
        throw DomainError("estimator_sampling_mc needs reps >= 100, got " +
                          std::to_string(reps));
    double st = 0, sb = 0, stt = 0, sbb = 0, stb = 0;
    std::size_t valid = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        const auto xs = sample(p, r.derived(i), n, kind);
        ParamEstimate e;
        try {
            e = fit(xs);
        } catch (const DegenerateSample&) {
            continue;
        }
        ++valid;
        st += e.theta_hat;
        sb += e.beta_hat;
        stt += e.theta_hat * e.theta_hat;
        sbb += e.beta_hat * e.beta_hat;
        stb += e.theta_hat * e.beta_hat;
    }
    EstimatorSamplingResult out;
    out.valid_replications = valid;
    out.degenerate_count = reps - valid;
    if (valid >= 2) {
        const double v = static_cast<double>(valid);
        const double scale = static_cast<double>(n);
        const double mt = st / v;
        const double mb = sb / v;
        out.s11 = scale * (stt / v - mt * mt) * v / (v - 1);
        out.s22 = scale * (sbb / v - mb * mb) * v / (v - 1);
        out.s12 = scale * (stb / v - mt * mb) * v / (v - 1);
    }
    return out;
}

} // namespace plind
