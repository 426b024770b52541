#include "plind/inference.hpp"

#include <cmath>
#include <string>

#include "plind/errors.hpp"

namespace plind {
namespace {

CovarianceMatrix sigma_for(const ParamEstimate& e, const Hypothesis& h,
                           CovarianceAt at) {
    if (at == CovarianceAt::null) return covariance(Params(h.theta0, h.beta0));
    if (!(e.beta_hat > 1))
        throw DomainError("plug-in covariance needs beta_hat > 1, got " +
                          std::to_string(e.beta_hat));
    return covariance(Params(e.theta_hat, e.beta_hat));
}

void check_estimate(const ParamEstimate& e) {
    if (e.n < 2) throw DomainError("estimate carries no usable sample size");
}

std::optional<Decision> decide(double p_value, std::optional<double> level) {
    if (!level) return std::nullopt;
    if (!(*level > 0) || !(*level < 1))
        throw DomainError("nominal level must lie in (0,1), got " +
                          std::to_string(*level));
    return Decision{*level, p_value < *level};
}

} // namespace

double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0) || !(p < 1))
        throw DomainError("normal_quantile requires 0 < p < 1, got " +
                          std::to_string(p));
    double lo = -40;
    double hi = 40;
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = lo + (hi - lo) / 2;
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return lo + (hi - lo) / 2;
}

double chi2_2_sf(double t) {
    if (t < 0 || std::isnan(t))
        throw DomainError("chi2_2_sf requires t >= 0, got " + std::to_string(t));
    return std::exp(-t / 2);
}

TestResult wald_test(const ParamEstimate& e, const Hypothesis& h,
                     CovarianceAt sigma_at, std::optional<double> level) {
    if (h.which != TestTarget::theta_only && h.which != TestTarget::beta_only)
        throw DomainError("wald_test handles the marginal hypotheses; use "
                          "joint_wald_test for the joint one");
    check_estimate(e);
    const auto s = sigma_for(e, h, sigma_at);
    const bool on_theta = h.which == TestTarget::theta_only;
    const double var = on_theta ? s.s11 : s.s22;
    const double diff = on_theta ? e.theta_hat - h.theta0 : e.beta_hat - h.beta0;
    const double z = std::sqrt(static_cast<double>(e.n)) * diff / std::sqrt(var);
    const double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    TestResult out;
    out.statistic = z;
    out.reference = ReferenceDist::standard_normal;
    out.p_value = p;
    out.reject_at = decide(p, level);
    return out;
}

TestResult joint_wald_test(const ParamEstimate& e, const Hypothesis& h,
                           CovarianceAt sigma_at, std::optional<double> level) {
    if (h.which != TestTarget::joint)
        throw DomainError("joint_wald_test requires a joint hypothesis");
    check_estimate(e);
    const auto s = sigma_for(e, h, sigma_at);
    const double t = static_cast<double>(e.n) *
                     wald_quadratic(s, e.theta_hat - h.theta0, e.beta_hat - h.beta0);
    TestResult out;
    out.statistic = t;
    out.reference = ReferenceDist::chi_square_2;
    out.p_value = chi2_2_sf(t);
    out.reject_at = decide(out.p_value, level);
    return out;
}

double wald_quadratic(const CovarianceMatrix& sigma, double d1, double d2) {
    const double det = sigma.s11 * sigma.s22 - sigma.s12 * sigma.s12;
    if (!(det > 1e-12 * sigma.s11 * sigma.s22))
        throw SingularCovariance("covariance matrix is numerically singular "
                                 "(det = " + std::to_string(det) + ")");
    return (sigma.s22 * d1 * d1 - 2 * sigma.s12 * d1 * d2 + sigma.s11 * d2 * d2) / det;
}

ConfidenceIntervals confidence_intervals(const ParamEstimate& e, double level) {
    check_estimate(e);
    if (!(level > 0) || !(level < 1))
        throw DomainError("confidence level must lie in (0,1), got " +
                          std::to_string(level));
    if (!(e.beta_hat > 1))
        throw DomainError("plug-in covariance needs beta_hat > 1, got " +
                          std::to_string(e.beta_hat));
    const auto s = covariance(Params(e.theta_hat, e.beta_hat));
    const double z = normal_quantile((1 + level) / 2);
    const double n = static_cast<double>(e.n);
    ConfidenceIntervals ci;
    ci.level = level;
    const double wt = z * std::sqrt(s.s11 / n);
    const double wb = z * std::sqrt(s.s22 / n);
    ci.theta = {e.theta_hat - wt, e.theta_hat + wt};
    ci.beta = {e.beta_hat - wb, e.beta_hat + wb};
    return ci;
}

} // namespace plind
