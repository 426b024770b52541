#pragma once

#include <optional>

#include "plind/asymptotics.hpp"
#include "plind/estimation.hpp"

namespace plind {

/// Standard normal cdf via erfc; accurate to machine precision.
double normal_cdf(double z) noexcept;

/// Inverse of normal_cdf on (0,1), bisected to 1e-10.
/// Throws DomainError for p outside (0,1).
double normal_quantile(double p);

/// Survival function of chi-square with 2 degrees of freedom: exp(-t/2).
/// Throws DomainError for t < 0.
double chi2_2_sf(double t);

/// Where test statistics take their covariance matrix: at the
/// hypothesized parameters, or plugged in at the fitted ones.
enum class CovarianceAt { null, plug_in };

/// Which law a statistic is referred to.
enum class ReferenceDist { standard_normal, chi_square_2 };

enum class TestTarget { theta_only, beta_only, joint };

/// Two-sided null hypothesis (theta0, beta0); `which` selects one
/// marginal test or the joint one.
struct Hypothesis {
    double theta0 = 0;
    double beta0 = 0;
    TestTarget which = TestTarget::joint;
};

struct Decision {
    double level = 0;
    bool reject = false;
};

struct TestResult {
    double statistic = 0;
    ReferenceDist reference = ReferenceDist::standard_normal;
    double p_value = 1;
    std::optional<Decision> reject_at;  // set when a nominal level was given
};

/// Marginal Wald test: Z = sqrt(n)*(theta_hat - theta0)/sqrt(s11) (or the
/// beta analogue with s22), p = 2*(1 - Phi(|Z|)). Sigma is evaluated at
/// (theta0, beta0) under CovarianceAt::null, at the fitted pair under
/// plug_in — the latter requires beta_hat > 1, else DomainError.
/// h.which must be theta_only or beta_only.
TestResult wald_test(const ParamEstimate& e, const Hypothesis& h,
                     CovarianceAt sigma_at = CovarianceAt::null,
                     std::optional<double> level = std::nullopt);

/// Joint Wald test: T = n * d' Sigma^{-1} d with
/// d = (theta_hat - theta0, beta_hat - beta0), referred to chi-square(2).
/// Requires h.which == joint.
TestResult joint_wald_test(const ParamEstimate& e, const Hypothesis& h,
                           CovarianceAt sigma_at = CovarianceAt::null,
                           std::optional<double> level = std::nullopt);

/// The quadratic form d' Sigma^{-1} d, with the 2x2 inverse in closed
/// form. Throws SingularCovariance when det <= 1e-12 * s11 * s22.
double wald_quadratic(const CovarianceMatrix& sigma, double d1, double d2);

struct ConfidenceInterval {
    double lower = 0;
    double upper = 0;
};

struct ConfidenceIntervals {
    ConfidenceInterval theta;
    ConfidenceInterval beta;
    double level = 0;
};

/// estimate +- z_{(1+level)/2} * sqrt(s_ii/n) for both parameters, with
/// Sigma plugged in at the fitted pair. Throws DomainError when
/// beta_hat <= 1 or level lies outside (0,1).
ConfidenceIntervals confidence_intervals(const ParamEstimate& e, double level);

} // namespace plind
