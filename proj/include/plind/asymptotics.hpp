#pragma once

#include <cstddef>

#include "plind/distribution.hpp"
#include "plind/rng.hpp"

namespace plind {

/// Moments of X and the coefficients of the influence polynomials
/// H1(x) = a1*x + b1*x^2 (driving theta_hat) and H2(x) = a2*x + b2*x^2
/// (driving beta_hat):
///
///     eta    = sqrt(m^2 - sigma2) = sqrt(2)/(theta*beta)
///     lambda = m*sqrt(2) - eta    = sqrt(2)/theta
///     a1 = 2/(eta*lambda)                     b1 = -1/(sqrt(2)*eta*lambda^2)
///     a2 = -lambda*(eta*sqrt(2) + 2m)/eta^3   b2 = (lambda + eta)/(2*eta^3)
struct AsymptoticCoefficients {
    double m = 0;        // E X
    double m2 = 0;       // E X^2
    double sigma2 = 0;   // Var X
    double eta = 0;
    double lambda = 0;
    double a1 = 0;
    double b1 = 0;
    double a2 = 0;
    double b2 = 0;
};

/// Asymptotic covariance of sqrt(n)*(theta_hat - theta, beta_hat - beta)
/// with its building blocks kept visible:
///
///     gamma_i  = E H_i(X),   tau_i^2 = E H_i(X)^2,   c = E H_1(X) H_2(X)
///     s11 = tau1_sq - gamma1^2
///     s22 = tau2_sq - gamma2^2
///     s12 = c - gamma1*gamma2
struct CovarianceMatrix {
    double s11 = 0;
    double s22 = 0;
    double s12 = 0;
    double gamma1 = 0;
    double gamma2 = 0;
    double tau1_sq = 0;
    double tau2_sq = 0;
    double c = 0;
};

AsymptoticCoefficients coefficients(const Params& p);

/// H_which(x); which must be 1 or 2, anything else is a DomainError.
double eval_influence(const AsymptoticCoefficients& c, int which, double x);

CovarianceMatrix covariance(const Params& p);

/// Brute-force check of covariance(): draws X iid (mixture sampler) and
/// returns the empirical moments of (H1(X), H2(X)) arranged exactly like
/// the closed form — gamma_i are sample means, tau_i^2 and c raw second
/// moments, s_ij the centered (co)variances. Throws DomainError when
/// draws < 10'000; below that the comparison is meaningless.
CovarianceMatrix covariance_mc_oracle(const Params& p, std::size_t draws,
                                      RngStream r);

/// n * sample covariance of (theta_hat, beta_hat) over independent fits.
struct EstimatorSamplingResult {
    double s11 = 0;
    double s22 = 0;
    double s12 = 0;
    std::size_t valid_replications = 0;
    std::size_t degenerate_count = 0;
};

/// Simulates reps samples of size n, fits each by the method of moments,
/// and returns the scaled empirical covariance over the non-degenerate
/// replications (degenerate ones are counted, never thrown). Replication
/// i runs on stream r.derived(i), so any execution order gives the same
/// result. Throws DomainError when n < 50 or reps < 100.
EstimatorSamplingResult estimator_sampling_mc(const Params& p, std::size_t n,
                                              std::size_t reps, RngStream r,
                                              SamplerKind kind = SamplerKind::mixture);

} // namespace plind
