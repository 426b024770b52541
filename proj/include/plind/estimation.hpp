#pragma once

#include <cstddef>
#include <span>

namespace plind {

/// First two empirical moments of a data vector. The variance uses the
/// 1/n convention: S^2 = (1/n) sum (x_j - mean)^2.
struct SampleSummary {
    std::size_t n = 0;
    double mean = 0;
    double var = 0;
    double min = 0;
};

/// Method-of-moments estimates together with the intermediate quantities
/// they are built from:
///
///     eta_hat    = sqrt(mean^2 - var)
///     lambda_hat = mean*sqrt(2) - eta_hat
///     theta_hat  = sqrt(2) / lambda_hat
///     beta_hat   = lambda_hat / eta_hat
///
/// beta_in_range is false when beta_hat <= 1; the estimate is still
/// returned and the caller decides what to do with it.
struct ParamEstimate {
    double theta_hat = 0;
    double beta_hat = 0;
    double eta_hat = 0;
    double lambda_hat = 0;
    std::size_t n = 0;
    bool beta_in_range = false;
};

/// Throws DomainError on n < 2 or on any negative or non-finite value.
SampleSummary summarize(std::span<const double> data);

/// Throws DomainError when mean <= 0, DegenerateSample when
/// mean^2 <= var (the square root above would not exist).
ParamEstimate estimate_moments(const SampleSummary& s);

/// summarize followed by estimate_moments.
ParamEstimate fit(std::span<const double> data);

} // namespace plind
