#pragma once

#include <cstddef>
#include <vector>

#include "plind/rng.hpp"

namespace plind {

/// Parameter pair (theta, beta) of a Pseudo-Lindley law with density
///
///     f(x) = theta * (beta - 1 + theta*x) * exp(-theta*x) / beta,  x >= 0,
///
/// theta > 0, beta > 1. Invariants are enforced at construction, so every
/// evaluation routine can assume a valid pair.
class Params {
public:
    Params(double theta, double beta);

    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }

private:
    double theta_;
    double beta_;
};

/// Controls for the bisection-based quantile.
struct QuantileSettings {
    double abs_tolerance = 1e-12;  // on x
    int max_bracket_doublings = 128;
    int max_bisections = 200;
};

/// Which sampling mechanism to use where both are applicable.
enum class SamplerKind { inverse, mixture };

double pdf(const Params& p, double x) noexcept;
double log_pdf(const Params& p, double x) noexcept;

/// F(x) = 1 - (beta + theta*x) e^{-theta*x} / beta for x >= 0, else 0.
double cdf(const Params& p, double x) noexcept;

/// (beta + theta*x) e^{-theta*x} / beta for x >= 0, else 1. Computed
/// directly, so it stays accurate deep in the right tail where 1 - F
/// would cancel.
double survival(const Params& p, double x) noexcept;

/// Generalized inverse F^{-1}(u) = inf{x : F(x) >= u}, located by
/// bisection: an upper bracket grows by doubling from
/// max(1, mean + 40*sd) until it covers u, then the interval shrinks
/// until its half-width is below s.abs_tolerance.
///
/// Throws DomainError unless 0 < u < 1, ConvergenceError if either
/// iteration budget runs out.
double quantile(const Params& p, double u, const QuantileSettings& s = {});

/// E[X^k] = k! (beta + k) / (theta^k beta), k >= 1.
/// Throws DomainError for k < 1, OverflowError if the value is not
/// representable.
double raw_moment(const Params& p, int k);

double mean(const Params& p);
double variance(const Params& p);

/// n iid draws by quantile inversion of uniforms, X = F^{-1}(U).
std::vector<double> sample_inverse(const Params& p, RngStream r, std::size_t n,
                                   const QuantileSettings& s = {});

/// n iid draws from the exact two-component decomposition
///     f = ((beta-1)/beta) Exp(theta) + (1/beta) Gamma(2, theta),
/// i.e. -log(U)/theta with probability (beta-1)/beta, else
/// (-log(U1) - log(U2))/theta.
std::vector<double> sample_mixture(const Params& p, RngStream r, std::size_t n);

std::vector<double> sample(const Params& p, RngStream r, std::size_t n, SamplerKind kind,
                           const QuantileSettings& s = {});

/// Classical one-parameter Lindley density theta^2 (1+x) e^{-theta*x} / (1+theta);
/// the Pseudo-Lindley law reduces to it at beta = 1 + theta.
double lindley_pdf(double theta, double x);

} // namespace plind
