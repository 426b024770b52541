#include "plind/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plind/errors.hpp"

namespace plind {

SampleSummary summarize(std::span<const double> data) {
    if (data.size() < 2)
        throw DomainError("need at least 2 observations, got " +
                          std::to_string(data.size()));
    double sum = 0;
    double lowest = data.front();
    std::size_t pos = 0;
    for (double x : data) {
        ++pos;
        if (!std::isfinite(x) || x < 0)
            throw DomainError("observation " + std::to_string(pos) +
                              " is negative or not finite");
        sum += x;
        lowest = std::min(lowest, x);
    }
    const double n = static_cast<double>(data.size());
    const double mean = sum / n;
    double ss = 0;
    for (double x : data) {
        const double d = x - mean;
        ss += d * d;
    }
    return {data.size(), mean, ss / n, lowest};
}

ParamEstimate estimate_moments(const SampleSummary& s) {
    if (!std::isfinite(s.mean) || !std::isfinite(s.var) || s.var < 0)
        throw DomainError("summary moments must be finite with var >= 0");
    if (!(s.mean > 0))
        throw DomainError("sample mean must be positive, got " +
                          std::to_string(s.mean));
    const double disc = s.mean * s.mean - s.var;
    if (!(disc > 0))
        throw DegenerateSample("mean^2 <= variance (mean = " + std::to_string(s.mean) +
                               ", var = " + std::to_string(s.var) +
                               "): the moment estimators do not exist");
    ParamEstimate e;
    e.eta_hat = std::sqrt(disc);
    e.lambda_hat = s.mean * std::sqrt(2.0) - e.eta_hat;
    e.theta_hat = std::sqrt(2.0) / e.lambda_hat;
    e.beta_hat = e.lambda_hat / e.eta_hat;
    e.n = s.n;
    e.beta_in_range = e.beta_hat > 1;
    return e;
}

ParamEstimate fit(std::span<const double> data) {
    return estimate_moments(summarize(data));
}

} // namespace plind
