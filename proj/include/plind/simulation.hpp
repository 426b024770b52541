#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "plind/distribution.hpp"
#include "plind/inference.hpp"
#include "plind/rng.hpp"

namespace plind {

struct SimConfig {
    double theta = 2;
    double beta = 2;
    std::vector<std::size_t> sizes;    // nonempty, each >= 10
    std::size_t replications = 1000;   // >= 100
    double nominal_level = 0.05;
    std::uint64_t seed = 0;
    SamplerKind sampler = SamplerKind::inverse;
    CovarianceAt sigma_at = CovarianceAt::null;
};

/// One replication: the fit plus the three Wald p-values against the true
/// parameters, or a degenerate marker when the moment equations have no
/// solution (or plug-in covariance was requested but beta_hat <= 1).
struct ReplicationResult {
    bool degenerate = false;
    double theta_hat = 0;
    double beta_hat = 0;
    double p_theta = 1;
    double p_beta = 1;
    double p_joint = 1;
};

/// Aggregates over the valid replications at one sample size. The se_*
/// fields are Monte Carlo standard errors of the aggregate on the same
/// row: se of a mean for mve, delta-method se for rmse, binomial se for
/// the rejection rates.
struct SimRow {
    std::size_t n = 0;
    double mve_theta = 0;
    double mve_beta = 0;
    double rmse_theta = 0;
    double rmse_beta = 0;
    double reject_rate_theta = 0;
    double reject_rate_beta = 0;
    double reject_rate_joint = 0;
    std::size_t degenerate_count = 0;
    double se_mve_theta = 0;
    double se_mve_beta = 0;
    double se_rmse_theta = 0;
    double se_rmse_beta = 0;
    double se_reject_theta = 0;
    double se_reject_beta = 0;
    double se_reject_joint = 0;
};

struct SimReport {
    SimConfig config;
    std::vector<SimRow> rows;   // one per requested size, in input order
    double wall_time_s = 0;
};

/// Draws one sample on the given stream, fits it, and runs the three Wald
/// tests against H0 = p. DegenerateSample — and, under plug-in
/// covariance, beta_hat <= 1 or a singular plug-in matrix — becomes a
/// marker; no exception escapes a well-formed call. Throws ConfigError
/// when n < 10 or level lies outside (0,1).
ReplicationResult run_replication(const Params& p, std::size_t n, RngStream r,
                                  double level, CovarianceAt sigma_at,
                                  SamplerKind kind = SamplerKind::inverse);

/// Full grid. Replication r of size index k runs on stream
/// {seed, k*replications + r}; workers claim tasks from a shared atomic
/// counter into a preallocated table and aggregation walks it in
/// replication order, so the rows are bit-identical for every thread
/// count. threads == 0 means hardware_concurrency. Throws ConfigError on
/// an invalid config.
SimReport run_experiment(const SimConfig& c, unsigned threads = 0);

enum class TableFormat { csv, json };

/// csv: exactly the columns
/// n,mve_theta,mve_beta,rmse_theta,rmse_beta,reject_theta,reject_beta,reject_joint,degenerate.
/// json: the rows with their standard errors, the config echo, the wall
/// time, and (n, value) series for the mve/rmse curves. Doubles are
/// written so they survive parse_table round trips.
std::string emit_table(const SimReport& rep, TableFormat format);

/// Inverse of emit_table. csv restores the tabled row fields (standard
/// errors and config are not in the csv); json restores the full report.
/// Throws ConfigError on malformed input.
SimReport parse_table(const std::string& text, TableFormat format);

} // namespace plind
