#include "plind/simulation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "plind/errors.hpp"
#include "plind/estimation.hpp"

namespace plind {
namespace {

constexpr const char* kCsvHeader =
    "n,mve_theta,mve_beta,rmse_theta,rmse_beta,"
    "reject_theta,reject_beta,reject_joint,degenerate";

std::string sampler_name(SamplerKind k) {
    return k == SamplerKind::inverse ? "inverse" : "mixture";
}

SamplerKind sampler_from(const std::string& s) {
    if (s == "inverse") return SamplerKind::inverse;
    if (s == "mixture") return SamplerKind::mixture;
    throw ConfigError("unknown sampler name: " + s);
}

std::string sigma_name(CovarianceAt a) {
    return a == CovarianceAt::null ? "null" : "plug-in";
}

CovarianceAt sigma_from(const std::string& s) {
    if (s == "null") return CovarianceAt::null;
    if (s == "plug-in") return CovarianceAt::plug_in;
    throw ConfigError("unknown sigma evaluation point: " + s);
}

void validate(const SimConfig& c) {
    if (!(std::isfinite(c.theta) && c.theta > 0))
        throw ConfigError("theta must be finite and > 0");
    if (!(std::isfinite(c.beta) && c.beta > 1))
        throw ConfigError("beta must be finite and > 1");
    if (c.sizes.empty()) throw ConfigError("at least one sample size is required");
    for (std::size_t n : c.sizes)
        if (n < 10)
            throw ConfigError("sample sizes must be >= 10, got " + std::to_string(n));
    if (c.replications < 100)
        throw ConfigError("replications must be >= 100, got " +
                          std::to_string(c.replications));
    if (!(c.nominal_level > 0) || !(c.nominal_level < 1))
        throw ConfigError("nominal level must lie in (0,1)");
}

// Sample variance (1/(v-1)) of the values accumulated as sum and sum of
// squares; NaN when fewer than two values.
double spread(double sum, double sumsq, double v) {
    if (v < 2) return std::numeric_limits<double>::quiet_NaN();
    return (sumsq / v - (sum / v) * (sum / v)) * v / (v - 1);
}

SimRow aggregate(std::size_t n, double truth_theta, double truth_beta, double level,
                 const ReplicationResult* first, std::size_t reps) {
    SimRow row;
    row.n = n;
    double st = 0, sb = 0, stt = 0, sbb = 0;   // estimates
    double qt = 0, qb = 0, qtt = 0, qbb = 0;   // squared deviations
    double rt = 0, rb = 0, rj = 0;             // rejection counts
    double v = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        const ReplicationResult& r = first[i];
        if (r.degenerate) {
            ++row.degenerate_count;
            continue;
        }
        ++v;
        st += r.theta_hat;
        sb += r.beta_hat;
        stt += r.theta_hat * r.theta_hat;
        sbb += r.beta_hat * r.beta_hat;
        const double dt = (r.theta_hat - truth_theta) * (r.theta_hat - truth_theta);
        const double db = (r.beta_hat - truth_beta) * (r.beta_hat - truth_beta);
        qt += dt;
        qb += db;
        qtt += dt * dt;
        qbb += db * db;
        rt += r.p_theta < level;
        rb += r.p_beta < level;
        rj += r.p_joint < level;
    }
    if (v == 0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.mve_theta = row.mve_beta = row.rmse_theta = row.rmse_beta = nan;
        row.reject_rate_theta = row.reject_rate_beta = row.reject_rate_joint = nan;
        row.se_mve_theta = row.se_mve_beta = row.se_rmse_theta = row.se_rmse_beta = nan;
        row.se_reject_theta = row.se_reject_beta = row.se_reject_joint = nan;
        return row;
    }
    row.mve_theta = st / v;
    row.mve_beta = sb / v;
    row.rmse_theta = std::sqrt(qt / v);
    row.rmse_beta = std::sqrt(qb / v);
    row.reject_rate_theta = rt / v;
    row.reject_rate_beta = rb / v;
    row.reject_rate_joint = rj / v;
    row.se_mve_theta = std::sqrt(spread(st, stt, v) / v);
    row.se_mve_beta = std::sqrt(spread(sb, sbb, v) / v);
    // rmse = sqrt(mean q); delta method: se = sd(q) / (2 rmse sqrt(v))
    row.se_rmse_theta = std::sqrt(spread(qt, qtt, v) / v) / (2 * row.rmse_theta);
    row.se_rmse_beta = std::sqrt(spread(qb, qbb, v) / v) / (2 * row.rmse_beta);
    auto binomial_se = [v](double rate) { return std::sqrt(rate * (1 - rate) / v); };
    row.se_reject_theta = binomial_se(row.reject_rate_theta);
    row.se_reject_beta = binomial_se(row.reject_rate_beta);
    row.se_reject_joint = binomial_se(row.reject_rate_joint);
    return row;
}

std::string csv_table(const SimReport& rep) {
    std::string out = kCsvHeader;
    out += '\n';
    char buf[512];
    for (const SimRow& r : rep.rows) {
        std::snprintf(buf, sizeof buf,
                      "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu\n",
                      r.n, r.mve_theta, r.mve_beta, r.rmse_theta, r.rmse_beta,
                      r.reject_rate_theta, r.reject_rate_beta, r.reject_rate_joint,
                      r.degenerate_count);
        out += buf;
    }
    return out;
}

nlohmann::json row_json(const SimRow& r) {
    return {
        {"n", r.n},
        {"mve_theta", r.mve_theta},
        {"mve_beta", r.mve_beta},
        {"rmse_theta", r.rmse_theta},
        {"rmse_beta", r.rmse_beta},
        {"reject_theta", r.reject_rate_theta},
        {"reject_beta", r.reject_rate_beta},
        {"reject_joint", r.reject_rate_joint},
        {"degenerate", r.degenerate_count},
        {"se_mve_theta", r.se_mve_theta},
        {"se_mve_beta", r.se_mve_beta},
        {"se_rmse_theta", r.se_rmse_theta},
        {"se_rmse_beta", r.se_rmse_beta},
        {"se_reject_theta", r.se_reject_theta},
        {"se_reject_beta", r.se_reject_beta},
        {"se_reject_joint", r.se_reject_joint},
    };
}

SimRow row_from_json(const nlohmann::json& j) {
    SimRow r;
    r.n = j.at("n").get<std::size_t>();
    r.mve_theta = j.at("mve_theta").get<double>();
    r.mve_beta = j.at("mve_beta").get<double>();
    r.rmse_theta = j.at("rmse_theta").get<double>();
    r.rmse_beta = j.at("rmse_beta").get<double>();
    r.reject_rate_theta = j.at("reject_theta").get<double>();
    r.reject_rate_beta = j.at("reject_beta").get<double>();
    r.reject_rate_joint = j.at("reject_joint").get<double>();
    r.degenerate_count = j.at("degenerate").get<std::size_t>();
    r.se_mve_theta = j.at("se_mve_theta").get<double>();
    r.se_mve_beta = j.at("se_mve_beta").get<double>();
    r.se_rmse_theta = j.at("se_rmse_theta").get<double>();
    r.se_rmse_beta = j.at("se_rmse_beta").get<double>();
    r.se_reject_theta = j.at("se_reject_theta").get<double>();
    r.se_reject_beta = j.at("se_reject_beta").get<double>();
    r.se_reject_joint = j.at("se_reject_joint").get<double>();
    return r;
}

std::string json_table(const SimReport& rep) {
    nlohmann::json j;
    j["config"] = {
        {"theta", rep.config.theta},
        {"beta", rep.config.beta},
        {"sizes", rep.config.sizes},
        {"replications", rep.config.replications},
        {"nominal_level", rep.config.nominal_level},
        {"seed", rep.config.seed},
        {"sampler", sampler_name(rep.config.sampler)},
        {"sigma_at", sigma_name(rep.config.sigma_at)},
    };
    j["wall_time_s"] = rep.wall_time_s;
    j["rows"] = nlohmann::json::array();
    for (const SimRow& r : rep.rows) j["rows"].push_back(row_json(r));
    // (n, value) pairs, ready for plotting the two convergence panels
    for (const char* key : {"mve_theta", "mve_beta", "rmse_theta", "rmse_beta"}) {
        auto series = nlohmann::json::array();
        for (const auto& row : j["rows"])
            series.push_back({row.at("n"), row.at(key)});
        j["series"][key] = series;
    }
    return j.dump(2) + "\n";
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& field, std::size_t lineno) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": not a number: '" + field + "'");
    }
}

std::size_t parse_count(const std::string& field, std::size_t lineno) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(field, &used);
        if (used != field.size() || v < 0) throw std::invalid_argument(field);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(lineno) +
                          ": not a count: '" + field + "'");
    }
}

SimReport parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty table");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader)
        throw ConfigError("unexpected csv header: '" + line + "'");
    SimReport rep;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 9)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 9 fields, got " +
                              std::to_string(fields.size()));
        SimRow r;
        r.n = parse_count(fields[0], lineno);
        r.mve_theta = parse_double(fields[1], lineno);
        r.mve_beta = parse_double(fields[2], lineno);
        r.rmse_theta = parse_double(fields[3], lineno);
        r.rmse_beta = parse_double(fields[4], lineno);
        r.reject_rate_theta = parse_double(fields[5], lineno);
        r.reject_rate_beta = parse_double(fields[6], lineno);
        r.reject_rate_joint = parse_double(fields[7], lineno);
        r.degenerate_count = parse_count(fields[8], lineno);
        rep.rows.push_back(r);
    }
    return rep;
}

SimReport parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed json table: ") + e.what());
    }
    try {
        SimReport rep;
        const auto& c = j.at("config");
        rep.config.theta = c.at("theta").get<double>();
        rep.config.beta = c.at("beta").get<double>();
        rep.config.sizes = c.at("sizes").get<std::vector<std::size_t>>();
        rep.config.replications = c.at("replications").get<std::size_t>();
        rep.config.nominal_level = c.at("nominal_level").get<double>();
        rep.config.seed = c.at("seed").get<std::uint64_t>();
        rep.config.sampler = sampler_from(c.at("sampler").get<std::string>());
        rep.config.sigma_at = sigma_from(c.at("sigma_at").get<std::string>());
        rep.wall_time_s = j.at("wall_time_s").get<double>();
        for (const auto& row : j.at("rows")) rep.rows.push_back(row_from_json(row));
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("json table misses a field: ") + e.what());
    }
}

} // namespace

ReplicationResult run_replication(const Params& p, std::size_t n, RngStream r,
                                  double level, CovarianceAt sigma_at,
                                  SamplerKind kind) {
    if (n < 10) throw ConfigError("replication size must be >= 10, got " +
                                  std::to_string(n));
    if (!(level > 0) || !(level < 1))
        throw ConfigError("nominal level must lie in (0,1)");
    ReplicationResult out;
    const auto xs = sample(p, r, n, kind);
    ParamEstimate e;
    try {
        e = fit(xs);
    } catch (const DegenerateSample&) {
        out.degenerate = true;
        return out;
    }
    out.theta_hat = e.theta_hat;
    out.beta_hat = e.beta_hat;
    if (sigma_at == CovarianceAt::plug_in && !e.beta_in_range) {
        out.degenerate = true;
        return out;
    }
    try {
        Hypothesis h{p.theta(), p.beta(), TestTarget::theta_only};
        out.p_theta = wald_test(e, h, sigma_at).p_value;
        h.which = TestTarget::beta_only;
        out.p_beta = wald_test(e, h, sigma_at).p_value;
        h.which = TestTarget::joint;
        out.p_joint = joint_wald_test(e, h, sigma_at).p_value;
    } catch (const SingularCovariance&) {
        out.degenerate = true;
    }
    return out;
}

SimReport run_experiment(const SimConfig& c, unsigned threads) {
    validate(c);
    const auto start = std::chrono::steady_clock::now();
    const Params p(c.theta, c.beta);
    const std::size_t reps = c.replications;
    std::vector<ReplicationResult> results(c.sizes.size() * reps);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() noexcept {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= results.size()) return;
            results[i] = run_replication(p, c.sizes[i / reps], RngStream{c.seed, i},
                                         c.nominal_level, c.sigma_at, c.sampler);
        }
    };
    unsigned pool_size = threads ? threads : std::thread::hardware_concurrency();
    if (pool_size < 1) pool_size = 1;
    if (pool_size == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(pool_size);
        for (unsigned t = 0; t < pool_size; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    SimReport rep;
    rep.config = c;
    rep.rows.reserve(c.sizes.size());
    for (std::size_t k = 0; k < c.sizes.size(); ++k)
        rep.rows.push_back(aggregate(c.sizes[k], c.theta, c.beta, c.nominal_level,
                                     results.data() + k * reps, reps));
    rep.wall_time_s = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string emit_table(const SimReport& rep, TableFormat format) {
    return format == TableFormat::csv ? csv_table(rep) : json_table(rep);
}

SimReport parse_table(const std::string& text, TableFormat format) {
    return format == TableFormat::csv ? parse_csv(text) : parse_json(text);
}

} // namespace plind
