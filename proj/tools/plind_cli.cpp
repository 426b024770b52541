#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plind/asymptotics.hpp"
#include "plind/distribution.hpp"
#include "plind/errors.hpp"
#include "plind/estimation.hpp"
#include "plind/inference.hpp"
#include "plind/simulation.hpp"

namespace {

// exit-code contract: 0 success, 2 usage or domain error, 3 degenerate
// data, 4 validation failure

std::string fmt(double v, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, v);
    return buf;
}

std::vector<double> read_data_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw plind::DomainError("cannot open data file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        const std::string field = line.substr(begin, end - begin + 1);
        if (first_content && field == "x") {
            first_content = false;
            continue;
        }
        first_content = false;
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw plind::DomainError("line " + std::to_string(lineno) +
                                     ": not a number: '" + field + "'");
        }
        if (!std::isfinite(v))
            throw plind::DomainError("line " + std::to_string(lineno) +
                                     ": value is not finite");
        if (v < 0)
            throw plind::DomainError("line " + std::to_string(lineno) +
                                     ": negative value " + fmt(v, 15));
        values.push_back(v);
    }
    return values;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw plind::DomainError("cannot open output file: " + path);
    out << text;
}

struct DistArgs {
    double theta = 0, beta = 0;
    std::string what;
    std::optional<double> x, u;
    std::optional<int> k;
};

void cmd_dist(const DistArgs& a) {
    const plind::Params p(a.theta, a.beta);
    double value = 0;
    if (a.what == "pdf" || a.what == "cdf" || a.what == "survival") {
        if (!a.x) throw plind::DomainError("--what " + a.what + " requires --x");
        value = a.what == "pdf"   ? plind::pdf(p, *a.x)
              : a.what == "cdf"   ? plind::cdf(p, *a.x)
                                  : plind::survival(p, *a.x);
    } else if (a.what == "quantile") {
        if (!a.u) throw plind::DomainError("--what quantile requires --u");
        value = plind::quantile(p, *a.u);
    } else if (a.what == "moment") {
        if (!a.k) throw plind::DomainError("--what moment requires --k");
        value = plind::raw_moment(p, *a.k);
    } else {
        throw plind::DomainError("unknown --what: " + a.what);
    }
    std::cout << fmt(value, 15) << "\n";
}

struct SampleArgs {
    double theta = 0, beta = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string sampler = "inverse";
    std::string out;
};

void cmd_sample(const SampleArgs& a) {
    const plind::Params p(a.theta, a.beta);
    const auto kind = a.sampler == "inverse" ? plind::SamplerKind::inverse
                                             : plind::SamplerKind::mixture;
    const auto xs = plind::sample(p, {a.seed, 0}, a.n, kind);
    std::string text = "x\n";
    char buf[64];
    for (double x : xs) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        text += buf;
    }
    write_text(a.out, text);
}

struct FitArgs {
    std::string data;
    std::string format = "text";
};

nlohmann::json fit_json(const plind::ParamEstimate& e) {
    nlohmann::json j{
        {"n", e.n},
        {"theta_hat", e.theta_hat},
        {"beta_hat", e.beta_hat},
        {"eta_hat", e.eta_hat},
        {"lambda_hat", e.lambda_hat},
        {"beta_in_range", e.beta_in_range},
    };
    if (e.beta_in_range) {
        const auto s = plind::covariance(plind::Params(e.theta_hat, e.beta_hat));
        const double n = static_cast<double>(e.n);
        const auto ci = plind::confidence_intervals(e, 0.95);
        j["se_theta"] = std::sqrt(s.s11 / n);
        j["se_beta"] = std::sqrt(s.s22 / n);
        j["ci95_theta"] = {ci.theta.lower, ci.theta.upper};
        j["ci95_beta"] = {ci.beta.lower, ci.beta.upper};
    }
    return j;
}

void cmd_fit(const FitArgs& a) {
    const auto e = plind::fit(read_data_file(a.data));
    if (a.format == "json") {
        std::cout << fit_json(e).dump(2) << "\n";
        return;
    }
    std::cout << "n              " << e.n << "\n"
              << "theta_hat      " << fmt(e.theta_hat, 4) << "\n"
              << "beta_hat       " << fmt(e.beta_hat, 4) << "\n"
              << "eta_hat        " << fmt(e.eta_hat, 4) << "\n"
              << "lambda_hat     " << fmt(e.lambda_hat, 4) << "\n"
              << "beta_in_range  " << (e.beta_in_range ? "yes" : "no") << "\n";
    if (!e.beta_in_range) {
        std::cout << "(beta_hat <= 1: standard errors and intervals unavailable)\n";
        return;
    }
    const auto s = plind::covariance(plind::Params(e.theta_hat, e.beta_hat));
    const double n = static_cast<double>(e.n);
    const auto ci = plind::confidence_intervals(e, 0.95);
    std::cout << "se_theta       " << fmt(std::sqrt(s.s11 / n), 4) << "\n"
              << "se_beta        " << fmt(std::sqrt(s.s22 / n), 4) << "\n"
              << "ci95_theta     [" << fmt(ci.theta.lower, 4) << ", "
              << fmt(ci.theta.upper, 4) << "]\n"
              << "ci95_beta      [" << fmt(ci.beta.lower, 4) << ", "
              << fmt(ci.beta.upper, 4) << "]\n";
}

struct TestArgs {
    std::string data;
    double theta0 = 0, beta0 = 0;
    std::string which;
    std::string sigma_at = "null";
    double level = 0.05;
};

void cmd_test(const TestArgs& a) {
    const auto e = plind::fit(read_data_file(a.data));
    const auto at = a.sigma_at == "null" ? plind::CovarianceAt::null
                                         : plind::CovarianceAt::plug_in;
    plind::Hypothesis h{a.theta0, a.beta0, plind::TestTarget::joint};
    plind::TestResult r;
    if (a.which == "theta") {
        h.which = plind::TestTarget::theta_only;
        r = plind::wald_test(e, h, at, a.level);
    } else if (a.which == "beta") {
        h.which = plind::TestTarget::beta_only;
        r = plind::wald_test(e, h, at, a.level);
    } else {
        r = plind::joint_wald_test(e, h, at, a.level);
    }
    const bool normal = r.reference == plind::ReferenceDist::standard_normal;
    std::cout << "test        " << a.which << "\n"
              << "statistic   " << fmt(r.statistic, 4) << "\n"
              << "reference   " << (normal ? "standard normal" : "chi-square(2)") << "\n"
              << "p_value     " << fmt(r.p_value, 4) << "\n"
              << "decision    " << (r.reject_at->reject ? "reject" : "accept")
              << " at level " << fmt(r.reject_at->level, 4) << "\n";
}

struct SimulateArgs {
    plind::SimConfig config;
    std::string sampler = "inverse";
    std::string sigma_at = "null";
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
};

void cmd_simulate(const SimulateArgs& a) {
    plind::SimConfig c = a.config;
    c.sampler = a.sampler == "inverse" ? plind::SamplerKind::inverse
                                       : plind::SamplerKind::mixture;
    c.sigma_at = a.sigma_at == "null" ? plind::CovarianceAt::null
                                      : plind::CovarianceAt::plug_in;
    const auto rep = plind::run_experiment(c, a.threads);
    const auto format = a.format == "json" ? plind::TableFormat::json
                                           : plind::TableFormat::csv;
    write_text(a.out, plind::emit_table(rep, format));
}

struct ValidateArgs {
    double theta = 2, beta = 2;
    std::size_t draws = 1'000'000;
    std::uint64_t seed = 0;
};

// Gate: closed-form Sigma vs the influence-moment oracle, 10% relative on
// every entry. The estimator-sampling block is informational only — at
// finite n it carries real asymptotic bias, which is not a formula bug.
int cmd_validate(const ValidateArgs& a) {
    const plind::Params p(a.theta, a.beta);
    if (a.draws < 100'000)
        std::cerr << "warning: --draws " << a.draws
                  << " is small; Monte Carlo noise may dominate the comparison\n";
    const auto closed = plind::covariance(p);
    const auto oracle = plind::covariance_mc_oracle(p, a.draws, {a.seed, 0});
    const auto sampling = plind::estimator_sampling_mc(p, 2000, 500, {a.seed, 1});

    auto rel = [](double ref, double got) { return std::abs(got - ref) / std::abs(ref); };
    struct Line { const char* name; double ref, got; };
    const Line oracle_lines[] = {{"s11", closed.s11, oracle.s11},
                                 {"s22", closed.s22, oracle.s22},
                                 {"s12", closed.s12, oracle.s12}};
    std::printf("influence-moment oracle at %zu draws\n", a.draws);
    std::printf("  %-5s %14s %14s %12s\n", "", "closed-form", "empirical", "rel.error");
    bool ok = true;
    for (const auto& l : oracle_lines) {
        const double r = rel(l.ref, l.got);
        ok = ok && r <= 0.10;
        std::printf("  %-5s %14s %14s %12s\n", l.name, fmt(l.ref, 6).c_str(),
                    fmt(l.got, 6).c_str(), fmt(r, 3).c_str());
    }
    std::printf("estimator sampling at n=2000, 500 replications (finite-n, informational)\n");
    const Line sampling_lines[] = {{"s11", closed.s11, sampling.s11},
                                   {"s22", closed.s22, sampling.s22},
                                   {"s12", closed.s12, sampling.s12}};
    for (const auto& l : sampling_lines)
        std::printf("  %-5s %14s %14s %12s\n", l.name, fmt(l.ref, 6).c_str(),
                    fmt(l.got, 6).c_str(), fmt(rel(l.ref, l.got), 3).c_str());
    std::printf("  degenerate replications: %zu\n", sampling.degenerate_count);
    if (!ok) {
        std::printf("FAIL: an oracle entry differs by more than 10%%\n");
        return 4;
    }
    std::printf("OK: all oracle entries within 10%%\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-Lindley distribution toolkit"};
    app.require_subcommand(1);

    DistArgs dist;
    auto* sub_dist = app.add_subcommand("dist", "Evaluate pdf/cdf/survival/quantile/moments");
    sub_dist->add_option("--theta", dist.theta, "rate parameter (> 0)")->required();
    sub_dist->add_option("--beta", dist.beta, "shape parameter (> 1)")->required();
    sub_dist->add_option("--what", dist.what, "pdf, cdf, survival, quantile, or moment")
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "survival", "quantile", "moment"}));
    sub_dist->add_option("--x", dist.x, "evaluation point for pdf/cdf/survival");
    sub_dist->add_option("--u", dist.u, "probability in (0,1) for quantile");
    sub_dist->add_option("--k", dist.k, "moment order (>= 1) for moment");

    SampleArgs sam;
    auto* sub_sample = app.add_subcommand("sample", "Draw a reproducible sample as CSV");
    sub_sample->add_option("--theta", sam.theta, "rate parameter (> 0)")->required();
    sub_sample->add_option("--beta", sam.beta, "shape parameter (> 1)")->required();
    sub_sample->add_option("--n", sam.n, "number of draws (>= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    sub_sample->add_option("--seed", sam.seed, "rng seed (default 0)");
    sub_sample->add_option("--sampler", sam.sampler, "inverse (default) or mixture")
        ->check(CLI::IsMember({"inverse", "mixture"}));
    sub_sample->add_option("--out", sam.out, "output path (default stdout)");

    FitArgs fit;
    auto* sub_fit = app.add_subcommand("fit", "Method-of-moments fit of a data file");
    sub_fit->add_option("--data", fit.data, "data file: one value per line, optional 'x' header")
        ->required();
    sub_fit->add_option("--format", fit.format, "text (default) or json")
        ->check(CLI::IsMember({"text", "json"}));

    TestArgs test;
    auto* sub_test = app.add_subcommand("test", "Wald tests against a null (theta0, beta0)");
    sub_test->add_option("--data", test.data, "data file")->required();
    sub_test->add_option("--theta0", test.theta0, "hypothesized theta (> 0)")->required();
    sub_test->add_option("--beta0", test.beta0, "hypothesized beta (> 1)")->required();
    sub_test->add_option("--which", test.which, "theta, beta, or joint")
        ->required()
        ->check(CLI::IsMember({"theta", "beta", "joint"}));
    sub_test->add_option("--sigma-at", test.sigma_at,
                         "evaluate the covariance at: null (default) or plug-in")
        ->check(CLI::IsMember({"null", "plug-in"}));
    sub_test->add_option("--level", test.level, "nominal level (default 0.05)");

    SimulateArgs sim;
    auto* sub_sim = app.add_subcommand("simulate", "Monte Carlo study over sample sizes");
    sub_sim->add_option("--theta", sim.config.theta, "true theta (default 2)");
    sub_sim->add_option("--beta", sim.config.beta, "true beta (default 2)");
    sub_sim->add_option("--sizes", sim.config.sizes, "comma-separated sample sizes, each >= 10")
        ->required()
        ->delimiter(',');
    sub_sim->add_option("--reps", sim.config.replications, "replications per size (>= 100, default 1000)");
    sub_sim->add_option("--seed", sim.config.seed, "rng seed (default 0)");
    sub_sim->add_option("--level", sim.config.nominal_level, "nominal test level (default 0.05)");
    sub_sim->add_option("--sampler", sim.sampler, "inverse (default) or mixture")
        ->check(CLI::IsMember({"inverse", "mixture"}));
    sub_sim->add_option("--sigma-at", sim.sigma_at, "null (default) or plug-in")
        ->check(CLI::IsMember({"null", "plug-in"}));
    sub_sim->add_option("--out", sim.out, "output path (default stdout)");
    sub_sim->add_option("--format", sim.format, "csv (default) or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub_sim->add_option("--threads", sim.threads, "worker threads (default 0 = auto)");

    ValidateArgs val;
    auto* sub_val = app.add_subcommand(
        "validate", "Check closed-form Sigma against its Monte Carlo oracles");
    sub_val->add_option("--theta", val.theta, "theta (default 2)");
    sub_val->add_option("--beta", val.beta, "beta (default 2)");
    sub_val->add_option("--draws", val.draws, "oracle draws (>= 10000, default 1000000)");
    sub_val->add_option("--seed", val.seed, "rng seed (default 0)");

    try {
        app.parse(argc, argv);
        if (sub_dist->parsed()) cmd_dist(dist);
        if (sub_sample->parsed()) cmd_sample(sam);
        if (sub_fit->parsed()) cmd_fit(fit);
        if (sub_test->parsed()) cmd_test(test);
        if (sub_sim->parsed()) cmd_simulate(sim);
        if (sub_val->parsed()) return cmd_validate(val);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const plind::DegenerateSample& e) {
        std::cerr << "degenerate sample: " << e.what() << "\n";
        return 3;
    } catch (const plind::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
