#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "plind/asymptotics.hpp"
#include "plind/distribution.hpp"
#include "plind/errors.hpp"
#include "plind/estimation.hpp"
#include "plind/inference.hpp"
#include "plind/simulation.hpp"

namespace py = pybind11;

namespace {

plind::SamplerKind sampler_from(const std::string& s) {
    if (s == "inverse") return plind::SamplerKind::inverse;
    if (s == "mixture") return plind::SamplerKind::mixture;
    throw plind::DomainError("sampler must be 'inverse' or 'mixture', got '" + s + "'");
}

plind::CovarianceAt sigma_from(const std::string& s) {
    if (s == "null") return plind::CovarianceAt::null;
    if (s == "plug-in") return plind::CovarianceAt::plug_in;
    throw plind::DomainError("sigma_at must be 'null' or 'plug-in', got '" + s + "'");
}

plind::TestResult run_test(const plind::ParamEstimate& e, double theta0, double beta0,
                           const std::string& which, const std::string& sigma_at,
                           std::optional<double> level) {
    plind::Hypothesis h{theta0, beta0, plind::TestTarget::joint};
    if (which == "joint") return plind::joint_wald_test(e, h, sigma_from(sigma_at), level);
    if (which == "theta")
        h.which = plind::TestTarget::theta_only;
    else if (which == "beta")
        h.which = plind::TestTarget::beta_only;
    else
        throw plind::DomainError("which must be 'theta', 'beta', or 'joint', got '" +
                                 which + "'");
    return plind::wald_test(e, h, sigma_from(sigma_at), level);
}

} // namespace

PYBIND11_MODULE(_plind, m) {
    m.doc() = "Pseudo-Lindley distribution: evaluation, sampling, moment "
              "estimation, asymptotic covariance, Wald tests, simulation";

    // translators run newest-first, so the base class goes in first
    py::register_exception<plind::Error>(m, "PlindError", PyExc_RuntimeError);
    py::register_exception<plind::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<plind::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<plind::DegenerateSample>(m, "DegenerateSampleError",
                                                    PyExc_ValueError);

    m.def("pdf", [](double t, double b, double x) { return plind::pdf({t, b}, x); },
          py::arg("theta"), py::arg("beta"), py::arg("x"));
    m.def("log_pdf", [](double t, double b, double x) { return plind::log_pdf({t, b}, x); },
          py::arg("theta"), py::arg("beta"), py::arg("x"));
    m.def("cdf", [](double t, double b, double x) { return plind::cdf({t, b}, x); },
          py::arg("theta"), py::arg("beta"), py::arg("x"));
    m.def("survival", [](double t, double b, double x) { return plind::survival({t, b}, x); },
          py::arg("theta"), py::arg("beta"), py::arg("x"));
    m.def("quantile", [](double t, double b, double u) { return plind::quantile({t, b}, u); },
          py::arg("theta"), py::arg("beta"), py::arg("u"));
    m.def("raw_moment", [](double t, double b, int k) { return plind::raw_moment({t, b}, k); },
          py::arg("theta"), py::arg("beta"), py::arg("k"));
    m.def("mean", [](double t, double b) { return plind::mean({t, b}); },
          py::arg("theta"), py::arg("beta"));
    m.def("variance", [](double t, double b) { return plind::variance({t, b}); },
          py::arg("theta"), py::arg("beta"));
    m.def("lindley_pdf", &plind::lindley_pdf, py::arg("theta"), py::arg("x"));

    m.def(
        "sample",
        [](double t, double b, std::size_t n, std::uint64_t seed, std::uint64_t stream,
           const std::string& sampler) {
            return plind::sample({t, b}, {seed, stream}, n, sampler_from(sampler));
        },
        py::arg("theta"), py::arg("beta"), py::arg("n"), py::arg("seed") = 0,
        py::arg("stream") = 0, py::arg("sampler") = "inverse");

    py::class_<plind::SampleSummary>(m, "SampleSummary")
        .def_readonly("n", &plind::SampleSummary::n)
        .def_readonly("mean", &plind::SampleSummary::mean)
        .def_readonly("var", &plind::SampleSummary::var)
        .def_readonly("min", &plind::SampleSummary::min);

    py::class_<plind::ParamEstimate>(m, "ParamEstimate")
        .def_readonly("theta_hat", &plind::ParamEstimate::theta_hat)
        .def_readonly("beta_hat", &plind::ParamEstimate::beta_hat)
        .def_readonly("eta_hat", &plind::ParamEstimate::eta_hat)
        .def_readonly("lambda_hat", &plind::ParamEstimate::lambda_hat)
        .def_readonly("n", &plind::ParamEstimate::n)
        .def_readonly("beta_in_range", &plind::ParamEstimate::beta_in_range)
        .def("__repr__", [](const plind::ParamEstimate& e) {
            return "ParamEstimate(theta_hat=" + std::to_string(e.theta_hat) +
                   ", beta_hat=" + std::to_string(e.beta_hat) + ")";
        });

    m.def("summarize",
          [](const std::vector<double>& xs) { return plind::summarize(xs); },
          py::arg("data"));
    m.def("fit", [](const std::vector<double>& xs) { return plind::fit(xs); },
          py::arg("data"));

    py::class_<plind::CovarianceMatrix>(m, "CovarianceMatrix")
        .def_readonly("s11", &plind::CovarianceMatrix::s11)
        .def_readonly("s22", &plind::CovarianceMatrix::s22)
        .def_readonly("s12", &plind::CovarianceMatrix::s12)
        .def_readonly("gamma1", &plind::CovarianceMatrix::gamma1)
        .def_readonly("gamma2", &plind::CovarianceMatrix::gamma2)
        .def_readonly("tau1_sq", &plind::CovarianceMatrix::tau1_sq)
        .def_readonly("tau2_sq", &plind::CovarianceMatrix::tau2_sq)
        .def_readonly("c", &plind::CovarianceMatrix::c);

    m.def("covariance", [](double t, double b) { return plind::covariance({t, b}); },
          py::arg("theta"), py::arg("beta"));
    m.def(
        "covariance_mc_oracle",
        [](double t, double b, std::size_t draws, std::uint64_t seed, std::uint64_t stream) {
            return plind::covariance_mc_oracle({t, b}, draws, {seed, stream});
        },
        py::arg("theta"), py::arg("beta"), py::arg("draws"), py::arg("seed") = 0,
        py::arg("stream") = 0);

    py::class_<plind::TestResult>(m, "TestResult")
        .def_readonly("statistic", &plind::TestResult::statistic)
        .def_readonly("p_value", &plind::TestResult::p_value)
        .def_property_readonly("reference",
                               [](const plind::TestResult& r) {
                                   return r.reference == plind::ReferenceDist::standard_normal
                                              ? "standard normal"
                                              : "chi-square(2)";
                               })
        .def_property_readonly("reject", [](const plind::TestResult& r) {
            return r.reject_at ? std::optional<bool>(r.reject_at->reject) : std::nullopt;
        });

    m.def("wald_test", &run_test, py::arg("estimate"), py::arg("theta0"), py::arg("beta0"),
          py::arg("which") = "joint", py::arg("sigma_at") = "null",
          py::arg("level") = std::nullopt);

    py::class_<plind::ConfidenceIntervals>(m, "ConfidenceIntervals")
        .def_property_readonly("theta",
                               [](const plind::ConfidenceIntervals& c) {
                                   return std::make_pair(c.theta.lower, c.theta.upper);
                               })
        .def_property_readonly("beta",
                               [](const plind::ConfidenceIntervals& c) {
                                   return std::make_pair(c.beta.lower, c.beta.upper);
                               })
        .def_readonly("level", &plind::ConfidenceIntervals::level);

    m.def("confidence_intervals", &plind::confidence_intervals, py::arg("estimate"),
          py::arg("level") = 0.95);

    py::class_<plind::SimRow>(m, "SimRow")
        .def_readonly("n", &plind::SimRow::n)
        .def_readonly("mve_theta", &plind::SimRow::mve_theta)
        .def_readonly("mve_beta", &plind::SimRow::mve_beta)
        .def_readonly("rmse_theta", &plind::SimRow::rmse_theta)
        .def_readonly("rmse_beta", &plind::SimRow::rmse_beta)
        .def_readonly("reject_rate_theta", &plind::SimRow::reject_rate_theta)
        .def_readonly("reject_rate_beta", &plind::SimRow::reject_rate_beta)
        .def_readonly("reject_rate_joint", &plind::SimRow::reject_rate_joint)
        .def_readonly("degenerate_count", &plind::SimRow::degenerate_count);

    py::class_<plind::SimReport>(m, "SimReport")
        .def_readonly("rows", &plind::SimReport::rows)
        .def_readonly("wall_time_s", &plind::SimReport::wall_time_s)
        .def("csv", [](const plind::SimReport& r) {
            return plind::emit_table(r, plind::TableFormat::csv);
        })
        .def("json", [](const plind::SimReport& r) {
            return plind::emit_table(r, plind::TableFormat::json);
        });

    m.def(
        "run_experiment",
        [](double theta, double beta, const std::vector<std::size_t>& sizes,
           std::size_t replications, double level, std::uint64_t seed,
           const std::string& sampler, const std::string& sigma_at, unsigned threads) {
            plind::SimConfig c;
            c.theta = theta;
            c.beta = beta;
            c.sizes = sizes;
            c.replications = replications;
            c.nominal_level = level;
            c.seed = seed;
            c.sampler = sampler_from(sampler);
            c.sigma_at = sigma_from(sigma_at);
            return plind::run_experiment(c, threads);
        },
        py::arg("theta"), py::arg("beta"), py::arg("sizes"),
        py::arg("replications") = 1000, py::arg("level") = 0.05, py::arg("seed") = 0,
        py::arg("sampler") = "inverse", py::arg("sigma_at") = "null",
        py::arg("threads") = 0);
}
