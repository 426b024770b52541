#include <doctest.h>

#include <cmath>
#include <vector>

#include "plind/distribution.hpp"
#include "plind/errors.hpp"
#include "plind/rng.hpp"
#include "test_util.hpp"

using namespace plind;

namespace {
const double kThetas[] = {0.5, 1, 2, 5};
const double kBetas[] = {1.1, 2, 5, 20};
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Params(0, 2), DomainError);
    CHECK_THROWS_AS(Params(-1, 2), DomainError);
    CHECK_THROWS_AS(Params(2, 1), DomainError);
    CHECK_THROWS_AS(Params(2, 0.5), DomainError);
    CHECK_THROWS_AS(Params(std::nan(""), 2), DomainError);
    CHECK_THROWS_AS(Params(2, std::nan("")), DomainError);
    CHECK_NOTHROW(Params(1e-9, 1 + 1e-9));
}

TEST_CASE("pdf closed form") {
    const Params p(2, 2);
    CHECK(pdf(p, -1) == 0);
    CHECK(pdf(p, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pdf(Params(2, 3), 0) == doctest::Approx(4.0 / 3).epsilon(1e-15));
    CHECK(pdf(p, 1) == doctest::Approx(2 * (1 + 2) * std::exp(-2.0) / 2).epsilon(1e-15));
}

TEST_CASE("log_pdf avoids underflow") {
    const Params p(2, 2);
    CHECK(log_pdf(p, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_pdf(p, -1) == -std::numeric_limits<double>::infinity());
    const double lp = log_pdf(p, 500);
    CHECK(std::isfinite(lp));
    CHECK(lp == doctest::Approx(std::log(1001.0) - 1000).epsilon(1e-12));
    // direct pdf underflows there
    CHECK(pdf(p, 500) == 0);
}

TEST_CASE("cdf and survival") {
    const Params p(2, 2);
    CHECK(cdf(p, -0.5) == 0);
    CHECK(cdf(p, 0) == 0);
    CHECK(survival(p, 0) == 1);
    CHECK(cdf(p, 1) == doctest::Approx(1 - 2 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(survival(p, 1) == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(survival(Params(1, 2), 2) == doctest::Approx(2 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(cdf(p, 1000) == 1);
    for (const double t : kThetas)
        for (const double b : kBetas) {
            const Params q(t, b);
            double prev = -1;
            for (double x = 0; x <= 10; x += 0.25) {
                const double f = cdf(q, x);
                CHECK(f >= prev);
                CHECK(f + survival(q, x) == doctest::Approx(1.0).epsilon(1e-14));
                prev = f;
            }
        }
}

TEST_CASE("survival stays accurate deep in the tail") {
    const Params p(2, 2);
    const double s = survival(p, 300);
    CHECK(s > 0);
    CHECK(std::log(s) == doctest::Approx(std::log(2 + 600.0) - 600 - std::log(2.0))
                             .epsilon(1e-12));
}

TEST_CASE("quantile inverts the cdf") {
    const Params p(2, 2);
    CHECK(quantile(p, 1 - 2 * std::exp(-2.0)) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(quantile(p, 1e-12) < 1e-5);
    for (const double u : {1e-6, 1e-3, 0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999,
                           1 - 1e-6})
        CHECK(std::abs(cdf(p, quantile(p, u)) - u) < 1e-10);
    double prev = 0;
    for (double u = 0.02; u < 1; u += 0.02) {
        const double q = quantile(p, u);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("quantile domain and budget errors") {
    const Params p(2, 2);
    CHECK_THROWS_AS(quantile(p, 0), DomainError);
    CHECK_THROWS_AS(quantile(p, 1), DomainError);
    CHECK_THROWS_AS(quantile(p, -0.1), DomainError);
    CHECK_THROWS_AS(quantile(p, 1.1), DomainError);
    CHECK_THROWS_AS(quantile(p, std::nan("")), DomainError);
    QuantileSettings tight;
    tight.abs_tolerance = 1e-30;
    tight.max_bisections = 5;
    CHECK_THROWS_AS(quantile(p, 0.5, tight), ConvergenceError);
}

TEST_CASE("raw moments") {
    const Params p(2, 2);
    CHECK(raw_moment(p, 1) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(raw_moment(p, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mean(p) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(variance(p) == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK_THROWS_AS(raw_moment(p, 0), DomainError);
    CHECK_THROWS_AS(raw_moment(p, -2), DomainError);
    CHECK_THROWS_AS(raw_moment(Params(1, 2), 300), OverflowError);
}

TEST_CASE("pdf integrates to one") {
    for (const double t : kThetas)
        for (const double b : kBetas) {
            const Params p(t, b);
            const double xmax = quantile(p, 1 - 1e-12);
            const double mass =
                testutil::integrate([&](double x) { return pdf(p, x); }, 0, xmax, 1e-13);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        }
}

TEST_CASE("cdf derivative recovers the pdf") {
    const double h = 1e-5;
    for (const double t : {0.5, 2.0})
        for (const double b : {1.1, 5.0}) {
            const Params p(t, b);
            for (const double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                const double numeric = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h);
                CHECK(numeric == doctest::Approx(pdf(p, x)).epsilon(1e-6));
            }
        }
}

TEST_CASE("moments match quadrature") {
    for (const double t : {0.5, 2.0})
        for (const double b : {1.1, 5.0}) {
            const Params p(t, b);
            const double xmax = quantile(p, 1 - 1e-13);
            for (int k = 1; k <= 4; ++k) {
                const double numeric = testutil::integrate(
                    [&](double x) { return std::pow(x, k) * pdf(p, x); }, 0, xmax, 1e-13);
                CHECK(numeric == doctest::Approx(raw_moment(p, k)).epsilon(1e-6));
            }
        }
}

TEST_CASE("scaling moves theta inversely") {
    CounterRng rng({77, 0});
    for (int i = 0; i < 100; ++i) {
        const double t = 0.2 + 4 * rng.next_uniform01();
        const double b = 1.05 + 10 * rng.next_uniform01();
        const double c = 0.1 + 5 * rng.next_uniform01();
        const double x = 8 * rng.next_uniform01();
        const Params p(t, b);
        const Params scaled(t / c, b);
        CHECK(pdf(p, x / c) / c == doctest::Approx(pdf(scaled, x)).epsilon(1e-12));
    }
}

TEST_CASE("Lindley reduction at beta = 1 + theta") {
    for (const double t : {0.5, 1.0, 2.0, 5.0}) {
        const Params p(t, 1 + t);
        for (double x = 0; x <= 12; x += 0.37)
            CHECK(pdf(p, x) == doctest::Approx(lindley_pdf(t, x)).epsilon(1e-14));
    }
    CHECK(lindley_pdf(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lindley_pdf(1, -1) == 0);
    CHECK_THROWS_AS(lindley_pdf(0, 1), DomainError);
}

TEST_CASE("mixture decomposition equals the pdf") {
    CounterRng rng({78, 0});
    for (int i = 0; i < 100; ++i) {
        const double t = 0.2 + 4 * rng.next_uniform01();
        const double b = 1.05 + 10 * rng.next_uniform01();
        const double x = 10 * rng.next_uniform01();
        const Params p(t, b);
        const double mix = (b - 1) / b * t * std::exp(-t * x) +
                           1 / b * t * t * x * std::exp(-t * x);
        CHECK(mix == doctest::Approx(pdf(p, x)).epsilon(1e-14));
    }
}

TEST_CASE("samplers are deterministic per stream") {
    const Params p(2, 2);
    CHECK(sample_inverse(p, {1, 0}, 3) == sample_inverse(p, {1, 0}, 3));
    CHECK(sample_mixture(p, {1, 0}, 3) == sample_mixture(p, {1, 0}, 3));
    CHECK(sample(p, {1, 0}, 3, SamplerKind::inverse) == sample_inverse(p, {1, 0}, 3));
    CHECK(sample(p, {1, 0}, 3, SamplerKind::mixture) == sample_mixture(p, {1, 0}, 3));
    CHECK(sample_inverse(p, {1, 0}, 3) != sample_inverse(p, {1, 1}, 3));
}

TEST_CASE("sampler moments obey the CLT") {
    const Params p(2, 2);
    const std::size_t n = 100'000;
    const double band = 4 * std::sqrt(0.4375 / n);
    for (const auto kind : {SamplerKind::inverse, SamplerKind::mixture}) {
        const auto xs = sample(p, {31, 4}, n, kind);
        double s = 0;
        for (const double x : xs) {
            CHECK(x >= 0);
            s += x;
        }
        CHECK(std::abs(s / n - 0.75) < band);
    }
}

TEST_CASE("inverse sampler matches the cdf (KS)") {
    const Params p(2, 2);
    const std::size_t n = 100'000;
    const auto xs = sample_inverse(p, {8, 0}, n);
    const double d = testutil::ks_distance(xs, [&](double x) { return cdf(p, x); });
    CHECK(d < testutil::ks_critical(n, 1.63));
}

TEST_CASE("the two samplers agree (two-sample KS)") {
    const Params p(2, 2);
    const std::size_t n = 100'000;
    const auto xs = sample_inverse(p, {9, 0}, n);
    const auto ys = sample_mixture(p, {9, 1}, n);
    const double d = testutil::ks_two_sample(xs, ys);
    CHECK(d < 1.628 * std::sqrt(2.0 / n));
}

TEST_CASE("mixture sampler mean at extreme beta") {
    const Params p(2, 1e6);
    const auto xs = sample_mixture(p, {10, 0}, 100'000);
    double s = 0;
    for (const double x : xs) s += x;
    // essentially Exp(2): mean 1/2, variance 1/4
    CHECK(std::abs(s / xs.size() - mean(p)) < 4 * std::sqrt(variance(p) / xs.size()));
}
