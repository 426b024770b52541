#include <doctest.h>

#include <cmath>
#include <vector>

#include "plind/asymptotics.hpp"
#include "plind/distribution.hpp"
#include "plind/errors.hpp"
#include "plind/rng.hpp"
#include "test_util.hpp"

using namespace plind;

namespace {

const double kThetas[] = {0.5, 1, 2, 5};
const double kBetas[] = {1.1, 2, 5, 20};

}  // namespace

TEST_CASE("coefficients at the reference point") {
    const auto c = coefficients(Params(2, 2));
    CHECK(c.m == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.m2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.sigma2 == doctest::Approx(0.4375).epsilon(1e-15));
    CHECK(c.eta == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-14));
    CHECK(c.lambda == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(c.a1 == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(c.b1 == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(c.a2 == doctest::Approx(-32.0).epsilon(1e-12));
    CHECK(c.b2 == doctest::Approx(12.0).epsilon(1e-12));

    const auto d = coefficients(Params(1, 2));
    CHECK(d.eta == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(d.lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("coefficient identities hold across the grid") {
    for (const double t : kThetas)
        for (const double b : kBetas) {
            const Params p(t, b);
            const auto c = coefficients(p);
            CHECK(c.eta * t * b == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
            CHECK(c.lambda * t == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
            CHECK(c.eta * c.eta ==
                  doctest::Approx(c.m * c.m - c.sigma2).epsilon(1e-12));
            CHECK(c.m == doctest::Approx(mean(p)).epsilon(1e-14));
            CHECK(c.sigma2 == doctest::Approx(variance(p)).epsilon(1e-14));
        }
}

TEST_CASE("influence kernel values") {
    const auto c = coefficients(Params(2, 2));
    CHECK(eval_influence(c, 1, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(eval_influence(c, 1, 1.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval_influence(c, 2, 1.0) == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK(eval_influence(c, 2, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_influence(c, 3, 1.0), DomainError);
    CHECK_THROWS_AS(eval_influence(c, 0, 1.0), DomainError);
}

TEST_CASE("closed-form covariance at the reference point") {
    const auto s = covariance(Params(2, 2));
    CHECK(s.gamma1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.gamma2 == doctest::Approx(-12.0).epsilon(1e-12));
    CHECK(s.tau1_sq == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(s.tau2_sq == doctest::Approx(232.0).epsilon(1e-12));
    CHECK(s.c == doctest::Approx(-52.0).epsilon(1e-12));
    CHECK(s.s11 == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(s.s22 == doctest::Approx(88.0).epsilon(1e-12));
    CHECK(s.s12 == doctest::Approx(-28.0).epsilon(1e-12));
    // the n = 500 standard error quoted for theta
    CHECK(std::sqrt(s.s11 / 500) == doctest::Approx(0.155).epsilon(0.01));
}

TEST_CASE("gamma recomputes from the coefficient pieces") {
    for (const double t : kThetas)
        for (const double b : kBetas) {
            const Params p(t, b);
            const auto c = coefficients(p);
            const auto s = covariance(p);
            CHECK(s.gamma1 ==
                  doctest::Approx(c.a1 * c.m + c.b1 * c.m2).epsilon(1e-10));
            CHECK(s.gamma2 ==
                  doctest::Approx(c.a2 * c.m + c.b2 * c.m2).epsilon(1e-10));
        }
}

TEST_CASE("covariance is a valid PSD matrix on the grid") {
    for (const double t : kThetas)
        for (const double b : kBetas) {
            const auto s = covariance(Params(t, b));
            CHECK(s.s11 > 0);
            CHECK(s.s22 > 0);
            CHECK(s.s12 * s.s12 < s.s11 * s.s22);
        }
}

TEST_CASE("moments of the kernels match quadrature") {
    for (const Params p : {Params(2, 2), Params(0.5, 5)}) {
        const auto c = coefficients(p);
        const auto s = covariance(p);
        const double xmax = quantile(p, 1 - 1e-13);
        // tolerance scaled to the target so the subdivision terminates
        auto mom = [&](auto&& g, double target) {
            return testutil::integrate(
                [&](double x) { return g(x) * pdf(p, x); }, 0, xmax,
                1e-8 * (1 + std::abs(target)));
        };
        const double g1 = mom([&](double x) { return eval_influence(c, 1, x); },
                              s.gamma1);
        const double g2 = mom([&](double x) { return eval_influence(c, 2, x); },
                              s.gamma2);
        const double t1 = mom(
            [&](double x) {
                const double h = eval_influence(c, 1, x);
                return h * h;
            },
            s.tau1_sq);
        const double t2 = mom(
            [&](double x) {
                const double h = eval_influence(c, 2, x);
                return h * h;
            },
            s.tau2_sq);
        const double cc = mom(
            [&](double x) {
                return eval_influence(c, 1, x) * eval_influence(c, 2, x);
            },
            s.c);
        CHECK(g1 == doctest::Approx(s.gamma1).epsilon(1e-6));
        CHECK(g2 == doctest::Approx(s.gamma2).epsilon(1e-6));
        CHECK(t1 == doctest::Approx(s.tau1_sq).epsilon(1e-6));
        CHECK(t2 == doctest::Approx(s.tau2_sq).epsilon(1e-6));
        CHECK(cc == doctest::Approx(s.c).epsilon(1e-6));
    }
}

TEST_CASE("monte carlo oracle agrees with the closed form") {
    const Params pts[] = {Params(2, 2), Params(1, 1.5), Params(0.5, 5),
                          Params(3, 10)};
    for (const Params& p : pts) {
        const auto exact = covariance(p);
        const auto mc = covariance_mc_oracle(p, 1'000'000, {11, 0});
        CHECK(mc.gamma1 == doctest::Approx(exact.gamma1).epsilon(0.05).scale(1.0));
        CHECK(mc.gamma2 == doctest::Approx(exact.gamma2).epsilon(0.05).scale(1.0));
        CHECK(mc.tau1_sq == doctest::Approx(exact.tau1_sq).epsilon(0.05));
        CHECK(mc.tau2_sq == doctest::Approx(exact.tau2_sq).epsilon(0.05));
        CHECK(mc.c == doctest::Approx(exact.c).epsilon(0.05));
        CHECK(mc.s11 == doctest::Approx(exact.s11).epsilon(0.05));
        CHECK(mc.s22 == doctest::Approx(exact.s22).epsilon(0.05));
        CHECK(mc.s12 == doctest::Approx(exact.s12).epsilon(0.05));
    }
    // gamma1 at the reference point has a tight absolute handle
    const auto mc = covariance_mc_oracle(Params(2, 2), 1'000'000, {11, 0});
    CHECK(std::abs(mc.gamma1 - 2) < 0.02);
}

TEST_CASE("oracle error shrinks like 1/sqrt(draws)") {
    const Params p(2, 2);
    double err_small = 0, err_large = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        err_small += std::abs(covariance_mc_oracle(p, 10'000, {17, s}).s11 - 12);
        err_large +=
            std::abs(covariance_mc_oracle(p, 1'000'000, {17, s}).s11 - 12);
    }
    CHECK(err_small / err_large > 3);
}

TEST_CASE("oracle and sampling preconditions") {
    const Params p(2, 2);
    CHECK_THROWS_AS(covariance_mc_oracle(p, 9'999, {0, 0}), DomainError);
    CHECK_THROWS_AS(estimator_sampling_mc(p, 49, 500, {0, 0}), DomainError);
    CHECK_THROWS_AS(estimator_sampling_mc(p, 100, 99, {0, 0}), DomainError);
}

TEST_CASE("estimator sampling reproduces the asymptotic scale") {
    const Params p(2, 2);
    const auto a = estimator_sampling_mc(p, 2000, 400, {23, 0});
    const auto b = estimator_sampling_mc(p, 2000, 400, {23, 0});
    CHECK(a.s11 == b.s11);
    CHECK(a.s22 == b.s22);
    CHECK(a.s12 == b.s12);
    CHECK(a.valid_replications + a.degenerate_count == 400);
    CHECK(a.valid_replications > 390);
    CHECK(std::abs(a.s11 - 12) / 12 < 0.35);
    CHECK(std::abs(a.s22 - 88) / 88 < 0.35);
    CHECK(a.s12 < 0);
}
