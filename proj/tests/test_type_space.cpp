#include "reinsure/errors.hpp"
#include "reinsure/type_space.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace reinsure;

namespace {
TypeDistribution uniform_market() {
    return TypeDistribution::product_log_alpha({5000, 25000}, -3, -2, LossFamily::exponential());
}
} // namespace

TEST_CASE("transform maps (alpha, k) to (VaR, k)") {
    const auto d = uniform_market();
    const auto t = transform(d, std::exp(-2.0), 25000);
    CHECK(t.a == doctest::Approx(50000).epsilon(1e-14));
    CHECK(t.k == 25000);
    const auto fixed = TypeDistribution::degenerate_log_alpha({5000, 25000}, -3, LossFamily::exponential());
    CHECK(transform(fixed, std::exp(-3.0), 5000).a == doctest::Approx(15000).epsilon(1e-14));
    CHECK_THROWS_AS(transform(d, 0.5, 10000), DomainError);
    CHECK_THROWS_AS(transform(d, std::exp(-2.5), 40000), DomainError);
}

TEST_CASE("support bounds") {
    CHECK(lower_support(uniform_market()) == 10000.0);
    CHECK(upper_support(uniform_market()) == 75000.0);
    const auto fixed = TypeDistribution::degenerate_log_alpha({5000, 25000}, -3, LossFamily::exponential());
    CHECK(lower_support(fixed) == doctest::Approx(15000).epsilon(1e-15));
    const auto one = TypeDistribution::discrete({{0.1, 2000, 1.0}}, LossFamily::exponential());
    CHECK(lower_support(one) == doctest::Approx(-2000 * std::log(0.1)));

    std::mt19937_64 rng(7);
    const auto d = uniform_market();
    for (int i = 0; i < 10000; ++i) {
        const auto t = d.sample(rng);
        REQUIRE(t.a >= 10000.0);
        REQUIRE(t.a <= 75000.0);
    }
}

TEST_CASE("integrate is a probability integral") {
    const auto d = uniform_market();
    const std::vector<double> none;
    CHECK(integrate(d, [](double, double) { return 1.0; }, none) == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> at = {5000.0};
    CHECK(integrate(d, [](double a, double) { return a >= 5000.0 ? 1.0 : 0.0; }, at) ==
          doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("conditional density beta/k exp(-a/k) on [2k, 3k]") {
        const double beta = 1.0 / (std::exp(-2.0) - std::exp(-3.0));
        const double mean_a = integrate(d, [](double a, double) { return a; }, none);
        // E[a | k] = beta k (3 e^-2 - 4 e^-3), and E[k] = 15000.
        const double expected = beta * (3 * std::exp(-2.0) - 4 * std::exp(-3.0)) * 15000;
        CHECK(mean_a == doctest::Approx(expected).epsilon(1e-10));
    }

    SUBCASE("linearity") {
        auto f1 = [](double a, double k) { return std::sin(a / 7000) * k; };
        auto f2 = [](double a, double k) { return a * a / (k + 1); };
        const double x = integrate(d, f1, none);
        const double y = integrate(d, f2, none);
        const double z = integrate(d, [&](double a, double k) { return 2.5 * f1(a, k) - 0.75 * f2(a, k); }, none);
        CHECK(z == doctest::Approx(2.5 * x - 0.75 * y).epsilon(1e-10));
    }

    SUBCASE("pushforward agrees with direct (alpha, k) quadrature") {
        auto f = [](double a, double k) { return std::exp(-a / 40000) * k / 10000; };
        const double in_a = integrate(d, f, none);
        // Direct: α ~ U(e⁻³, e⁻²), k ~ U[5000, 25000], midpoint rule on a fine grid.
        const int n = 2000;
        const double lo = std::exp(-3.0), hi = std::exp(-2.0);
        double direct = 0.0;
        for (int i = 0; i < n; ++i) {
            const double k = 5000 + 20000 * (i + 0.5) / n;
            for (int j = 0; j < n; ++j) {
                const double alpha = lo + (hi - lo) * (j + 0.5) / n;
                direct += f(-k * std::log(alpha), k);
            }
        }
        direct /= double(n) * n;
        CHECK(in_a == doctest::Approx(direct).epsilon(1e-8));
    }
}

TEST_CASE("discrete markets sum exactly") {
    const auto d = TypeDistribution::discrete({{0.1, 1000, 0.25}, {0.2, 3000, 0.75}},
                                              LossFamily::exponential());
    const std::vector<double> none;
    const double got = integrate(d, [](double a, double) { return a; }, none);
    CHECK(got == doctest::Approx(0.25 * 1000 * std::log(10.0) + 0.75 * 3000 * std::log(5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(TypeDistribution::discrete({{0.1, 1000, 0.5}}, LossFamily::exponential()), DomainError);
}

TEST_CASE("empty or invalid supports are rejected") {
    CHECK_THROWS_AS(TypeDistribution::product({5, 2}, 0.1, 0.2, LossFamily::exponential()), DomainError);
    CHECK_THROWS_AS(TypeDistribution::product({1, 2}, 0.3, 0.2, LossFamily::exponential()), DomainError);
    CHECK_THROWS_AS(TypeDistribution::product({1, 2}, 0.1, 0.8, LossFamily::exponential(0.5)), DomainError);
}
