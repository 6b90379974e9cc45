#include "reinsure/errors.hpp"
#include "reinsure/risk_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace reinsure;

namespace {
const CostFunctional kCost{0.1, Distortion::identity()};
}

TEST_CASE("distortions satisfy the endpoint and concavity invariants") {
    for (const auto& h : {Distortion::identity(), Distortion::power(0.5),
                          Distortion::proportional_hazard(0.7),
                          Distortion::tabulated({0, 0.5, 1}, {0, 0.8, 1})}) {
        CHECK_NOTHROW(h.validate());
        CHECK(h(0.0) == 0.0);
        CHECK(h(1.0) == 1.0);
    }
    CHECK_THROWS_AS(Distortion::tabulated({0, 0.5, 1}, {0, 0.2, 1}).validate(), DomainError);
    CHECK_THROWS_AS(Distortion::proportional_hazard(1.5), DomainError);
}

TEST_CASE("VaR of exponential losses") {
    CHECK(var(LossModel::exponential(5000), std::exp(-3.0)) == doctest::Approx(15000).epsilon(1e-14));
    CHECK(var(LossModel::exponential(10000), std::exp(-2.0)) == doctest::Approx(20000).epsilon(1e-14));
    CHECK_THROWS_AS(var(LossModel::exponential(1), 1.0), DomainError);
    CHECK_THROWS_AS(var(LossModel::exponential(1, 0.3), 0.75), DomainError);
    CHECK_THROWS_AS(var(LossModel::exponential(1), 0.0), DomainError);
}

TEST_CASE("stop-loss cost") {
    const auto x = LossModel::exponential(10000);
    CHECK(stop_loss_cost(kCost, x, 0.0) == doctest::Approx(11000).epsilon(1e-14));
    CHECK(stop_loss_cost(kCost, x, 10000) == doctest::Approx(11000 * std::exp(-1.0)).epsilon(1e-14));
    CHECK(stop_loss_cost(kCost, x, kInfinity) == 0.0);
    CHECK_THROWS_AS(stop_loss_cost(kCost, x, -1.0), DomainError);

    SUBCASE("closed form agrees with the generic quadrature") {
        const auto generic = LossModel::generic([](double y) { return std::exp(-y / 10000); });
        for (double d : {0.0, 500.0, 10000.0, 60000.0}) {
            CHECK(stop_loss_cost(kCost, generic, d) ==
                  doctest::Approx(1.1 * 10000 * std::exp(-d / 10000)).epsilon(1e-10));
        }
    }

    SUBCASE("nonincreasing and convex in d") {
        const auto lomax = LossModel::lomax(10000, 3.0);
        const CostFunctional ph{0.2, Distortion::proportional_hazard(0.8)};
        double prev = stop_loss_cost(ph, lomax, 0.0);
        double prev_diff = -kInfinity;
        for (int i = 1; i <= 40; ++i) {
            const double cur = stop_loss_cost(ph, lomax, 1000.0 * i);
            CHECK(cur <= prev + 1e-9);
            CHECK(cur - prev >= prev_diff - 1e-9);
            prev_diff = cur - prev;
            prev = cur;
        }
    }

    SUBCASE("a non-integrable tail is reported") {
        const auto heavy = LossModel::generic([](double y) { return 1.0 / (1.0 + y); });
        CHECK_THROWS_AS(stop_loss_cost(kCost, heavy, 0.0), DivergenceError);
    }
}

TEST_CASE("theta star and xi") {
    CHECK(theta_star(kCost, LossModel::exponential(1)) == doctest::Approx(std::log(1.1)).epsilon(1e-14));
    CHECK(theta_star(kCost, LossModel::exponential(25000)) == doctest::Approx(2382.7544951081).epsilon(1e-12));
    CHECK(xi(kCost, LossModel::exponential(10000)) == doctest::Approx(10953.101798043).epsilon(1e-12));
    CHECK(xi(kCost, LossModel::zero()) == 0.0);
    CHECK(b_curve(kCost, LossModel::exponential(1), 0.0) == doctest::Approx(-1.1).epsilon(1e-14));

    SUBCASE("theta star maximizes the concave curve B") {
        for (const auto& loss : {LossModel::exponential(7000), LossModel::lomax(7000, 2.5)}) {
            const double ts = theta_star(kCost, loss);
            const double best = b_curve(kCost, loss, ts);
            CHECK(best == doctest::Approx(-xi(kCost, loss)).epsilon(1e-12));
            for (int i = 0; i <= 60; ++i) {
                const double d = 100.0 * i;
                CHECK(b_curve(kCost, loss, d) <= best + 1e-9);
                const double d2 = d + 250.0;
                const double mid = b_curve(kCost, loss, 0.5 * (d + d2));
                CHECK(mid >= 0.5 * (b_curve(kCost, loss, d) + b_curve(kCost, loss, d2)) - 1e-9);
            }
        }
    }

    SUBCASE("bounded support that never reaches the level") {
        // F̄(y) = 1 on [0, 1): h(F̄) never drops to 1/(1+θ) before the end.
        const auto point = LossModel::generic([](double y) { return y < 1.0 ? 1.0 : 0.0; }, 1.0);
        CHECK(theta_star(kCost, point) == doctest::Approx(1.0));
    }

    SUBCASE("a large atom at zero makes theta star vanish") {
        CHECK(theta_star(kCost, LossModel::exponential(1000, 0.5)) == 0.0);
    }
}

TEST_CASE("cost functional validation") {
    CHECK_THROWS_AS((CostFunctional{0.0, Distortion::identity()}.validate()), DomainError);
    CHECK_NOTHROW((CostFunctional{0.3, Distortion::power(0.5)}.validate()));
}
