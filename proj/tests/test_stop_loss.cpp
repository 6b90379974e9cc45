#include "oracles.hpp"
#include "reinsure/stop_loss.hpp"

#include <doctest.h>

#include <cmath>

using namespace reinsure;

namespace {
const CostFunctional kCost{0.1, Distortion::identity()};

TypeDistribution uniform_market() {
    return TypeDistribution::product_log_alpha({5000, 25000}, -3, -2, LossFamily::exponential());
}
TypeDistribution fixed_market() {
    return TypeDistribution::degenerate_log_alpha({5000, 25000}, -3, LossFamily::exponential());
}
} // namespace

TEST_CASE("optimal deductible branches") {
    const auto x = LossModel::exponential(10000);
    const double ts = 10000 * std::log(1.1);
    CHECK(stop_loss::optimal_deductible(38861.6, {40000, 10000}, kCost, x) == doctest::Approx(ts));
    CHECK(stop_loss::optimal_deductible(500, {40000, 10000}, kCost, x) == 500);
    CHECK(stop_loss::optimal_deductible(38861.6, {30000, 10000}, kCost, x) == kInfinity);
    // a = τ: served only when a >= ξ_k ≈ 10953.1.
    CHECK(stop_loss::optimal_deductible(10000, {10000, 10000}, kCost, x) == kInfinity);
    CHECK(stop_loss::optimal_deductible(12000, {12000, 10000}, kCost, x) == doctest::Approx(ts));
}

TEST_CASE("phi reproduces the exponential branches") {
    const double k = 10000;
    const auto x = LossModel::exponential(k);
    CHECK(stop_loss::phi(20000, {30000, k}, kCost, x) ==
          doctest::Approx(20000 - k * (1 + std::log(1.1))).epsilon(1e-13));
    CHECK(stop_loss::phi(500, {30000, k}, kCost, x) ==
          doctest::Approx(-1.1 * k * std::exp(-500 / k)).epsilon(1e-13));
    CHECK(stop_loss::phi(35000, {30000, k}, kCost, x) == 0.0);
}

TEST_CASE("objective against closed forms") {
    CHECK(stop_loss::objective(kInfinity, uniform_market(), kCost) == 0.0);
    for (double tau : {16000.0, 30000.0, 45874.46, 70000.0}) {
        CHECK(stop_loss::objective(tau, fixed_market(), kCost) ==
              doctest::Approx(oracle::fixed_alpha_stop_loss_j(tau)).epsilon(1e-9));
    }
    for (double tau : {1500.0, 9000.0, 20000.0, 38861.0, 60000.0}) {
        CHECK(stop_loss::objective(tau, uniform_market(), kCost) ==
              doctest::Approx(oracle::stop_loss_j(tau)).epsilon(1e-9));
    }
}

TEST_CASE("objective is nondecreasing below L") {
    const auto d = uniform_market();
    double prev = stop_loss::objective(0.0, d, kCost);
    for (int i = 1; i <= 100; ++i) {
        const double cur = stop_loss::objective(100.0 * i, d, kCost);
        CHECK(cur >= prev - 1e-9);
        prev = cur;
    }
}

TEST_CASE("solve on the fixed-alpha market") {
    const auto menu = stop_loss::solve(fixed_market(), kCost);
    const double exact = 225000 / (5 - std::log(1.1));
    CHECK(menu.kink() == doctest::Approx(exact).epsilon(1e-6));
    for (int i = 0; i <= 200; ++i) {
        const double tau = 15000 + 300.0 * i;
        CHECK(menu.objective() >= stop_loss::objective(tau, fixed_market(), kCost) - 1e-9);
    }
    const auto served = menu.entry({60000, 20000});
    CHECK(served.contract.deductible == doctest::Approx(20000 * std::log(1.1)).epsilon(1e-13));
    CHECK(served.premium == doctest::Approx(menu.kink() - 20000 * std::log(1.1)).epsilon(1e-13));
    const auto shut = menu.entry({30000, 10000});
    CHECK(shut.contract.deductible == kInfinity);
    CHECK(shut.premium == 0.0);
}

TEST_CASE("single-atom market extracts the full surplus") {
    const auto d = TypeDistribution::discrete({{std::exp(-3.0), 10000, 1.0}}, LossFamily::exponential());
    const auto menu = stop_loss::solve(d, kCost);
    CHECK(menu.kink() == doctest::Approx(30000).epsilon(1e-12));
    CHECK(menu.objective() == doctest::Approx(30000 - 10000 * (1 + std::log(1.1))).epsilon(1e-12));
}

TEST_CASE("unprofitable markets shut down") {
    // VaR below ξ_k for every type: a = k ln(1/0.9) << k(1 + ln 1.1).
    const auto d = TypeDistribution::product({1000, 2000}, 0.8, 0.9, LossFamily::exponential());
    const auto menu = stop_loss::solve(d, kCost, {1001, 1e-6, {}});
    CHECK(menu.kink() == kInfinity);
    CHECK(menu.entry({200, 1500}).contract.is_null());
}
