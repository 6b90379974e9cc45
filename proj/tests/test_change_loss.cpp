#include "reinsure/change_loss.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/stop_loss.hpp"

#include <doctest.h>

#include <cmath>

using namespace reinsure;

namespace {
const CostFunctional kCost{0.1, Distortion::identity()};

TypeDistribution uniform_market() {
    return TypeDistribution::product_log_alpha({5000, 25000}, -3, -2, LossFamily::exponential());
}
} // namespace

TEST_CASE("assumption check") {
    const auto check = change_loss::assumption_check(uniform_market(), kCost);
    CHECK(check.sup_theta_star == doctest::Approx(25000 * std::log(1.1)).epsilon(1e-14));
    CHECK(check.lower_support == 10000.0);
    CHECK(check.holds);

    const CostFunctional steep{10.0, Distortion::identity()};
    const auto tight = TypeDistribution::product({5000, 25000}, 0.3, 0.4, LossFamily::exponential());
    CHECK_FALSE(change_loss::assumption_check(tight, steep).holds);
    CHECK_THROWS_AS(change_loss::j_phi_cl(20000, tight, steep), UnsupportedError);
    CHECK_THROWS_AS(change_loss::solve(tight, steep), UnsupportedError);
}

TEST_CASE("single-type boundary theta star = L holds") {
    // a = k ln(1/α) = k ln 1.1 = θ*_k when α = 1/1.1.
    const auto d = TypeDistribution::discrete({{1.0 / 1.1, 10000, 1.0}}, LossFamily::exponential());
    const auto check = change_loss::assumption_check(d, kCost);
    CHECK(check.sup_theta_star == doctest::Approx(check.lower_support).epsilon(1e-14));
}

TEST_CASE("j_phi_cl coincides with the stop-loss objective above sup theta star") {
    CHECK(change_loss::j_phi_cl(kInfinity, uniform_market(), kCost) == 0.0);
    for (double t : {2500.0, 9000.0, 24000.0, 38000.0, 70000.0}) {
        const double cl = change_loss::j_phi_cl(t, uniform_market(), kCost);
        const double sl = stop_loss::objective(t, uniform_market(), kCost);
        CHECK(std::abs(cl - sl) <= 1e-8 * std::max(std::abs(sl), 1.0));
    }
}

TEST_CASE("one-atom market extracts the surplus") {
    const double k = 10000;
    const auto d = TypeDistribution::discrete({{std::exp(-3.0), k, 1.0}}, LossFamily::exponential());
    const double xi = k * (1 + std::log(1.1));
    CHECK(change_loss::j_phi_cl(20000, d, kCost) == doctest::Approx(20000 - xi).epsilon(1e-13));
    const auto menu = change_loss::solve(d, kCost);
    CHECK(menu.kink() == doctest::Approx(30000).epsilon(1e-12));
    const auto e = menu.entry({30000, k});
    CHECK(e.contract.lambda == 1.0);
    CHECK(e.contract.deductible == doctest::Approx(k * std::log(1.1)).epsilon(1e-13));
    CHECK(e.premium == doctest::Approx(30000 - k * std::log(1.1)).epsilon(1e-13));
}

TEST_CASE("menu entries") {
    const change_loss::ChangeLossMenu menu(38861.6, 1.0, kCost, LossFamily::exponential());
    const auto served = menu.entry({50000, 20000});
    CHECK(served.contract.lambda == 1.0);
    CHECK(served.contract.deductible == doctest::Approx(20000 * std::log(1.1)).epsilon(1e-13));
    const auto shut = menu.entry({20000, 8000});
    CHECK(shut.contract.lambda == 0.0);
    CHECK(shut.premium == 0.0);
    CHECK(shut.contract.deductible == kInfinity);
}
