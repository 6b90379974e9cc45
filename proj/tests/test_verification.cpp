#include "reinsure/errors.hpp"
#include "reinsure/quota_share.hpp"
#include "reinsure/stop_loss.hpp"
#include "reinsure/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace reinsure;
using namespace reinsure::verification;

namespace {
const CostFunctional kCost{0.1, Distortion::identity()};

TypeDistribution fixed_market() {
    return TypeDistribution::degenerate_log_alpha({5000, 25000}, -3, LossFamily::exponential());
}

TypedEntry stop_loss_entry(double d, double premium) {
    return {{0, 0}, {Contract::stop_loss(d), premium}};
}
} // namespace

TEST_CASE("utilities in V") {
    const auto v = PiecewiseLinearConvexUtility({{10, 0.3}, {20, 0.2}});
    CHECK(v(0) == 0.0);
    CHECK(v(15) == doctest::Approx(1.5));
    CHECK(v(30) == doctest::Approx(0.3 * 20 + 0.2 * 10));
    CHECK(v.right_slope(10) == doctest::Approx(0.3));
    CHECK(v.left_slope(10) == 0.0);
    CHECK(v.left_slope(0) == 0.0);
    CHECK_THROWS_AS(PiecewiseLinearConvexUtility({{1, 0.7}, {2, 0.6}}), DomainError);
    CHECK_THROWS_AS(PiecewiseLinearConvexUtility({{1, -0.1}}), DomainError);
}

TEST_CASE("Breeden-Litzenberger decomposition") {
    auto kinks = bl_decompose(PiecewiseLinearConvexUtility::call(7));
    REQUIRE(kinks.size() == 1);
    CHECK(kinks[0].t == 7);
    CHECK(kinks[0].w == 1);

    const std::vector<double> xs = {0, 5};
    const std::vector<double> ys = {0, 5};
    kinks = bl_decompose(PiecewiseLinearConvexUtility::from_points(xs, ys));
    REQUIRE(kinks.size() == 1);
    CHECK(kinks[0].t == 0);
    CHECK(kinks[0].w == 1);

    const std::vector<double> px = {0, 10, 20, 40};
    const std::vector<double> py = {0, 0, 3, 13};
    const auto v = PiecewiseLinearConvexUtility::from_points(px, py);
    kinks = bl_decompose(v);
    REQUIRE(kinks.size() == 2);
    CHECK(kinks[0].t == 10);
    CHECK(kinks[0].w == doctest::Approx(0.3));
    CHECK(kinks[1].t == 20);
    CHECK(kinks[1].w == doctest::Approx(0.2));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = random_utility(rng, 0, 100, 5);
        const auto parts = bl_decompose(r);
        for (int i = 0; i <= 200; ++i) {
            const double a = 0.75 * i;
            double rebuilt = 0.0;
            for (const auto& p : parts) {
                rebuilt += p.w * std::max(a - p.t, 0.0);
            }
            CHECK(std::abs(rebuilt - r(a)) <= 1e-12 * std::max(1.0, r(a)));
        }
    }
}

TEST_CASE("indirect utility") {
    const GenericMenu two = {stop_loss_entry(0, 5), stop_loss_entry(10, 0)};
    CHECK(indirect_utility(two, 12) == doctest::Approx(7));
    const GenericMenu null = {{{0, 0}, {Contract::stop_loss(kInfinity), 0}}};
    CHECK(indirect_utility(null, 1234) == 0.0);
    CHECK_THROWS_AS(indirect_utility(GenericMenu{}, 1), DomainError);
}

TEST_CASE("IC and IR audits") {
    const auto menu = stop_loss::solve(fixed_market(), kCost);
    std::vector<TransformedType> types;
    for (int i = 0; i <= 100; ++i) {
        const double k = 5000 + 200.0 * i;
        types.push_back({3 * k, k});
    }
    const auto table = tabulate(menu, types);
    CHECK(check_ic(table).pass);
    CHECK(check_ir(table).pass);

    SUBCASE("indirect utility is (a - tau*)_+ and independent of k") {
        for (int i = 0; i <= 300; ++i) {
            const double a = 250.0 * i;
            CHECK(std::abs(indirect_utility(table, a) - std::max(a - menu.kink(), 0.0)) <= 1e-9);
        }
        for (const auto& e : table) {
            const double a = e.type.a;
            CHECK(std::abs(e.entry.risk_reduction(a) - std::max(a - menu.kink(), 0.0)) <= 1e-9);
        }
    }

    SUBCASE("a raised premium breaks IC") {
        auto broken = table;
        broken.back().entry.premium += 1.0;
        const auto report = check_ic(broken);
        CHECK_FALSE(report.pass);
        CHECK(report.max_violation == doctest::Approx(1.0));
        CHECK(report.offenders.front().own == broken.size() - 1);
    }

    SUBCASE("premium above the indemnity breaks IR") {
        GenericMenu bad = {{{100, 10}, {Contract::stop_loss(0), 101}}};
        CHECK_FALSE(check_ir(bad).pass);
        GenericMenu zero = {{{100, 10}, {Contract::stop_loss(kInfinity), 0}}};
        const auto report = check_ir(zero);
        CHECK(report.pass);
        CHECK(report.max_violation == 0.0);
        CHECK(check_ic(zero).pass);
    }
}

TEST_CASE("j_general") {
    const auto d = fixed_market();
    const auto zero = PiecewiseLinearConvexUtility{};
    CHECK(j_general(zero, d, kCost, ContractClass::quota_share) == 0.0);
    const auto call = PiecewiseLinearConvexUtility::call(30000);
    CHECK(j_general(call, d, kCost, ContractClass::quota_share) ==
          doctest::Approx(quota_share::j_phi(30000, d, kCost)).epsilon(1e-10));
    CHECK(j_general(call, d, kCost, ContractClass::stop_loss) ==
          doctest::Approx(stop_loss::objective(30000, d, kCost)).epsilon(1e-12));
    const auto mix = PiecewiseLinearConvexUtility({{20000, 0.5}, {50000, 0.5}});
    CHECK(j_general(mix, d, kCost, ContractClass::quota_share) ==
          doctest::Approx(0.5 * quota_share::j_phi(20000, d, kCost) +
                          0.5 * quota_share::j_phi(50000, d, kCost))
              .epsilon(1e-9));
    CHECK_THROWS_AS(j_general(mix, d, kCost, ContractClass::stop_loss), UnsupportedError);
}

TEST_CASE("first-best demo") {
    const auto d = TypeDistribution::product_log_alpha({5000, 25000}, -3, -2, LossFamily::exponential());
    const auto r = first_best_demo({45000, 15000}, {30000, 15000}, d, kCost);
    CHECK(r.risk_reduction_high == doctest::Approx(0.0));
    CHECK(r.risk_reduction_low == doctest::Approx(0.0));
    CHECK(r.mimic_gain > 0.0);
    CHECK(r.mimic_gain == doctest::Approx(15000));
    CHECK(r.chain_holds);
    CHECK_THROWS_AS(first_best_demo({30000, 15000}, {30000, 15000}, d, kCost), DomainError);

    // The low type is shut down (a below ξ), so there is nothing to mimic.
    const auto none = first_best_demo({45000, 15000}, {12000, 15000}, d, kCost);
    CHECK(none.deductible_low == kInfinity);
    CHECK(none.mimic_gain == 0.0);
    CHECK(none.chain_holds);
}

TEST_CASE("Monte Carlo profit") {
    const auto d = fixed_market();
    const stop_loss::StopLossMenu shut(kInfinity, 0.0, kCost, LossFamily::exponential());
    const auto zero = monte_carlo_profit(shut, d, kCost, 1000, 1);
    CHECK(zero.estimate == 0.0);
    CHECK(zero.std_error == 0.0);

    const auto atom = TypeDistribution::discrete({{std::exp(-3.0), 10000, 1.0}}, LossFamily::exponential());
    const auto menu = stop_loss::solve(atom, kCost);
    const auto est = monte_carlo_profit(menu, atom, kCost, 100, 5);
    CHECK(est.estimate == doctest::Approx(menu.objective()).epsilon(1e-12));
    CHECK(est.std_error == doctest::Approx(0.0).epsilon(1e-9));

    const auto solved = stop_loss::solve(d, kCost);
    const auto a = monte_carlo_profit(solved, d, kCost, 20000, 11);
    const auto b = monte_carlo_profit(solved, d, kCost, 20000, 11);
    CHECK(a.estimate == b.estimate);
    CHECK(std::abs(a.estimate - solved.objective()) <= 4 * a.std_error);
}
