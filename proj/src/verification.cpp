#include "reinsure/verification.hpp"

#include "reinsure/change_loss.hpp"
#include "reinsure/errors.hpp"
#include "reinsure/quota_share.hpp"
#include "reinsure/stop_loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace reinsure::verification {

namespace {

constexpr double kSlopeTol = 1e-12;
constexpr std::size_t kReferencePool = 64;

nlohmann::json number(double x) {
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    return x;
}

struct Accumulator {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    MonteCarloEstimate result() const {
        const double variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
        return {mean, std::sqrt(variance / static_cast<double>(n)), n};
    }
};

void record(ViolationReport& report, const Violation& v, double tol) {
    ++report.checked;
    if (v.magnitude > report.max_violation) {
        report.max_violation = v.magnitude;
    }
    if (v.magnitude > tol) {
        report.pass = false;
        report.offenders.push_back(v);
    }
}

void finish(ViolationReport& report) {
    std::stable_sort(report.offenders.begin(), report.offenders.end(),
                     [](const Violation& x, const Violation& y) {
                         return x.magnitude > y.magnitude;
                     });
    if (report.offenders.size() > ViolationReport::kMaxOffenders) {
        report.offenders.resize(ViolationReport::kMaxOffenders);
    }
}

double profit_of(const MenuEntry& e, const CostFunctional& cost, const LossModel& loss) {
    return e.premium - e.contract.cost(cost, loss);
}

} // namespace

// ---------------------------------------------------------------------------
// Utilities in 𝒱

PiecewiseLinearConvexUtility::PiecewiseLinearConvexUtility(std::vector<Kink> kinks)
    : kinks_(std::move(kinks)) {
    double total = 0.0;
    for (const auto& k : kinks_) {
        if (!(k.t >= 0.0) || !std::isfinite(k.t)) {
            throw DomainError("utility kinks must be finite and nonnegative");
        }
        if (!(k.w >= 0.0)) {
            throw DomainError("utility slope increments must be nonnegative");
        }
        total += k.w;
    }
    if (total > 1.0 + kSlopeTol) {
        throw DomainError("utility slope must not exceed 1");
    }
    std::stable_sort(kinks_.begin(), kinks_.end(),
                     [](const Kink& x, const Kink& y) { return x.t < y.t; });
}

PiecewiseLinearConvexUtility PiecewiseLinearConvexUtility::call(double t) {
    if (std::isinf(t)) {
        return PiecewiseLinearConvexUtility{};
    }
    return PiecewiseLinearConvexUtility({{t, 1.0}});
}

PiecewiseLinearConvexUtility PiecewiseLinearConvexUtility::from_points(std::span<const double> xs,
                                                                       std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DomainError("need at least two interpolation points");
    }
    if (xs[0] != 0.0 || ys[0] != 0.0) {
        throw DomainError("utility must start at v(0) = 0");
    }
    std::vector<Kink> kinks;
    double prev_slope = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw DomainError("interpolation points must be strictly increasing");
        }
        const double slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        const double w = slope - prev_slope;
        if (w < -kSlopeTol) {
            throw DomainError("interpolant is not convex");
        }
        if (w > 0.0) {
            kinks.push_back({xs[i - 1], w});
        }
        prev_slope = slope;
    }
    return PiecewiseLinearConvexUtility(std::move(kinks));
}

double PiecewiseLinearConvexUtility::operator()(double a) const {
    double v = 0.0;
    for (const auto& k : kinks_) {
        v += k.w * std::max(a - k.t, 0.0);
    }
    return v;
}

double PiecewiseLinearConvexUtility::right_slope(double a) const {
    double s = 0.0;
    for (const auto& k : kinks_) {
        if (k.t <= a) {
            s += k.w;
        }
    }
    return s;
}

double PiecewiseLinearConvexUtility::left_slope(double a) const {
    double s = 0.0;
    for (const auto& k : kinks_) {
        if (k.t < a) {
            s += k.w;
        }
    }
    return s;
}

std::vector<Kink> bl_decompose(const PiecewiseLinearConvexUtility& v) {
    std::vector<Kink> out;
    for (const auto& k : v.kinks()) {
        if (k.w == 0.0) {
            continue;
        }
        if (!out.empty() && out.back().t == k.t) {
            out.back().w += k.w;
        } else {
            out.push_back(k);
        }
    }
    return out;
}

PiecewiseLinearConvexUtility random_utility(std::mt19937_64& rng, double lo, double hi,
                                            int max_kinks) {
    std::uniform_int_distribution<int> count(1, std::max(max_kinks, 1));
    std::uniform_real_distribution<double> where(lo, hi);
    std::exponential_distribution<double> gamma1(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = count(rng);
    std::vector<Kink> kinks(m);
    double total = 0.0;
    for (auto& k : kinks) {
        k.t = where(rng);
        k.w = gamma1(rng);
        total += k.w;
    }
    const double scale = 1.0 - unit(rng); // (0, 1]
    for (auto& k : kinks) {
        k.w = k.w / total * scale;
    }
    return PiecewiseLinearConvexUtility(std::move(kinks));
}

// ---------------------------------------------------------------------------
// Menus

GenericMenu tabulate(const MenuRule& rule, std::span<const TransformedType> types) {
    GenericMenu menu;
    menu.reserve(types.size());
    for (const auto& t : types) {
        menu.push_back({t, rule.entry(t)});
    }
    return menu;
}

double indirect_utility(const GenericMenu& menu, double a) {
    if (menu.empty()) {
        throw DomainError("indirect utility of an empty menu");
    }
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& e : menu) {
        best = std::max(best, e.entry.risk_reduction(a));
    }
    return best;
}

ViolationReport check_ic(const GenericMenu& menu,
                         std::span<const std::pair<std::size_t, std::size_t>> pairs, double tol) {
    ViolationReport report;
    for (const auto& [own, alt] : pairs) {
        if (own >= menu.size() || alt >= menu.size()) {
            throw DomainError("IC pair refers to a missing menu entry");
        }
        const double a = menu[own].type.a;
        const double gain = menu[alt].entry.risk_reduction(a) - menu[own].entry.risk_reduction(a);
        record(report, {own, alt, gain}, tol);
    }
    finish(report);
    return report;
}

ViolationReport check_ic(const GenericMenu& menu, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(menu.size() * menu.size());
    for (std::size_t i = 0; i < menu.size(); ++i) {
        for (std::size_t j = 0; j < menu.size(); ++j) {
            if (i != j) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return check_ic(menu, pairs, tol);
}

ViolationReport check_ir(const GenericMenu& menu, std::span<const std::size_t> own, double tol) {
    ViolationReport report;
    for (std::size_t i : own) {
        if (i >= menu.size()) {
            throw DomainError("IR check refers to a missing menu entry");
        }
        const double shortfall = -menu[i].entry.risk_reduction(menu[i].type.a);
        record(report, {i, i, shortfall}, tol);
    }
    finish(report);
    return report;
}

ViolationReport check_ir(const GenericMenu& menu, double tol) {
    std::vector<std::size_t> own(menu.size());
    std::iota(own.begin(), own.end(), std::size_t{0});
    return check_ir(menu, own, tol);
}

nlohmann::json to_json(const ViolationReport& report) {
    nlohmann::json offenders = nlohmann::json::array();
    for (const auto& v : report.offenders) {
        offenders.push_back({{"own", v.own}, {"alternative", v.alternative},
                             {"magnitude", number(v.magnitude)}});
    }
    return {{"pass", report.pass},
            {"max_violation", number(report.max_violation)},
            {"checked", report.checked},
            {"offenders", offenders}};
}

// ---------------------------------------------------------------------------
// General objective

double j_general(const PiecewiseLinearConvexUtility& v, const TypeDistribution& dist,
                 const CostFunctional& cost, ContractClass cls, const QuadratureOptions& opts) {
    const auto parts = bl_decompose(v);
    if (parts.empty()) {
        return 0.0;
    }
    if (cls == ContractClass::stop_loss) {
        if (parts.size() != 1 || std::abs(parts.front().w - 1.0) > kSlopeTol) {
            throw UnsupportedError(
                "stop-loss menus only admit indirect utilities of the form (a - t)_+");
        }
        return stop_loss::objective(parts.front().t, dist, cost, opts);
    }
    if (cls == ContractClass::change_loss) {
        const auto check = change_loss::assumption_check(dist, cost);
        if (!check.holds) {
            throw UnsupportedError("change-loss objective needs sup theta* <= L");
        }
    }
    SliceFactory make = [&](double k) -> Slice {
        const LossModel loss = dist.loss(k);
        const double c = cls == ContractClass::quota_share ? quota_share::full_cost(cost, loss)
                                                           : xi(cost, loss);
        return [&v, c](double a) {
            const double slope = a >= c ? v.right_slope(a) : v.left_slope(a);
            return slope * (a - c) - v(a);
        };
    };
    std::vector<double> a_breaks;
    a_breaks.reserve(parts.size());
    for (const auto& p : parts) {
        a_breaks.push_back(p.t);
    }
    return integrate_slices(dist, make, a_breaks, {}, opts);
}

// ---------------------------------------------------------------------------
// First-best failure

FirstBestReport first_best_demo(const TransformedType& high, const TransformedType& low,
                                const TypeDistribution& dist, const CostFunctional& cost) {
    if (!(low.a < high.a)) {
        throw DomainError("first-best demo needs the mimicked type to have a smaller a");
    }
    auto first_best = [&](const TransformedType& t) {
        const LossModel loss = dist.loss(t.k);
        const LossSummary s = summarize(cost, loss);
        const double d = t.a >= s.xi ? s.theta_star : kInfinity;
        const Contract c = Contract::stop_loss(d);
        return MenuEntry{c, c.indemnity(t.a)};
    };
    const MenuEntry fb_high = first_best(high);
    const MenuEntry fb_low = first_best(low);
    const LossModel x_high = dist.loss(high.k);

    FirstBestReport r;
    r.high = high;
    r.low = low;
    r.deductible_high = fb_high.contract.deductible;
    r.deductible_low = fb_low.contract.deductible;
    r.risk_reduction_high = fb_high.risk_reduction(high.a);
    r.risk_reduction_low = fb_low.risk_reduction(low.a);
    r.mimic_gain = fb_low.risk_reduction(high.a);
    const double low_cost = fb_low.contract.cost(cost, x_high);
    r.mimic_profit = fb_low.premium - low_cost;
    r.mimic_bound = fb_low.contract.indemnity(high.a) - low_cost;
    r.first_best_profit = profit_of(fb_high, cost, x_high);
    const double slack =
        1e-12 * std::max({1.0, std::abs(r.mimic_bound), std::abs(r.first_best_profit)});
    r.chain_holds = r.mimic_gain >= 0.0 && r.mimic_profit <= r.mimic_bound + slack &&
                    r.mimic_bound <= r.first_best_profit + slack;
    return r;
}

nlohmann::json to_json(const FirstBestReport& r) {
    return {{"contract_class", "stop_loss"},
            {"high", {{"a", r.high.a}, {"k", r.high.k}}},
            {"low", {{"a", r.low.a}, {"k", r.low.k}}},
            {"deductible_high", number(r.deductible_high)},
            {"deductible_low", number(r.deductible_low)},
            {"risk_reduction_high", r.risk_reduction_high},
            {"risk_reduction_low", r.risk_reduction_low},
            {"mimic_gain", r.mimic_gain},
            {"mimic_profit", r.mimic_profit},
            {"mimic_bound", r.mimic_bound},
            {"first_best_profit", r.first_best_profit},
            {"chain_holds", r.chain_holds}};
}

// ---------------------------------------------------------------------------
// Monte Carlo

MonteCarloEstimate monte_carlo_profit(const MenuRule& menu, const TypeDistribution& dist,
                                      const CostFunctional& cost, std::size_t n,
                                      std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("Monte Carlo needs at least one sample");
    }
    std::mt19937_64 pool_rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<MenuEntry> pool;
    pool.reserve(kReferencePool + 1);
    for (std::size_t i = 0; i < kReferencePool; ++i) {
        pool.push_back(menu.entry(dist.sample(pool_rng)));
    }
    pool.push_back({Contract{menu.contract_class(), 0.0, kInfinity}, 0.0});

    std::mt19937_64 rng(seed);
    Accumulator acc;
    for (std::size_t i = 0; i < n; ++i) {
        const TransformedType type = dist.sample(rng);
        MenuEntry chosen = menu.entry(type);
        double best = chosen.risk_reduction(type.a);
        for (const auto& alt : pool) {
            const double r = alt.risk_reduction(type.a);
            if (r > best) {
                best = r;
                chosen = alt;
            }
        }
        acc.add(profit_of(chosen, cost, dist.loss(type.k)));
    }
    return acc.result();
}

MonteCarloEstimate monte_carlo_profit(const GenericMenu& menu, const TypeDistribution& dist,
                                      const CostFunctional& cost, std::size_t n,
                                      std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("Monte Carlo needs at least one sample");
    }
    if (menu.empty()) {
        throw DomainError("Monte Carlo needs a nonempty menu");
    }
    double a_lo = kInfinity, a_hi = -kInfinity, k_lo = kInfinity, k_hi = -kInfinity;
    for (const auto& e : menu) {
        a_lo = std::min(a_lo, e.type.a);
        a_hi = std::max(a_hi, e.type.a);
        k_lo = std::min(k_lo, e.type.k);
        k_hi = std::max(k_hi, e.type.k);
    }
    const double a_span = a_hi > a_lo ? a_hi - a_lo : 1.0;
    const double k_span = k_hi > k_lo ? k_hi - k_lo : 1.0;

    std::mt19937_64 rng(seed);
    Accumulator acc;
    for (std::size_t i = 0; i < n; ++i) {
        const TransformedType type = dist.sample(rng);
        std::size_t own = 0;
        double nearest = kInfinity;
        for (std::size_t j = 0; j < menu.size(); ++j) {
            const double da = (menu[j].type.a - type.a) / a_span;
            const double dk = (menu[j].type.k - type.k) / k_span;
            const double dist2 = da * da + dk * dk;
            if (dist2 < nearest) {
                nearest = dist2;
                own = j;
            }
        }
        const MenuEntry* chosen = &menu[own].entry;
        double best = chosen->risk_reduction(type.a);
        for (const auto& e : menu) {
            const double r = e.entry.risk_reduction(type.a);
            if (r > best) {
                best = r;
                chosen = &e.entry;
            }
        }
        acc.add(profit_of(*chosen, cost, dist.loss(type.k)));
    }
    return acc.result();
}

} // namespace reinsure::verification
