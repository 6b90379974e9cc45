#pragma once

#include "reinsure/menu.hpp"
#include "reinsure/solver_common.hpp"
#include "reinsure/type_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace reinsure::verification {

/// One call-payoff component w (a - t)_+ of a utility in 𝒱.
struct Kink {
    double t = 0.0;
    double w = 0.0;
};

/// v(a) = Σ w_i (a - t_i)_+ with t_i >= 0, w_i >= 0 and Σ w_i <= 1: an
/// increasing, convex, 1-Lipschitz function with v(0) = 0.
class PiecewiseLinearConvexUtility {
public:
    PiecewiseLinearConvexUtility() = default;
    /// Throws DomainError if the kinks leave 𝒱.
    explicit PiecewiseLinearConvexUtility(std::vector<Kink> kinks);

    /// φ_t(a) = (a - t)_+; φ_∞ ≡ 0.
    static PiecewiseLinearConvexUtility call(double t);
    /// Piecewise-linear interpolant of (x_i, y_i) with x_0 = 0, y_0 = 0; the
    /// last slope continues past x_n.
    static PiecewiseLinearConvexUtility from_points(std::span<const double> xs,
                                                    std::span<const double> ys);

    double operator()(double a) const;
    double right_slope(double a) const;
    /// v'_-(a), with v'_-(0) = 0.
    double left_slope(double a) const;
    const std::vector<Kink>& kinks() const { return kinks_; }

private:
    std::vector<Kink> kinks_;
};

/// Kinks with their slope increments, sorted by location, zero increments
/// dropped and coincident kinks merged.
std::vector<Kink> bl_decompose(const PiecewiseLinearConvexUtility& v);

/// Draws a random element of 𝒱 with 1..max_kinks kinks uniform on [lo, hi]
/// and increments s·Dirichlet(1,...,1), s ~ U(0, 1].
PiecewiseLinearConvexUtility random_utility(std::mt19937_64& rng, double lo, double hi,
                                            int max_kinks);

/// A menu entry labelled with the type it was designed for.
struct TypedEntry {
    TransformedType type;
    MenuEntry entry;
};

using GenericMenu = std::vector<TypedEntry>;

/// Evaluates a menu rule at each of the given types.
GenericMenu tabulate(const MenuRule& rule, std::span<const TransformedType> types);

/// v_M(a) = max over entries of I(a) - P. Throws DomainError on an empty menu.
double indirect_utility(const GenericMenu& menu, double a);

inline constexpr double kAuditTolerance = 1e-9;

struct Violation {
    std::size_t own = 0;
    std::size_t alternative = 0;
    double magnitude = 0.0;
};

struct ViolationReport {
    bool pass = true;
    double max_violation = 0.0;
    std::size_t checked = 0;
    /// At most kMaxOffenders worst offenders, largest first.
    std::vector<Violation> offenders;

    static constexpr std::size_t kMaxOffenders = 50;
};

/// Incentive compatibility on (own, alternative) entry pairs: the agent of
/// the own entry's type must not gain by taking the alternative.
ViolationReport check_ic(const GenericMenu& menu,
                         std::span<const std::pair<std::size_t, std::size_t>> pairs,
                         double tol = kAuditTolerance);
/// All ordered pairs.
ViolationReport check_ic(const GenericMenu& menu, double tol = kAuditTolerance);

/// Individual rationality I(a) - P >= 0 at each listed entry.
ViolationReport check_ir(const GenericMenu& menu, std::span<const std::size_t> own,
                         double tol = kAuditTolerance);
ViolationReport check_ir(const GenericMenu& menu, double tol = kAuditTolerance);

nlohmann::json to_json(const ViolationReport& report);

/// Class-specific objective J[v] of the best menu with indirect utility v.
///
/// quota_share: ∫ v'_±(a)(a - H[X_k]) - v(a) dQ, right slope where a >= H[X_k]
/// change_loss: same with ξ_k in place of H[X_k]; needs sup θ* <= L
/// stop_loss:   only v = φ_t is feasible; other v throw UnsupportedError
double j_general(const PiecewiseLinearConvexUtility& v, const TypeDistribution& dist,
                 const CostFunctional& cost, ContractClass cls,
                 const QuadratureOptions& opts = {});

/// Mimicry under first-best pricing, with first-best indemnities taken
/// within the stop-loss class (d = θ*_k when a >= ξ_k, else no cover).
struct FirstBestReport {
    TransformedType high;
    TransformedType low;
    double deductible_high = 0.0;
    double deductible_low = 0.0;
    double risk_reduction_high = 0.0;
    double risk_reduction_low = 0.0;
    /// I_low(a_high) - P_low.
    double mimic_gain = 0.0;
    /// P_low - H[I_low(X_high)].
    double mimic_profit = 0.0;
    /// I_low(a_high) - H[I_low(X_high)].
    double mimic_bound = 0.0;
    /// I_high(a_high) - H[I_high(X_high)].
    double first_best_profit = 0.0;
    bool chain_holds = false;
};

/// Throws DomainError unless low.a < high.a.
FirstBestReport first_best_demo(const TransformedType& high, const TransformedType& low,
                                const TypeDistribution& dist, const CostFunctional& cost);

nlohmann::json to_json(const FirstBestReport& report);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

/// Samples n types, lets each pick the entry maximizing I(a) - P among its
/// own entry, the entries designed for a fixed pool of 64 reference types,
/// and the null contract (ties keep the own entry), and averages
/// P - H[I(X_k)]. Deterministic for a given seed.
MonteCarloEstimate monte_carlo_profit(const MenuRule& menu, const TypeDistribution& dist,
                                      const CostFunctional& cost, std::size_t n,
                                      std::uint64_t seed);

/// Same for a finite menu; a sampled type's own entry is the one designed for
/// the nearest type in (a, k).
MonteCarloEstimate monte_carlo_profit(const GenericMenu& menu, const TypeDistribution& dist,
                                      const CostFunctional& cost, std::size_t n,
                                      std::uint64_t seed);

} // namespace reinsure::verification
