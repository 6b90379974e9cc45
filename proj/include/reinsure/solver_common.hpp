#pragma once

#include "reinsure/menu.hpp"
#include "reinsure/risk_model.hpp"
#include "reinsure/type_space.hpp"

#include <functional>
#include <vector>

namespace reinsure {

struct SolverOptions {
    int grid_points = 10001;
    double refine_tol = 1e-6;
    QuadratureOptions quadrature{};
};

/// Per-k quantities every solver needs: θ*_k, ξ_k and H[X_k].
struct LossSummary {
    double theta_star = 0.0;
    double xi = 0.0;
    double full_cost = 0.0;
};

LossSummary summarize(const CostFunctional& cost, const LossModel& loss);

struct KinkSearch {
    double tau_star = kInfinity;
    double value = 0.0;
};

/// Maximizes J over [lo, hi] ∪ {+∞} with J(+∞) = 0.
///
/// Evaluates J on an equally spaced grid, keeps the first (smallest) best
/// point, then runs golden-section search on the neighbouring grid cells.
/// Returns τ = +∞ when no finite point beats 0.
KinkSearch maximize_kink(const std::function<double(double)>& objective, double lo, double hi,
                         const SolverOptions& opts);

/// The threshold rule shared by the optimal menus: the kink τ*, the
/// contract class, and what the menu hands to an agent of type (a, k).
struct MenuRule {
    virtual ~MenuRule() = default;
    virtual ContractClass contract_class() const = 0;
    virtual double kink() const = 0;
    virtual MenuEntry entry(const TransformedType& type) const = 0;
};

} // namespace reinsure
