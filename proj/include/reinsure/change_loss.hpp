#pragma once

#include "reinsure/solver_common.hpp"

namespace reinsure::change_loss {

/// Result of checking sup_k θ*_k <= L.
struct AssumptionCheck {
    double sup_theta_star = 0.0;
    double lower_support = 0.0;
    bool holds = false;
};

AssumptionCheck assumption_check(const TypeDistribution& dist, const CostFunctional& cost);

/// Optimal change-loss menu. Served types (λ = 1) get deductible θ*_k and
/// premium τ* - θ*_k; the rest get λ = 0 with the deductible reported as +∞.
class ChangeLossMenu : public MenuRule {
public:
    ChangeLossMenu(double tau_star, double objective, CostFunctional cost, LossFamily family);

    ContractClass contract_class() const override { return ContractClass::change_loss; }
    double kink() const override { return tau_star_; }
    double objective() const { return objective_; }
    MenuEntry entry(const TransformedType& type) const override;

private:
    double tau_star_;
    double objective_;
    CostFunctional cost_;
    LossFamily family_;
};

/// J[φ_t] = ∫ {1_{t<=a}(a - ξ_k) - (a - t)_+} dQ - ∫_{a < ξ_k} 1_{t=a}(a - ξ_k) dQ.
/// Throws UnsupportedError when the assumption fails.
double j_phi_cl(double t, const TypeDistribution& dist, const CostFunctional& cost,
                const QuadratureOptions& opts = {});

/// Maximizes J[φ_t] over [L, sup a] ∪ {+∞}. Throws UnsupportedError when the
/// assumption fails.
ChangeLossMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                     const SolverOptions& opts = {});

} // namespace reinsure::change_loss
