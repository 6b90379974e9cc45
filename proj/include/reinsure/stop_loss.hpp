#pragma once

#include "reinsure/solver_common.hpp"

namespace reinsure::stop_loss {

/// Optimal stop-loss menu: types with a > τ* buy (X - min(θ*_k, τ*))_+ at
/// premium τ* - min(θ*_k, τ*); types below τ* get the null policy.
class StopLossMenu : public MenuRule {
public:
    StopLossMenu(double tau_star, double objective, CostFunctional cost, LossFamily family);

    ContractClass contract_class() const override { return ContractClass::stop_loss; }
    double kink() const override { return tau_star_; }
    double objective() const { return objective_; }
    MenuEntry entry(const TransformedType& type) const override;

private:
    double tau_star_;
    double objective_;
    CostFunctional cost_;
    LossFamily family_;
};

/// d*_(a,k)(τ): θ*∧τ for a > τ; θ* for a = τ ≥ ξ; +∞ otherwise.
double optimal_deductible(double tau, const TransformedType& type, const CostFunctional& cost,
                          const LossModel& loss);

/// Φ_(a,k)(τ) = (a - d*)_+ - H[(X - d*)_+] - (a - τ)_+.
double phi(double tau, const TransformedType& type, const CostFunctional& cost,
           const LossModel& loss);

/// ∫ Φ_(a,k)(τ) Q(da × dk); 0 at τ = +∞.
double objective(double tau, const TypeDistribution& dist, const CostFunctional& cost,
                 const QuadratureOptions& opts = {});

/// Maximizes the objective over [L, sup a] ∪ {+∞}.
StopLossMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                   const SolverOptions& opts = {});

} // namespace reinsure::stop_loss
