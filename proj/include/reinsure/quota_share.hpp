#pragma once

#include "reinsure/solver_common.hpp"

namespace reinsure::quota_share {

/// Optimal quota-share menu: full reinsurance at premium τ* for a > τ*
/// (and for a = τ* when a >= H[X_k]), the null policy otherwise.
class QuotaShareMenu : public MenuRule {
public:
    QuotaShareMenu(double tau_star, double objective, CostFunctional cost, LossFamily family);

    ContractClass contract_class() const override { return ContractClass::quota_share; }
    double kink() const override { return tau_star_; }
    double objective() const { return objective_; }
    MenuEntry entry(const TransformedType& type) const override;

private:
    double tau_star_;
    double objective_;
    CostFunctional cost_;
    LossFamily family_;
};

/// H[X_k].
double full_cost(const CostFunctional& cost, const LossModel& loss);

/// J[φ_t] = ∫ {1_{t<=a}(a - H[X_k]) - (a - t)_+} dQ
///          - ∫_{a < H[X_k]} 1_{t=a}(a - H[X_k]) dQ.
/// The second term only matters when Q has atoms at a = t.
double j_phi(double t, const TypeDistribution& dist, const CostFunctional& cost,
             const QuadratureOptions& opts = {});

/// Maximizes J[φ_t] over [0, sup a] ∪ {+∞}.
QuotaShareMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                     const SolverOptions& opts = {});

} // namespace reinsure::quota_share
