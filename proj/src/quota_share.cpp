#include "reinsure/quota_share.hpp"

#include "reinsure/errors.hpp"

#include <cmath>
#include <utility>

namespace reinsure::quota_share {

QuotaShareMenu::QuotaShareMenu(double tau_star, double objective, CostFunctional cost,
                               LossFamily family)
    : tau_star_(tau_star), objective_(objective), cost_(std::move(cost)),
      family_(std::move(family)) {}

MenuEntry QuotaShareMenu::entry(const TransformedType& type) const {
    bool served = type.a > tau_star_;
    if (type.a == tau_star_) {
        served = type.a >= full_cost(cost_, family_(type.k));
    }
    if (!served) {
        return {Contract::quota_share(0.0), 0.0};
    }
    return {Contract::quota_share(1.0), tau_star_};
}

double full_cost(const CostFunctional& cost, const LossModel& loss) {
    return stop_loss_cost(cost, loss, 0.0);
}

double j_phi(double t, const TypeDistribution& dist, const CostFunctional& cost,
             const QuadratureOptions& opts) {
    if (std::isnan(t) || t < 0.0) {
        throw DomainError("kink t must lie in [0, +inf]");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    SliceFactory make = [&](double k) -> Slice {
        const double hk = full_cost(cost, dist.loss(k));
        return [=](double a) {
            const double value = (t <= a ? a - hk : 0.0) - std::max(a - t, 0.0);
            // Atom correction: on a = t the agent in N takes the left slope.
            if (a == t && a < hk) {
                return value - (a - hk);
            }
            return value;
        };
    };
    const double a_breaks[] = {t};
    return integrate_slices(dist, make, a_breaks, {}, opts);
}

QuotaShareMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                     const SolverOptions& opts) {
    cost.validate();
    const double hi = upper_support(dist);
    const auto search = maximize_kink(
        [&](double t) { return j_phi(t, dist, cost, opts.quadrature); }, 0.0, hi, opts);
    return {search.tau_star, search.value, cost, dist.family()};
}

} // namespace reinsure::quota_share
