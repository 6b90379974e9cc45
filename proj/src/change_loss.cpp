#include "reinsure/change_loss.hpp"

#include "reinsure/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace reinsure::change_loss {

namespace {

constexpr int kThetaScan = 1024;

void require_assumption(const TypeDistribution& dist, const CostFunctional& cost) {
    const auto check = assumption_check(dist, cost);
    if (!check.holds) {
        std::ostringstream msg;
        msg << "change-loss menus need sup theta* <= L, got sup theta* = "
            << check.sup_theta_star << " and L = " << check.lower_support;
        throw UnsupportedError(msg.str());
    }
}

} // namespace

AssumptionCheck assumption_check(const TypeDistribution& dist, const CostFunctional& cost) {
    AssumptionCheck out;
    out.lower_support = lower_support(dist);
    double sup = -kInfinity;
    if (dist.has_atoms()) {
        for (const auto& atom : dist.atoms()) {
            sup = std::max(sup, theta_star(cost, dist.loss(atom.k)));
        }
    } else {
        const auto& kr = dist.k_range();
        for (int i = 0; i <= kThetaScan; ++i) {
            const double k = (i == kThetaScan) ? kr.hi : kr.lo + (kr.hi - kr.lo) * i / kThetaScan;
            sup = std::max(sup, theta_star(cost, dist.loss(k)));
        }
    }
    out.sup_theta_star = sup;
    out.holds = sup <= out.lower_support;
    return out;
}

ChangeLossMenu::ChangeLossMenu(double tau_star, double objective, CostFunctional cost,
                               LossFamily family)
    : tau_star_(tau_star), objective_(objective), cost_(std::move(cost)),
      family_(std::move(family)) {}

MenuEntry ChangeLossMenu::entry(const TransformedType& type) const {
    const LossModel loss = family_(type.k);
    bool served = type.a > tau_star_;
    if (type.a == tau_star_) {
        served = type.a >= xi(cost_, loss);
    }
    if (!served) {
        return {Contract::change_loss(0.0, kInfinity), 0.0};
    }
    const double d = theta_star(cost_, loss);
    return {Contract::change_loss(1.0, d), tau_star_ - d};
}

namespace {

double j_phi_unchecked(double t, const TypeDistribution& dist, const CostFunctional& cost,
                       const QuadratureOptions& opts) {
    if (std::isinf(t)) {
        return 0.0;
    }
    SliceFactory make = [&](double k) -> Slice {
        const double xk = xi(cost, dist.loss(k));
        return [=](double a) {
            const double value = (t <= a ? a - xk : 0.0) - std::max(a - t, 0.0);
            if (a == t && a < xk) {
                return value - (a - xk);
            }
            return value;
        };
    };
    const double a_breaks[] = {t};
    return integrate_slices(dist, make, a_breaks, {}, opts);
}

} // namespace

double j_phi_cl(double t, const TypeDistribution& dist, const CostFunctional& cost,
                const QuadratureOptions& opts) {
    if (std::isnan(t) || t < 0.0) {
        throw DomainError("kink t must lie in [0, +inf]");
    }
    require_assumption(dist, cost);
    return j_phi_unchecked(t, dist, cost, opts);
}

ChangeLossMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                     const SolverOptions& opts) {
    cost.validate();
    require_assumption(dist, cost);
    const double lo = lower_support(dist);
    const double hi = upper_support(dist);
    const auto search = maximize_kink(
        [&](double t) { return j_phi_unchecked(t, dist, cost, opts.quadrature); }, lo, hi, opts);
    return {search.tau_star, search.value, cost, dist.family()};
}

} // namespace reinsure::change_loss
