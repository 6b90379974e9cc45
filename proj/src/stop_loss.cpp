#include "reinsure/stop_loss.hpp"

#include "reinsure/errors.hpp"
#include "reinsure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace reinsure::stop_loss {

namespace {

double deductible_rule(double tau, double a, const LossSummary& s) {
    if (a > tau) {
        return std::min(s.theta_star, tau);
    }
    if (a == tau && a >= s.xi) {
        return s.theta_star;
    }
    return kInfinity;
}

double profit_density(double tau, double a, double d, double d_cost) {
    if (std::isinf(d)) {
        return 0.0;
    }
    const double served = std::max(a - d, 0.0) - d_cost;
    return std::isinf(tau) ? served : served - std::max(a - tau, 0.0);
}

} // namespace

StopLossMenu::StopLossMenu(double tau_star, double objective, CostFunctional cost,
                           LossFamily family)
    : tau_star_(tau_star), objective_(objective), cost_(std::move(cost)),
      family_(std::move(family)) {}

MenuEntry StopLossMenu::entry(const TransformedType& type) const {
    const LossModel loss = family_(type.k);
    const double d = optimal_deductible(tau_star_, type, cost_, loss);
    if (std::isinf(d)) {
        return {Contract::stop_loss(kInfinity), 0.0};
    }
    // P = (a - d)_+ - (a - τ*)_+, which is τ* - d on the served branches.
    return {Contract::stop_loss(d), tau_star_ - d};
}

double optimal_deductible(double tau, const TransformedType& type, const CostFunctional& cost,
                          const LossModel& loss) {
    if (std::isnan(tau) || tau < 0.0) {
        throw DomainError("kink tau must lie in [0, +inf]");
    }
    if (type.a < tau) {
        return kInfinity;
    }
    const double ts = theta_star(cost, loss);
    if (type.a > tau) {
        return std::min(ts, tau);
    }
    return type.a >= xi(cost, loss) ? ts : kInfinity;
}

double phi(double tau, const TransformedType& type, const CostFunctional& cost,
           const LossModel& loss) {
    const double d = optimal_deductible(tau, type, cost, loss);
    return profit_density(tau, type.a, d, stop_loss_cost(cost, loss, d));
}

double objective(double tau, const TypeDistribution& dist, const CostFunctional& cost,
                 const QuadratureOptions& opts) {
    if (std::isnan(tau) || tau < 0.0) {
        throw DomainError("kink tau must lie in [0, +inf]");
    }
    if (std::isinf(tau)) {
        return 0.0;
    }
    SliceFactory make = [&](double k) -> Slice {
        const LossModel loss = dist.loss(k);
        const LossSummary s = summarize(cost, loss);
        const double capped = std::min(s.theta_star, tau);
        const double capped_cost = stop_loss_cost(cost, loss, capped);
        return [=](double a) {
            const double d = deductible_rule(tau, a, s);
            if (std::isinf(d)) {
                return 0.0;
            }
            return profit_density(tau, a, d, d == capped ? capped_cost : s.xi - s.theta_star);
        };
    };
    // Φ changes form in k where θ*_k crosses τ.
    std::vector<double> k_breaks;
    if (!dist.has_atoms()) {
        const auto& kr = dist.k_range();
        k_breaks = bracket_roots(
            [&](double k) { return theta_star(cost, dist.loss(k)) - tau; }, kr.lo, kr.hi);
    }
    const double a_breaks[] = {tau};
    return integrate_slices(dist, make, a_breaks, k_breaks, opts);
}

StopLossMenu solve(const TypeDistribution& dist, const CostFunctional& cost,
                   const SolverOptions& opts) {
    cost.validate();
    const double lo = lower_support(dist);
    const double hi = upper_support(dist);
    const auto search = maximize_kink(
        [&](double tau) { return objective(tau, dist, cost, opts.quadrature); }, lo, hi, opts);
    if (std::isfinite(search.tau_star) && search.tau_star < lo) {
        throw DomainError("stop-loss kink fell below the lower support");
    }
    return {search.tau_star, search.value, cost, dist.family()};
}

} // namespace reinsure::stop_loss
