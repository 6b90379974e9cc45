#include "reinsure/solver_common.hpp"

#include "reinsure/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace reinsure {

LossSummary summarize(const CostFunctional& cost, const LossModel& loss) {
    LossSummary s;
    s.theta_star = theta_star(cost, loss);
    s.xi = std::isfinite(s.theta_star) ? s.theta_star + stop_loss_cost(cost, loss, s.theta_star)
                                       : kInfinity;
    s.full_cost = stop_loss_cost(cost, loss, 0.0);
    return s;
}

KinkSearch maximize_kink(const std::function<double(double)>& objective, double lo, double hi,
                         const SolverOptions& opts) {
    const int n = std::max(opts.grid_points, 2);
    if (!(hi > lo)) {
        hi = lo;
    }
    const double step = (hi - lo) / (n - 1);
    std::vector<double> values(n);
    for (int i = 0; i < n; ++i) {
        values[i] = objective(i + 1 == n ? hi : lo + step * i);
    }
    const auto best_it = std::max_element(values.begin(), values.end());
    const int best = static_cast<int>(best_it - values.begin());

    KinkSearch out{lo + step * best, *best_it};
    if (best == n - 1) {
        out.tau_star = hi;
    }
    if (step > 0.0) {
        const double bracket_lo = lo + step * std::max(best - 1, 0);
        const double bracket_hi = std::min(hi, lo + step * std::min(best + 1, n - 1));
        const double refined =
            golden_section_max(objective, bracket_lo, bracket_hi, opts.refine_tol);
        const double refined_value = objective(refined);
        if (refined_value > out.value) {
            out = {refined, refined_value};
        }
    }
    if (!(out.value > 0.0)) {
        return {kInfinity, 0.0};
    }
    return out;
}

} // namespace reinsure
