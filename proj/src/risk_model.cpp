#include "reinsure/risk_model.hpp"

#include "reinsure/errors.hpp"
#include "reinsure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace reinsure {

namespace {

constexpr double kTailSurvival = 1e-12;
constexpr double kTailRelTol = 1e-3;
constexpr double kCostSimpsonTol = 1e-12;
constexpr double kThetaStarTol = 1e-10;

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw DomainError(what);
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Distortion

Distortion Distortion::identity() { return Distortion{}; }

Distortion Distortion::power(double c) {
    require(c > 0.0 && c <= 1.0, "power distortion exponent must lie in (0, 1]");
    Distortion d;
    d.kind_ = Kind::power;
    d.exponent_ = c;
    return d;
}

Distortion Distortion::proportional_hazard(double c) {
    require(c > 0.0 && c <= 1.0, "proportional-hazard exponent must lie in (0, 1]");
    Distortion d;
    d.kind_ = Kind::proportional_hazard;
    d.exponent_ = c;
    return d;
}

Distortion Distortion::tabulated(std::vector<double> u, std::vector<double> h) {
    require(u.size() == h.size() && u.size() >= 2, "tabulated distortion needs >= 2 nodes");
    require(u.front() == 0.0 && h.front() == 0.0, "tabulated distortion must start at (0,0)");
    require(u.back() == 1.0 && h.back() == 1.0, "tabulated distortion must end at (1,1)");
    for (std::size_t i = 1; i < u.size(); ++i) {
        require(u[i] > u[i - 1], "tabulated distortion nodes must be strictly increasing in u");
    }
    Distortion d;
    d.kind_ = Kind::tabulated;
    d.u_ = std::move(u);
    d.h_ = std::move(h);
    d.validate();
    return d;
}

double Distortion::operator()(double u) const {
    if (u <= 0.0) {
        return 0.0;
    }
    if (u >= 1.0) {
        return 1.0;
    }
    switch (kind_) {
    case Kind::identity:
        return u;
    case Kind::power:
        return 1.0 - std::pow(1.0 - u, 1.0 / exponent_);
    case Kind::proportional_hazard:
        return std::pow(u, exponent_);
    case Kind::tabulated: {
        const auto it = std::upper_bound(u_.begin(), u_.end(), u);
        const auto i = static_cast<std::size_t>(it - u_.begin());
        const double w = (u - u_[i - 1]) / (u_[i] - u_[i - 1]);
        return h_[i - 1] + w * (h_[i] - h_[i - 1]);
    }
    }
    return u;
}

void Distortion::validate() const {
    require((*this)(0.0) == 0.0 && (*this)(1.0) == 1.0, "distortion must satisfy h(0)=0, h(1)=1");
    constexpr int kGrid = 1000;
    constexpr double kTol = 1e-12;
    double prev = 0.0;
    for (int i = 1; i <= kGrid; ++i) {
        const double hi = (*this)(static_cast<double>(i) / kGrid);
        require(hi >= prev - kTol, "distortion must be nondecreasing");
        prev = hi;
    }
    for (int i = 0; i + 2 <= kGrid; ++i) {
        const double x0 = static_cast<double>(i) / kGrid;
        const double x2 = static_cast<double>(i + 2) / kGrid;
        const double mid = (*this)(0.5 * (x0 + x2));
        require(mid >= 0.5 * ((*this)(x0) + (*this)(x2)) - kTol, "distortion must be concave");
    }
}

// ---------------------------------------------------------------------------
// LossModel

LossModel LossModel::zero() {
    LossModel m;
    m.family_ = Family::zero;
    m.p0_ = 1.0;
    m.upper_ = 0.0;
    return m;
}

LossModel LossModel::exponential(double mean, double p0) {
    require(mean > 0.0 && std::isfinite(mean), "exponential mean must be positive");
    require(p0 >= 0.0 && p0 < 1.0, "point mass at zero must lie in [0, 1)");
    LossModel m;
    m.family_ = Family::exponential;
    m.scale_ = mean;
    m.p0_ = p0;
    m.upper_ = kInfinity;
    return m;
}

LossModel LossModel::lomax(double mean, double shape, double p0) {
    require(mean > 0.0 && std::isfinite(mean), "lomax mean must be positive");
    require(shape > 1.0, "lomax shape must exceed 1");
    require(p0 >= 0.0 && p0 < 1.0, "point mass at zero must lie in [0, 1)");
    const double lambda = mean * (shape - 1.0);
    const double mass = 1.0 - p0;
    auto survival = [=](double y) {
        return y < 0.0 ? 1.0 : mass * std::pow(lambda / (lambda + y), shape);
    };
    auto quantile = [=](double s) {
        return s >= mass ? 0.0 : lambda * (std::pow(s / mass, -1.0 / shape) - 1.0);
    };
    auto density = [=](double y) {
        return y < 0.0 ? 0.0
                       : mass * shape / lambda * std::pow(lambda / (lambda + y), shape + 1.0);
    };
    LossModel m = generic(survival, kInfinity, quantile, density);
    m.p0_ = p0;
    return m;
}

LossModel LossModel::generic(Fn survival, double upper, Fn quantile, Fn density) {
    require(static_cast<bool>(survival), "generic loss needs a survival function");
    require(upper > 0.0, "generic loss support must extend above 0");
    LossModel m;
    m.family_ = Family::generic;
    m.upper_ = upper;
    m.p0_ = 1.0 - survival(0.0);
    m.survival_ = std::move(survival);
    m.quantile_ = std::move(quantile);
    m.density_ = std::move(density);
    return m;
}

double LossModel::survival(double y) const {
    if (y < 0.0) {
        return 1.0;
    }
    switch (family_) {
    case Family::zero:
        return 0.0;
    case Family::exponential:
        return (1.0 - p0_) * std::exp(-y / scale_);
    case Family::generic:
        return y >= upper_ ? 0.0 : survival_(y);
    }
    return 0.0;
}

double LossModel::density(double y) const {
    if (y < 0.0 || y > upper_) {
        return 0.0;
    }
    switch (family_) {
    case Family::zero:
        return 0.0;
    case Family::exponential:
        return (1.0 - p0_) / scale_ * std::exp(-y / scale_);
    case Family::generic: {
        if (density_) {
            return density_(y);
        }
        const double h = 1e-6 * std::max(1.0, y);
        const double lo = std::max(0.0, y - h);
        return (survival(lo) - survival(y + h)) / (y + h - lo);
    }
    }
    return 0.0;
}

double LossModel::quantile(double s) const {
    if (s >= survival(0.0)) {
        return 0.0;
    }
    switch (family_) {
    case Family::zero:
        return 0.0;
    case Family::exponential:
        return s <= 0.0 ? kInfinity : scale_ * std::log((1.0 - p0_) / s);
    case Family::generic: {
        if (quantile_) {
            return quantile_(s);
        }
        double lo = 0.0;
        double hi = std::isfinite(upper_) ? upper_ : 1.0;
        while (!std::isfinite(upper_) && survival(hi) > s) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) {
                return kInfinity;
            }
        }
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (survival(mid) > s) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return hi;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Cost functional

void CostFunctional::validate() const {
    require(theta > 0.0 && std::isfinite(theta), "loading theta must be positive");
    distortion.validate();
}

double var(const LossModel& loss, double alpha) {
    const double top = 1.0 - loss.point_mass_at_zero();
    if (!(alpha > 0.0 && alpha < top)) {
        throw DomainError("VaR level must lie in (0, 1 - F(0))");
    }
    return loss.quantile(alpha);
}

double stop_loss_cost(const CostFunctional& cost, const LossModel& loss, double d) {
    if (std::isnan(d) || d < 0.0) {
        throw DomainError("stop-loss deductible must be nonnegative");
    }
    if (std::isinf(d) || loss.family() == LossModel::Family::zero) {
        return 0.0;
    }
    const double load = 1.0 + cost.theta;
    const auto& h = cost.distortion;
    if (loss.family() == LossModel::Family::exponential) {
        const double k = loss.scale();
        const double mass = 1.0 - loss.point_mass_at_zero();
        if (h.kind() == Distortion::Kind::identity) {
            return load * mass * k * std::exp(-d / k);
        }
        if (h.kind() == Distortion::Kind::proportional_hazard) {
            const double c = h.exponent();
            return load * std::pow(mass, c) * (k / c) * std::exp(-c * d / k);
        }
    }

    if (d >= loss.upper_bound()) {
        return 0.0;
    }
    // Truncate twelve decades below the survival at d as well as below 1, so
    // deep deductibles keep the same relative accuracy.
    const double floor_level = std::max(kTailSurvival * std::min(1.0, loss.survival(d)), 1e-300);
    double cap = loss.quantile(floor_level);
    if (std::isfinite(loss.upper_bound())) {
        cap = std::min(cap, loss.upper_bound());
    }
    if (!(cap > d)) {
        return 0.0;
    }
    std::vector<double> splits;
    for (double s = 1e-1; s > floor_level; s *= 0.1) {
        splits.push_back(loss.quantile(s));
    }
    auto integrand = [&](double y) { return h(loss.survival(y)); };
    const double body = adaptive_simpson_split(integrand, d, cap, splits, kCostSimpsonTol);
    const double tail = cap * h(loss.survival(cap));
    if (tail > kTailRelTol * std::max(body, 1e-300)) {
        throw DivergenceError("stop-loss cost integral does not converge");
    }
    return load * body;
}

double theta_star(const CostFunctional& cost, const LossModel& loss) {
    const double target = 1.0 / (1.0 + cost.theta);
    const auto& h = cost.distortion;
    auto level = [&](double d) { return h(loss.survival(d)); };
    if (level(0.0) <= target) {
        return 0.0;
    }
    if (loss.family() == LossModel::Family::exponential) {
        const double k = loss.scale();
        const double mass = 1.0 - loss.point_mass_at_zero();
        if (h.kind() == Distortion::Kind::identity) {
            return k * std::log(mass / target);
        }
        if (h.kind() == Distortion::Kind::proportional_hazard) {
            return k * std::log(mass / std::pow(target, 1.0 / h.exponent()));
        }
    }

    double lo = 0.0;
    double hi;
    if (std::isfinite(loss.upper_bound())) {
        hi = loss.upper_bound();
        if (level(hi) > target) {
            return kInfinity;
        }
    } else {
        hi = 1.0;
        while (level(hi) > target) {
            lo = hi;
            hi *= 2.0;
            if (!std::isfinite(hi)) {
                return kInfinity;
            }
        }
    }
    while (hi - lo > kThetaStarTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (level(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double xi(const CostFunctional& cost, const LossModel& loss) {
    const double t = theta_star(cost, loss);
    if (std::isinf(t)) {
        throw UnsupportedError("xi is undefined when theta* is infinite");
    }
    return t + stop_loss_cost(cost, loss, t);
}

double b_curve(const CostFunctional& cost, const LossModel& loss, double d) {
    if (std::isinf(d)) {
        return -kInfinity;
    }
    return -d - stop_loss_cost(cost, loss, d);
}

} // namespace reinsure
