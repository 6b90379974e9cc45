#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace reinsure {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Concave distortion h: [0,1] -> [0,1] with h(0) = 0 and h(1) = 1.
///
///   identity              h(u) = u
///   power(c)              h(u) = 1 - (1 - u)^(1/c),  c in (0, 1]
///   proportional_hazard   h(u) = u^c,                c in (0, 1]
///   tabulated             piecewise-linear through (u_i, h_i)
class Distortion {
public:
    enum class Kind { identity, power, proportional_hazard, tabulated };

    static Distortion identity();
    static Distortion power(double c);
    static Distortion proportional_hazard(double c);
    /// Nodes must start at (0,0), end at (1,1), and have strictly increasing u.
    static Distortion tabulated(std::vector<double> u, std::vector<double> h);

    double operator()(double u) const;

    Kind kind() const { return kind_; }
    double exponent() const { return exponent_; }
    const std::vector<double>& table_u() const { return u_; }
    const std::vector<double>& table_h() const { return h_; }

    /// Endpoint, monotonicity and midpoint-concavity checks on a 1000-point
    /// grid. Throws DomainError on failure.
    void validate() const;

private:
    Distortion() = default;

    Kind kind_ = Kind::identity;
    double exponent_ = 1.0;
    std::vector<double> u_;
    std::vector<double> h_;
};

/// Distribution of a nonnegative loss, described by its survival function
/// F̄(y) = P(X > y). An optional point mass sits at zero.
class LossModel {
public:
    enum class Family { zero, exponential, generic };

    using Fn = std::function<double(double)>;

    /// X ≡ 0.
    static LossModel zero();
    /// Mixture of an atom at 0 (probability p0) and an exponential with the
    /// given mean.
    static LossModel exponential(double mean, double p0 = 0.0);
    /// Lomax (Pareto II) loss with tail index `shape` > 1, parameterised by
    /// its mean. Evaluated through the generic code paths.
    static LossModel lomax(double mean, double shape, double p0 = 0.0);
    /// Arbitrary law. `survival` must be nonincreasing and right-continuous
    /// on [0, upper]. Missing quantile/density handles are derived
    /// numerically.
    static LossModel generic(Fn survival, double upper = kInfinity, Fn quantile = {},
                             Fn density = {});

    Family family() const { return family_; }
    /// Exponential mean (exponential family only).
    double scale() const { return scale_; }
    double point_mass_at_zero() const { return p0_; }
    double upper_bound() const { return upper_; }

    double survival(double y) const;
    double density(double y) const;
    /// inf{ y >= 0 : F̄(y) <= s }; returns 0 when s >= F̄(0).
    double quantile(double s) const;

private:
    LossModel() = default;

    Family family_ = Family::zero;
    double scale_ = 0.0;
    double p0_ = 0.0;
    double upper_ = 0.0;
    Fn survival_;
    Fn quantile_;
    Fn density_;
};

/// H[Y] = (1 + θ) ∫_0^∞ h(F̄_Y(y)) dy.
struct CostFunctional {
    double theta = 0.1;
    Distortion distortion = Distortion::identity();

    /// Throws DomainError unless θ > 0 and the distortion is valid.
    void validate() const;
};

/// Value-at-Risk F̄⁻¹(α). Requires 0 < α < 1 - F(0).
double var(const LossModel& loss, double alpha);

/// H[(X - d)_+] = (1 + θ) ∫_d^∞ h(F̄(y)) dy. Returns 0 for d = +∞.
/// Throws DivergenceError when the tail integral does not converge.
double stop_loss_cost(const CostFunctional& cost, const LossModel& loss, double d);

/// Maximizer of B(d) = -d - H[(X - d)_+], i.e. the smallest d with
/// h(F̄(d)) <= 1/(1+θ). Returns +∞ when no such d exists on the support.
double theta_star(const CostFunctional& cost, const LossModel& loss);

/// θ* + H[(X - θ*)_+] = -max_d B(d). Throws UnsupportedError if θ* = +∞.
double xi(const CostFunctional& cost, const LossModel& loss);

/// B(d) = -d - H[(X - d)_+].
double b_curve(const CostFunctional& cost, const LossModel& loss, double d);

} // namespace reinsure
