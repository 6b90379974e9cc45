#pragma once

#include "reinsure/risk_model.hpp"

#include <functional>
#include <random>
#include <span>
#include <vector>

namespace reinsure {

/// Agent type after the change of variables (α, k) -> (VaR_α(X_k), k).
struct TransformedType {
    double a = 0.0;
    double k = 0.0;
};

/// Maps the loss-scale parameter k to the loss law X_k.
class LossFamily {
public:
    /// X_k exponential with mean k, optional atom at 0.
    static LossFamily exponential(double p0 = 0.0);
    /// X_k Lomax with mean k and the given tail index.
    static LossFamily lomax(double shape, double p0 = 0.0);
    static LossFamily custom(std::function<LossModel(double)> make);

    LossModel operator()(double k) const { return make_(k); }
    bool is_exponential() const { return exponential_; }
    double point_mass_at_zero() const { return p0_; }

private:
    std::function<LossModel(double)> make_;
    bool exponential_ = false;
    double p0_ = 0.0;
};

struct UniformRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// One atom of a discrete type distribution.
struct TypeAtom {
    double alpha = 0.0;
    double k = 0.0;
    double weight = 0.0;
};

struct QuadratureOptions {
    int outer_nodes = 256;
    double simpson_tol = 1e-10;
};

/// The type measure over (α, k) and its image over (a, k).
///
/// product           k ~ U[k_lo, k_hi] independent of α ~ U(α_lo, α_hi)
/// degenerate_alpha  k ~ U[k_lo, k_hi], α fixed
/// discrete          finite list of weighted (α, k) atoms
class TypeDistribution {
public:
    enum class Variant { product, degenerate_alpha, discrete };

    /// α_lo may be 0; it is then raised to tail_cap * α_hi, which drops
    /// conditional a-mass of at most tail_cap.
    static TypeDistribution product(UniformRange k, double alpha_lo, double alpha_hi,
                                    LossFamily family, double tail_cap = 1e-9);
    /// Same as product() with α bounds given through their logarithms; keeps
    /// VaR exact for exponential losses, e.g. log α = -2.
    static TypeDistribution product_log_alpha(UniformRange k, double log_alpha_lo,
                                              double log_alpha_hi, LossFamily family);
    static TypeDistribution degenerate_alpha(UniformRange k, double alpha, LossFamily family);
    static TypeDistribution degenerate_log_alpha(UniformRange k, double log_alpha,
                                                 LossFamily family);
    static TypeDistribution discrete(std::vector<TypeAtom> atoms, LossFamily family);

    Variant variant() const { return variant_; }
    const UniformRange& k_range() const { return k_; }
    double alpha_lo() const { return alpha_lo_; }
    double alpha_hi() const { return alpha_hi_; }
    const std::vector<TypeAtom>& atoms() const { return atoms_; }
    const LossFamily& family() const { return family_; }
    bool has_atoms() const { return variant_ == Variant::discrete; }

    LossModel loss(double k) const { return family_(k); }

    /// Conditional support of a given k: [VaR_{α_hi}(X_k), VaR_{α_lo}(X_k)]
    /// (a single point for the degenerate variant).
    UniformRange a_range(double k) const;

    /// k-values where the conditional a-support ends at a = t.
    std::vector<double> k_crossings(double t) const;

    /// Draws one type (α, k) and returns its image (a, k).
    TransformedType sample(std::mt19937_64& rng) const;

private:
    double a_of(double alpha, double log_alpha, double k) const;
    void validate() const;

    Variant variant_ = Variant::product;
    UniformRange k_{};
    double alpha_lo_ = 0.0;
    double alpha_hi_ = 0.0;
    double log_alpha_lo_ = 0.0;
    double log_alpha_hi_ = 0.0;
    std::vector<TypeAtom> atoms_;
    LossFamily family_ = LossFamily::exponential();
};

/// ι(α, k) = (VaR_α(X_k), k). Throws DomainError outside the support.
TransformedType transform(const TypeDistribution& dist, double alpha, double k);

/// L = inf of a over the support.
double lower_support(const TypeDistribution& dist);

/// sup of a over the support.
double upper_support(const TypeDistribution& dist);

using Slice = std::function<double(double a)>;
using SliceFactory = std::function<Slice(double k)>;

/// ∫ f(a, k) Q(da × dk).
///
/// Continuous variants integrate k with composite Gauss-Legendre
/// (outer_nodes per piece) and a | k with adaptive Simpson. k is split at
/// `k_breaks` and wherever an end of the conditional a-support crosses one of
/// `a_breaks`; the a-integral is split at `a_breaks`. Discrete variants sum
/// the atoms exactly.
double integrate(const TypeDistribution& dist, const std::function<double(double, double)>& f,
                 std::span<const double> a_breaks, const QuadratureOptions& opts = {});

/// Same as integrate(), with the integrand built once per k node.
double integrate_slices(const TypeDistribution& dist, const SliceFactory& make_slice,
                        std::span<const double> a_breaks, std::span<const double> k_breaks,
                        const QuadratureOptions& opts = {});

} // namespace reinsure
