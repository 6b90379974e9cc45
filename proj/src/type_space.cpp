#include "reinsure/type_space.hpp"

#include "reinsure/errors.hpp"
#include "reinsure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace reinsure {

namespace {

constexpr int kSupportScan = 1024;

bool close_rel(double x, double y, double tol = 1e-12) {
    return std::abs(x - y) <= tol * std::max({std::abs(x), std::abs(y), 1e-300});
}

} // namespace

LossFamily LossFamily::exponential(double p0) {
    LossFamily f;
    f.make_ = [p0](double k) { return LossModel::exponential(k, p0); };
    f.exponential_ = true;
    f.p0_ = p0;
    return f;
}

LossFamily LossFamily::lomax(double shape, double p0) {
    LossFamily f;
    f.make_ = [shape, p0](double k) { return LossModel::lomax(k, shape, p0); };
    f.p0_ = p0;
    return f;
}

LossFamily LossFamily::custom(std::function<LossModel(double)> make) {
    LossFamily f;
    f.make_ = std::move(make);
    f.p0_ = f.make_(1.0).point_mass_at_zero();
    return f;
}

// ---------------------------------------------------------------------------

TypeDistribution TypeDistribution::product(UniformRange k, double alpha_lo, double alpha_hi,
                                           LossFamily family, double tail_cap) {
    if (alpha_lo == 0.0) {
        alpha_lo = tail_cap * alpha_hi;
    }
    TypeDistribution d;
    d.variant_ = Variant::product;
    d.k_ = k;
    d.alpha_lo_ = alpha_lo;
    d.alpha_hi_ = alpha_hi;
    d.log_alpha_lo_ = std::log(alpha_lo);
    d.log_alpha_hi_ = std::log(alpha_hi);
    d.family_ = std::move(family);
    d.validate();
    return d;
}

TypeDistribution TypeDistribution::product_log_alpha(UniformRange k, double log_alpha_lo,
                                                     double log_alpha_hi, LossFamily family) {
    TypeDistribution d;
    d.variant_ = Variant::product;
    d.k_ = k;
    d.alpha_lo_ = std::exp(log_alpha_lo);
    d.alpha_hi_ = std::exp(log_alpha_hi);
    d.log_alpha_lo_ = log_alpha_lo;
    d.log_alpha_hi_ = log_alpha_hi;
    d.family_ = std::move(family);
    d.validate();
    return d;
}

TypeDistribution TypeDistribution::degenerate_alpha(UniformRange k, double alpha,
                                                    LossFamily family) {
    if (!(alpha > 0.0)) {
        throw DomainError("degenerate alpha must be positive");
    }
    return degenerate_log_alpha(k, std::log(alpha), std::move(family));
}

TypeDistribution TypeDistribution::degenerate_log_alpha(UniformRange k, double log_alpha,
                                                        LossFamily family) {
    TypeDistribution d;
    d.variant_ = Variant::degenerate_alpha;
    d.k_ = k;
    d.alpha_lo_ = d.alpha_hi_ = std::exp(log_alpha);
    d.log_alpha_lo_ = d.log_alpha_hi_ = log_alpha;
    d.family_ = std::move(family);
    d.validate();
    return d;
}

TypeDistribution TypeDistribution::discrete(std::vector<TypeAtom> atoms, LossFamily family) {
    TypeDistribution d;
    d.variant_ = Variant::discrete;
    d.atoms_ = std::move(atoms);
    d.family_ = std::move(family);
    d.validate();
    return d;
}

void TypeDistribution::validate() const {
    const double top = 1.0 - family_.point_mass_at_zero();
    if (variant_ == Variant::discrete) {
        if (atoms_.empty()) {
            throw DomainError("discrete type distribution has no atoms");
        }
        double total = 0.0;
        for (const auto& atom : atoms_) {
            if (!(atom.weight >= 0.0)) {
                throw DomainError("type weights must be nonnegative");
            }
            if (!(atom.k > 0.0)) {
                throw DomainError("loss scale k must be positive");
            }
            if (!(atom.alpha > 0.0 && atom.alpha < top)) {
                throw DomainError("type alpha must lie in (0, 1 - F(0))");
            }
            total += atom.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw DomainError("type weights must sum to 1");
        }
        return;
    }
    if (!(k_.lo > 0.0 && k_.hi >= k_.lo && std::isfinite(k_.hi))) {
        throw DomainError("k range must satisfy 0 < lo <= hi < inf");
    }
    if (!(alpha_lo_ > 0.0 && alpha_hi_ >= alpha_lo_ && alpha_hi_ < top)) {
        throw DomainError("alpha range must satisfy 0 < lo <= hi < 1 - F(0)");
    }
    if (variant_ == Variant::product && !(alpha_hi_ > alpha_lo_)) {
        throw DomainError("product alpha range must have positive width");
    }
}

double TypeDistribution::a_of(double alpha, double log_alpha, double k) const {
    if (family_.is_exponential()) {
        return k * (std::log1p(-family_.point_mass_at_zero()) - log_alpha);
    }
    return var(loss(k), alpha);
}

UniformRange TypeDistribution::a_range(double k) const {
    return {a_of(alpha_hi_, log_alpha_hi_, k), a_of(alpha_lo_, log_alpha_lo_, k)};
}

std::vector<double> TypeDistribution::k_crossings(double t) const {
    std::vector<double> out;
    if (variant_ == Variant::discrete || !std::isfinite(t) || !(k_.hi > k_.lo)) {
        return out;
    }
    for (int end = 0; end < 2; ++end) {
        if (variant_ == Variant::degenerate_alpha && end == 1) {
            break;
        }
        auto g = [&](double k) {
            const auto r = a_range(k);
            return (end == 0 ? r.lo : r.hi) - t;
        };
        auto roots = bracket_roots(g, k_.lo, k_.hi);
        out.insert(out.end(), roots.begin(), roots.end());
    }
    return out;
}

TransformedType TypeDistribution::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (variant_ == Variant::discrete) {
        std::vector<double> w;
        w.reserve(atoms_.size());
        for (const auto& atom : atoms_) {
            w.push_back(atom.weight);
        }
        std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
        const auto& atom = atoms_[pick(rng)];
        return {a_of(atom.alpha, std::log(atom.alpha), atom.k), atom.k};
    }
    const double k = k_.lo + (k_.hi - k_.lo) * unit(rng);
    if (variant_ == Variant::degenerate_alpha) {
        return {a_of(alpha_lo_, log_alpha_lo_, k), k};
    }
    const double alpha = alpha_lo_ + (alpha_hi_ - alpha_lo_) * unit(rng);
    return {a_of(alpha, std::log(alpha), k), k};
}

// ---------------------------------------------------------------------------

TransformedType transform(const TypeDistribution& dist, double alpha, double k) {
    const double top = 1.0 - dist.family().point_mass_at_zero();
    if (!(alpha > 0.0 && alpha < top)) {
        throw DomainError("type alpha must lie in (0, 1 - F(0))");
    }
    switch (dist.variant()) {
    case TypeDistribution::Variant::discrete: {
        const auto& atoms = dist.atoms();
        const bool found = std::any_of(atoms.begin(), atoms.end(), [&](const TypeAtom& atom) {
            return close_rel(atom.alpha, alpha) && close_rel(atom.k, k);
        });
        if (!found) {
            throw DomainError("type is not an atom of the distribution");
        }
        break;
    }
    case TypeDistribution::Variant::degenerate_alpha:
        if (!close_rel(alpha, dist.alpha_lo())) {
            throw DomainError("alpha differs from the degenerate value");
        }
        [[fallthrough]];
    case TypeDistribution::Variant::product: {
        const auto& kr = dist.k_range();
        const double slack = 1e-12 * kr.hi;
        if (k < kr.lo - slack || k > kr.hi + slack) {
            throw DomainError("k outside the type support");
        }
        const double aslack = 1e-12 * dist.alpha_hi();
        if (alpha < dist.alpha_lo() - aslack || alpha > dist.alpha_hi() + aslack) {
            throw DomainError("alpha outside the type support");
        }
        break;
    }
    }
    const auto& family = dist.family();
    if (family.is_exponential()) {
        return {k * (std::log1p(-family.point_mass_at_zero()) - std::log(alpha)), k};
    }
    return {var(dist.loss(k), alpha), k};
}

namespace {

template <typename Pick>
double scan_support(const TypeDistribution& dist, Pick pick, bool want_min) {
    double best = want_min ? kInfinity : -kInfinity;
    auto consider = [&](double v) { best = want_min ? std::min(best, v) : std::max(best, v); };
    if (dist.variant() == TypeDistribution::Variant::discrete) {
        for (const auto& atom : dist.atoms()) {
            consider(transform(dist, atom.alpha, atom.k).a);
        }
        return best;
    }
    const auto& kr = dist.k_range();
    if (dist.family().is_exponential()) {
        // a is linear in k with positive slope.
        return pick(dist.a_range(want_min ? kr.lo : kr.hi));
    }
    for (int i = 0; i <= kSupportScan; ++i) {
        const double k = kr.lo + (kr.hi - kr.lo) * i / kSupportScan;
        consider(pick(dist.a_range(k)));
    }
    return best;
}

} // namespace

double lower_support(const TypeDistribution& dist) {
    return scan_support(dist, [](const UniformRange& r) { return r.lo; }, true);
}

double upper_support(const TypeDistribution& dist) {
    return scan_support(dist, [](const UniformRange& r) { return r.hi; }, false);
}

double integrate(const TypeDistribution& dist, const std::function<double(double, double)>& f,
                 std::span<const double> a_breaks, const QuadratureOptions& opts) {
    SliceFactory make = [&f](double k) -> Slice { return [&f, k](double a) { return f(a, k); }; };
    return integrate_slices(dist, make, a_breaks, {}, opts);
}

double integrate_slices(const TypeDistribution& dist, const SliceFactory& make_slice,
                        std::span<const double> a_breaks, std::span<const double> k_breaks,
                        const QuadratureOptions& opts) {
    if (dist.variant() == TypeDistribution::Variant::discrete) {
        double total = 0.0;
        for (const auto& atom : dist.atoms()) {
            const auto t = transform(dist, atom.alpha, atom.k);
            total += atom.weight * make_slice(t.k)(t.a);
        }
        return total;
    }

    const bool degenerate = dist.variant() == TypeDistribution::Variant::degenerate_alpha;
    const double alpha_width = dist.alpha_hi() - dist.alpha_lo();

    auto conditional = [&](double k) {
        const Slice slice = make_slice(k);
        const auto range = dist.a_range(k);
        if (degenerate) {
            return slice(range.lo);
        }
        const LossModel loss = dist.loss(k);
        auto weighted = [&](double a) { return slice(a) * loss.density(a); };
        return adaptive_simpson_split(weighted, range.lo, range.hi, a_breaks, opts.simpson_tol) /
               alpha_width;
    };

    const auto& kr = dist.k_range();
    if (!(kr.hi > kr.lo)) {
        return conditional(kr.lo);
    }

    std::vector<double> cuts{kr.lo, kr.hi};
    for (double kb : k_breaks) {
        if (kb > kr.lo && kb < kr.hi) {
            cuts.push_back(kb);
        }
    }
    for (double t : a_breaks) {
        for (double kc : dist.k_crossings(t)) {
            if (kc > kr.lo && kc < kr.hi) {
                cuts.push_back(kc);
            }
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += gauss_legendre_integrate(conditional, cuts[i], cuts[i + 1], opts.outer_nodes);
    }
    return total / (kr.hi - kr.lo);
}

} // namespace reinsure
