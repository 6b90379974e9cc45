#pragma once

#include <functional>
#include <span>
#include <vector>

namespace reinsure {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights of the n-point Gauss-Legendre rule. Rules are computed
/// once per n and cached.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrates f over [lo, hi] with the n-point rule.
double gauss_legendre_integrate(const std::function<double(double)>& f, double lo, double hi,
                                int n);

/// Adaptive Simpson quadrature of f over [lo, hi].
///
/// The tolerance is relative: panels are accepted once the Richardson error
/// estimate falls below rel_tol times the larger of the integral magnitude
/// and (hi - lo) * max|f| over the coarse samples. The interval is split into
/// eight panels before adaptation starts.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, int max_depth = 40);

/// Sum of adaptive_simpson over the pieces of [lo, hi] cut at every point of
/// `splits` that lies strictly inside the interval. Each piece is integrated
/// over its interior (ends moved inward by one ulp), so f is never evaluated
/// at a split point and a jump there contributes its one-sided limits.
double adaptive_simpson_split(const std::function<double(double)>& f, double lo, double hi,
                              std::span<const double> splits, double rel_tol);

/// Golden-section search for a maximizer of f on [lo, hi]. Stops when the
/// bracket width is at most rel_tol * max(|lo|, |hi|, 1).
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol);

/// Roots of g on [lo, hi] found by scanning `pieces` equal subintervals for
/// sign changes and bisecting each to machine resolution.
std::vector<double> bracket_roots(const std::function<double(double)>& g, double lo, double hi,
                                  int pieces = 64);

} // namespace reinsure
