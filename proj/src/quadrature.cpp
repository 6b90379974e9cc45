#include "reinsure/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace reinsure {

namespace {

GaussLegendreRule build_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-16) {
                break;
            }
        }
        if (n == 1) {
            x = 0.0;
            dp = 1.0;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n == 1) {
        rule.weights[0] = 2.0;
    }
    return rule;
}

struct SimpsonPanel {
    double lo, mid, hi;
    double f_lo, f_mid, f_hi;
    double whole;
};

double simpson(double h, double f_lo, double f_mid, double f_hi) {
    return h / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
}

double refine(const std::function<double(double)>& f, const SimpsonPanel& p, double eps,
              int depth) {
    const double lm = 0.5 * (p.lo + p.mid);
    const double rm = 0.5 * (p.mid + p.hi);
    const double f_lm = f(lm);
    const double f_rm = f(rm);
    const double left = simpson(p.mid - p.lo, p.f_lo, f_lm, p.f_mid);
    const double right = simpson(p.hi - p.mid, p.f_mid, f_rm, p.f_hi);
    const double diff = left + right - p.whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * eps) {
        return left + right + diff / 15.0;
    }
    return refine(f, {p.lo, lm, p.mid, p.f_lo, f_lm, p.f_mid, left}, 0.5 * eps, depth - 1) +
           refine(f, {p.mid, rm, p.hi, p.f_mid, f_rm, p.f_hi, right}, 0.5 * eps, depth - 1);
}

} // namespace

const GaussLegendreRule& gauss_legendre(int n) {
    if (n < 1) {
        throw std::invalid_argument("gauss_legendre: n must be positive");
    }
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_rule(n)).first;
    }
    return it->second;
}

double gauss_legendre_integrate(const std::function<double(double)>& f, double lo, double hi,
                                int n) {
    const auto& rule = gauss_legendre(n);
    const double half = 0.5 * (hi - lo);
    const double centre = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(centre + half * rule.nodes[i]);
    }
    return half * sum;
}

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double rel_tol, int max_depth) {
    if (!(hi > lo)) {
        return 0.0;
    }
    constexpr int kPanels = 8;
    std::vector<double> xs(2 * kPanels + 1);
    std::vector<double> fs(xs.size());
    const double h = (hi - lo) / (2 * kPanels);
    double f_max = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = (i + 1 == xs.size()) ? hi : lo + h * static_cast<double>(i);
        fs[i] = f(xs[i]);
        f_max = std::max(f_max, std::abs(fs[i]));
    }
    std::vector<double> wholes(kPanels);
    double coarse = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        wholes[p] = simpson(xs[2 * p + 2] - xs[2 * p], fs[2 * p], fs[2 * p + 1], fs[2 * p + 2]);
        coarse += wholes[p];
    }
    const double scale = std::max(std::abs(coarse), (hi - lo) * f_max);
    if (scale == 0.0) {
        return 0.0;
    }
    const double eps = rel_tol * scale / kPanels;
    double total = 0.0;
    for (int p = 0; p < kPanels; ++p) {
        const SimpsonPanel panel{xs[2 * p],     xs[2 * p + 1],     xs[2 * p + 2],
                                 fs[2 * p],     fs[2 * p + 1],     fs[2 * p + 2],
                                 wholes[p]};
        total += refine(f, panel, eps, max_depth);
    }
    return total;
}

double adaptive_simpson_split(const std::function<double(double)>& f, double lo, double hi,
                              std::span<const double> splits, double rel_tol) {
    if (!(hi > lo)) {
        return 0.0;
    }
    std::vector<double> cuts{lo};
    for (double s : splits) {
        if (s > lo && s < hi) {
            cuts.push_back(s);
        }
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo_in = std::nextafter(cuts[i], cuts[i + 1]);
        const double hi_in = std::nextafter(cuts[i + 1], cuts[i]);
        total += adaptive_simpson(f, lo_in, hi_in, rel_tol);
    }
    return total;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double rel_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    const double width_tol = rel_tol * std::max({std::abs(lo), std::abs(hi), 1.0});
    while (b - a > width_tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> bracket_roots(const std::function<double(double)>& g, double lo, double hi,
                                  int pieces) {
    std::vector<double> roots;
    if (!(hi > lo)) {
        return roots;
    }
    double x0 = lo;
    double g0 = g(x0);
    for (int i = 1; i <= pieces; ++i) {
        const double x1 = (i == pieces) ? hi : lo + (hi - lo) * i / pieces;
        const double g1 = g(x1);
        if (g0 == 0.0) {
            roots.push_back(x0);
        } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
            double a = x0;
            double b = x1;
            double ga = g0;
            for (int iter = 0; iter < 200; ++iter) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) {
                    break;
                }
                const double gm = g(m);
                if ((gm < 0.0) == (ga < 0.0)) {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        g0 = g1;
    }
    if (g0 == 0.0) {
        roots.push_back(x0);
    }
    return roots;
}

} // namespace reinsure
