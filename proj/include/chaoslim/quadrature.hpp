#ifndef CHAOSLIM_QUADRATURE_HPP
#define CHAOSLIM_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "chaoslim/errors.hpp"

namespace chaoslim {

/// Gauss-Legendre rule on [-1, 1]. Nodes are Legendre roots found by Newton
/// from the Chebyshev initial guess; cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

[[nodiscard]] inline const GaussLegendreRule& gauss_legendre(std::size_t n) {
    static std::vector<GaussLegendreRule> cache(129);
    if (n < 2 || n > 128)
        throw ValidationError("gauss_legendre: order out of range");
    GaussLegendreRule& rule = cache[n];
    if (!rule.nodes.empty())
        return rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t j = 2; j <= n; ++j) {
                double p2 = ((2.0 * static_cast<double>(j) - 1.0) * x * p1 -
                             (static_cast<double>(j) - 1.0) * p0) /
                            static_cast<double>(j);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

template <class F>
[[nodiscard]] double integrate_gl(F&& f, double lo, double hi, std::size_t order = 32) {
    const auto& rule = gauss_legendre(order);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double total = 0.0;
    for (std::size_t i = 0; i < order; ++i)
        total += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return total * half;
}

namespace detail {

template <class F>
double integrate_adaptive_rec(F& f, double lo, double hi, double whole, double tol, int depth) {
    double mid = 0.5 * (lo + hi);
    double left = integrate_gl(f, lo, mid, 16);
    double right = integrate_gl(f, mid, hi, 16);
    if (depth <= 0 || std::abs(left + right - whole) <= tol)
        return left + right;
    return integrate_adaptive_rec(f, lo, mid, left, 0.5 * tol, depth - 1) +
           integrate_adaptive_rec(f, mid, hi, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Panel-bisecting adaptive quadrature; tol is absolute. The integrand must
/// be finite on [lo, hi]; singular endpoints should be substituted away by
/// the caller first.
template <class F>
[[nodiscard]] double integrate_adaptive(F&& f, double lo, double hi, double tol = 1e-12,
                                        int max_depth = 24) {
    if (!(hi > lo))
        return 0.0;
    double whole = integrate_gl(f, lo, hi, 16);
    return detail::integrate_adaptive_rec(f, lo, hi, whole, tol, max_depth);
}

} // namespace chaoslim

#endif
