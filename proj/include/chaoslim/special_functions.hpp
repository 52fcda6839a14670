#ifndef CHAOSLIM_SPECIAL_FUNCTIONS_HPP
#define CHAOSLIM_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include "chaoslim/errors.hpp"

namespace chaoslim {

/// Natural log of the gamma function, x > 0. Thin wrapper so the rest of the
/// code has a single call site that tests can pin against the independent
/// Lanczos route below.
[[nodiscard]] inline double log_gamma(double x) {
    return std::lgamma(x);
}

/// Independent log-gamma via a Lanczos approximation (g = 7, 9 terms).
/// Kept deliberately separate from log_gamma() so the two can cross-check
/// each other; accuracy is better than 1e-13 relative for x in (0, 1e3).
[[nodiscard]] inline double log_gamma_lanczos(double x) {
    static const double g = 7.0;
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma_lanczos(1.0 - x);
    }
    const double z = x - 1.0;
    double a = coef[0];
    for (int i = 1; i < 9; ++i)
        a += coef[i] / (z + i);
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

/// Euler beta function B(a, b) for positive arguments via log-gamma.
[[nodiscard]] inline double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ValidationError("beta_function: arguments must be positive");
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

/// The constant in the power-law autocovariance asymptote for regularly
/// varying coefficients with unit slowly varying part: B(d, 1-2d)^k / k!.
[[nodiscard]] inline double lrd_asymptotic_constant(int k, double d) {
    if (k < 1)
        throw ValidationError("lrd_asymptotic_constant: k must be >= 1");
    if (!(d > 0.0 && d < 0.5))
        throw ValidationError("lrd_asymptotic_constant: d must lie in (0, 1/2)");
    double log_b = std::log(beta_function(d, 1.0 - 2.0 * d));
    double log_fact = log_gamma(static_cast<double>(k) + 1.0);
    return std::exp(static_cast<double>(k) * log_b - log_fact);
}

/// Integral of x^q (x+n)^q over (A, infinity) for q < -1/2, evaluated by the
/// binomial expansion of (1 + n/x)^q. Requires A comfortably above n so the
/// expansion converges; callers keep A >= 1.5 n.
///
/// Used as the analytic continuation of truncated products of power-decay
/// sequences: sum_{i > L} (n+i)^q i^q with the midpoint rule A = L + 1/2.
[[nodiscard]] inline double tail_power_product_integral(double q, double n, double A) {
    if (!(2.0 * q < -1.0))
        throw ValidationError("tail_power_product_integral: needs 2q < -1 for convergence");
    if (!(A > 0.0) || (n > 0.0 && A < 1.5 * n))
        throw ValidationError("tail_power_product_integral: requires A >= 1.5 n");
    // integral = sum_m C(q, m) n^m A^{2q+1-m} / (m - 2q - 1)
    const double ratio = (n > 0.0) ? n / A : 0.0;
    double binom = 1.0;       // C(q, m), updated iteratively
    double ratio_pow = 1.0;   // (n/A)^m
    double scale = std::pow(A, 2.0 * q + 1.0);
    double total = 0.0;
    for (int m = 0; m < 400; ++m) {
        double term = binom * ratio_pow * scale / (static_cast<double>(m) - 2.0 * q - 1.0);
        total += term;
        if (std::abs(term) < 1e-17 * std::abs(total) && m > 2)
            break;
        binom *= (q - static_cast<double>(m)) / (static_cast<double>(m) + 1.0);
        ratio_pow *= ratio;
    }
    return total;
}

} // namespace chaoslim

#endif
