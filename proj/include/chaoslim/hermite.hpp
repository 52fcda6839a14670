#ifndef CHAOSLIM_HERMITE_HPP
#define CHAOSLIM_HERMITE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "chaoslim/covariance.hpp"
#include "chaoslim/errors.hpp"
#include "chaoslim/partial_sums.hpp"
#include "chaoslim/process.hpp"
#include "chaoslim/quadrature.hpp"
#include "chaoslim/special_functions.hpp"

namespace chaoslim {

/// Normalization constant making the order-k self-similar limit process have
/// unit variance at t = 1: sqrt(H(2H-1) Gamma(1-d)^k / (k! Gamma(d)^k
/// Gamma(1-2d)^k)), H = 1 + k(d - 1/2). Evaluated in log space.
[[nodiscard]] inline double hermite_constant(int k, double d) {
    if (k < 1)
        throw ValidationError("hermite_constant: order must be >= 1");
    double H = 1.0 + k * (d - 0.5);
    if (!(H > 0.5) || !(H < 1.0))
        throw ValidationError("hermite_constant: d outside the long-memory range for this order");
    double log_num = std::log(H) + std::log(2.0 * H - 1.0) + k * log_gamma(1.0 - d);
    double log_den = log_gamma(static_cast<double>(k) + 1.0) + k * log_gamma(d) +
                     k * log_gamma(1.0 - 2.0 * d);
    return std::exp(0.5 * (log_num - log_den));
}

/// Same constant through the beta-function composition
/// H(2H-1) = a^2 k! B(d, 1-2d)^k; used as the independent cross-check.
[[nodiscard]] inline double hermite_constant_beta(int k, double d) {
    if (k < 1)
        throw ValidationError("hermite_constant_beta: order must be >= 1");
    double H = 1.0 + k * (d - 0.5);
    if (!(H > 0.5) || !(H < 1.0))
        throw ValidationError("hermite_constant_beta: d outside the long-memory range");
    double kfact = std::exp(log_gamma_lanczos(static_cast<double>(k) + 1.0));
    return std::sqrt(H * (2.0 * H - 1.0) / (kfact * std::pow(beta_function(d, 1.0 - 2.0 * d), k)));
}

/// Order, memory parameter, and the derived exponent/normalization of one
/// self-similar limit process.
struct HermiteSpec {
    int k = 1;
    double d = 0.0;
    double H = 0.0;
    double normalization = 0.0;

    [[nodiscard]] static HermiteSpec make(int k, double d) {
        HermiteSpec s;
        s.normalization = hermite_constant(k, d); // validates the range
        s.k = k;
        s.d = d;
        s.H = 1.0 + k * (d - 0.5);
        return s;
    }
};

/// Kernel f^{(t)}(x_1..x_k) = a int_0^t prod_j (s - x_j)_+^{d-1} ds of the
/// k-fold stochastic-integral representation. The integrand has an
/// integrable power singularity at s = max x_j when that max is inside the
/// domain; the substitution u = (s - max x)^d integrates the singular factor
/// exactly and leaves a smooth integrand for the adaptive rule. A repeated
/// maximum >= 0 makes the singularity non-integrable and the kernel value is
/// +infinity at such points (a measure-zero set).
[[nodiscard]] inline double
hermite_kernel(const HermiteSpec& spec, double t, std::span<const double> x) {
    if (!(t > 0.0))
        throw ValidationError("hermite_kernel: t must be positive");
    if (x.size() != static_cast<std::size_t>(spec.k))
        throw ValidationError("hermite_kernel: argument arity mismatch");
    double xmax = -std::numeric_limits<double>::infinity();
    for (double v : x)
        xmax = std::max(xmax, v);
    if (xmax >= t)
        return 0.0;
    double lo = std::max(xmax, 0.0);
    int multiplicity = 0;
    if (xmax >= 0.0)
        for (double v : x)
            if (v == xmax)
                ++multiplicity;
    if (multiplicity >= 2)
        return std::numeric_limits<double>::infinity();

    double d = spec.d;
    auto smooth_part = [&](double s) {
        double prod = 1.0;
        for (double v : x) {
            if (multiplicity == 1 && v == xmax)
                continue; // carried by the substitution
            prod *= std::pow(s - v, d - 1.0);
        }
        return prod;
    };
    double integral;
    if (multiplicity == 1) {
        // int (s-lo)^{d-1} g(s) ds = (1/d) int g(lo + u^{1/d}) du, u = (s-lo)^d
        double U = std::pow(t - lo, d);
        integral = integrate_adaptive(
                       [&](double u) { return smooth_part(lo + std::pow(u, 1.0 / d)); }, 0.0, U,
                       1e-12) /
                   d;
    } else {
        integral = integrate_adaptive(smooth_part, lo, t, 1e-12);
    }
    return spec.normalization * integral;
}

/// Marginal variance of the unit-normalized limit process: t^{2H}.
[[nodiscard]] inline double hermite_theoretical_variance(const HermiteSpec& spec, double t) {
    if (!(t >= 0.0))
        throw ValidationError("hermite_theoretical_variance: t must be >= 0");
    return std::pow(t, 2.0 * spec.H);
}

/// Cov(Z(s), Z(t)) of an H-self-similar stationary-increment process with
/// unit variance at 1.
[[nodiscard]] inline double hermite_covariance(const HermiteSpec& spec, double s, double t) {
    double twoH = 2.0 * spec.H;
    return 0.5 * (std::pow(s, twoH) + std::pow(t, twoH) - std::pow(std::abs(s - t), twoH));
}

/// Deterministic finite-N diagnostic: Var(sum_{n <= [Nt]} X) / Var(sum_{n <= N} X)
/// over t^{2H} for the untruncated power-law process of this order; converges
/// to 1 as N grows. head_factor sets the analytic-continuation head length.
[[nodiscard]] inline double
hermite_variance_ratio(const HermiteSpec& spec, double t, std::size_t N,
                       std::size_t head_factor = 4) {
    if (!(t > 0.0) || t > 1.0)
        throw ValidationError("hermite_variance_ratio: t must lie in (0, 1]");
    std::size_t Nt = static_cast<std::size_t>(std::floor(t * static_cast<double>(N)));
    if (Nt < 1)
        throw ValidationError("hermite_variance_ratio: t N < 1");
    std::size_t head = head_factor * N + 1;
    double num = exact_partial_sum_variance_continued(spec.d, spec.k, Nt, head);
    double den = exact_partial_sum_variance_continued(spec.d, spec.k, N, head);
    return (num / den) / hermite_theoretical_variance(spec, t);
}

/// Replications of the discrete-chaos approximant on a time grid, (r, g)
/// row-major.
struct HermiteSample {
    HermiteSpec spec;
    std::size_t N = 0, R = 0;
    std::vector<double> grid_t;
    std::vector<double> values;
    std::uint64_t seed = 0;

    [[nodiscard]] double at(std::size_t r, std::size_t g) const {
        return values[r * grid_t.size() + g];
    }
};

/// Discrete-chaos approximant of the limit process: the exact-variance
/// normalized partial sum of the order-k process with unit-L power-law
/// coefficients. window_factor scales the coefficient working length
/// relative to N (1 keeps the per-replication cost at one length-4N FFT
/// pass; larger windows push the truncated variance closer to the
/// untruncated one).
[[nodiscard]] inline HermiteSample
simulate_hermite(const HermiteSpec& spec, std::size_t N, std::size_t R, const TimeGrid& grid,
                 NoiseSpec noise = {}, SeedPolicy policy = {}, std::size_t window_factor = 1) {
    if (N < 4 || R < 1 || window_factor < 1)
        throw ValidationError("simulate_hermite: need N >= 4, R >= 1, window_factor >= 1");
    std::size_t M = window_factor * N;
    auto proc = ChaosProcessSpec::make(
        CoefficientSpec::reg_var(spec.d, SlowlyVaryingSpec::constant(1.0), M), spec.k);
    NormalizationPlan plan = make_normalization(proc, N, NormalizationMode::ExactVariance);

    HermiteSample out;
    out.spec = spec;
    out.N = N;
    out.R = R;
    out.grid_t = grid.t;
    out.seed = policy.master_seed;
    out.values.resize(R * grid.size());

    auto a = build_coefficients(proc.coeffs);
    PowerSumSimulator sim(a, spec.k, N);
    for (std::size_t r = 0; r < R; ++r) {
        NoiseWindow w = make_noise_window(noise, policy, r, M, N);
        auto x = sim.simulate(w.eps);
        auto y = partial_sum_process(x, plan, grid);
        std::copy(y.begin(), y.end(), out.values.begin() + r * grid.size());
    }
    return out;
}

} // namespace chaoslim

#endif
