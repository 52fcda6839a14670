#ifndef CHAOSLIM_COVARIANCE_HPP
#define CHAOSLIM_COVARIANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "chaoslim/coefficients.hpp"
#include "chaoslim/errors.hpp"
#include "chaoslim/fft.hpp"
#include "chaoslim/process.hpp"
#include "chaoslim/special_functions.hpp"
#include "chaoslim/symfun.hpp"

namespace chaoslim {

/// Autocovariance gamma(n) = e_k of the lagged products c_i = a_{|n|+i} a_i
/// over the working length. Symmetric in n by construction.
[[nodiscard]] inline double gamma_auto(std::span<const double> a, int k, long long n) {
    std::size_t lag = static_cast<std::size_t>(n < 0 ? -n : n);
    if (lag >= a.size())
        return k >= 1 ? 0.0 : 1.0;
    std::size_t len = a.size() - lag;
    std::vector<double> c(len);
    for (std::size_t i = 0; i < len; ++i)
        c[i] = a[lag + i] * a[i];
    return esf(c, k)[static_cast<std::size_t>(k)];
}

[[nodiscard]] inline double gamma_auto(const ChaosProcessSpec& spec, long long n) {
    auto a = build_coefficients(spec.coeffs);
    return gamma_auto(a, spec.k, n);
}

/// Cross-covariance of two components on shared noise at lag n:
/// zero when orders differ, otherwise e_k of c_i = a_i b_{n+i}.
/// Not symmetric in n; gamma_pq(-n) = gamma_qp(n).
[[nodiscard]] inline double
gamma_cross(std::span<const double> a, int ka, std::span<const double> b, int kb, long long n) {
    if (ka != kb)
        return 0.0;
    std::vector<double> c;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        long long bi = n + static_cast<long long>(i);
        if (bi < 1)
            continue;
        if (bi > static_cast<long long>(b.size()))
            break;
        c.push_back(a[i - 1] * b[static_cast<std::size_t>(bi) - 1]);
    }
    if (c.size() < static_cast<std::size_t>(ka))
        return 0.0;
    return esf(c, ka)[static_cast<std::size_t>(ka)];
}

[[nodiscard]] inline double
gamma_cross(const ChaosProcessSpec& p, const ChaosProcessSpec& q, long long n) {
    if (p.k != q.k)
        return 0.0;
    auto a = build_coefficients(p.coeffs);
    auto b = build_coefficients(q.coeffs);
    return gamma_cross(a, p.k, b, q.k, n);
}

enum class AcfMethod { Auto, Direct, PowerSum };

/// gamma(0..max_lag) in one pass. The PowerSum route computes the power sums
/// of the lagged products for every lag at once (they are autocorrelations
/// of a^j, one FFT each) and converts to e_k by the Newton recursion; the
/// Direct route runs the add-only recurrence per lag and serves as the
/// reference implementation.
[[nodiscard]] inline std::vector<double>
acf_auto_batch(std::span<const double> a, int k, std::size_t max_lag,
               AcfMethod method = AcfMethod::Auto) {
    if (method == AcfMethod::Auto) {
        double direct_cost = static_cast<double>(a.size()) * static_cast<double>(max_lag + 1) * k;
        method = direct_cost <= 2e7 ? AcfMethod::Direct : AcfMethod::PowerSum;
    }
    std::vector<double> g(max_lag + 1, 0.0);
    if (method == AcfMethod::Direct) {
        for (std::size_t h = 0; h <= max_lag; ++h)
            g[h] = gamma_auto(a, k, static_cast<long long>(h));
        return g;
    }
    std::vector<std::vector<double>> p(static_cast<std::size_t>(k));
    std::vector<double> aj(a.begin(), a.end());
    for (int j = 1; j <= k; ++j) {
        if (j > 1)
            for (std::size_t i = 0; i < a.size(); ++i)
                aj[i] *= a[i];
        p[static_cast<std::size_t>(j) - 1] = autocorrelate(aj, max_lag);
    }
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    for (std::size_t h = 0; h <= max_lag; ++h) {
        e[0] = 1.0;
        for (int j = 1; j <= k; ++j) {
            double acc = 0.0;
            double sign = 1.0;
            for (int i = 1; i <= j; ++i) {
                acc += sign * e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i) - 1][h];
                sign = -sign;
            }
            e[static_cast<std::size_t>(j)] = acc / static_cast<double>(j);
        }
        g[h] = e[static_cast<std::size_t>(k)];
    }
    return g;
}

namespace detail {

/// e_1..e_k of the infinite tail of lagged products past head length L,
/// from the analytic power-sum integrals via Newton's identities.
inline void tail_esf(double d, int k, long long lag, std::size_t L, std::span<double> tau) {
    std::vector<double> T(static_cast<std::size_t>(k) + 1, 0.0);
    for (int j = 1; j <= k; ++j)
        T[static_cast<std::size_t>(j)] = power_tail_estimate(d, j, lag, L);
    tau[0] = 1.0;
    for (int j = 1; j <= k; ++j) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= j; ++i) {
            acc += sign * tau[static_cast<std::size_t>(j - i)] * T[static_cast<std::size_t>(i)];
            sign = -sign;
        }
        tau[static_cast<std::size_t>(j)] = acc / static_cast<double>(j);
    }
}

} // namespace detail

/// Autocovariance of the untruncated process for unit-L power-law
/// coefficients: head term sums over i <= head_M - |n| as usual, and the
/// discarded infinite tail re-enters through analytic integrals, using the
/// split e_k(head + tail) = sum_j e_{k-j}(head) e_j(tail). Needs
/// head_M >= 2.5 |n| so the tail expansion converges.
[[nodiscard]] inline double
gamma_auto_continued(double d, int k, long long n, std::size_t head_M) {
    long long lag = n < 0 ? -n : n;
    std::size_t L = head_M - static_cast<std::size_t>(lag);
    std::vector<double> c(L);
    for (std::size_t i = 1; i <= L; ++i) {
        double x = static_cast<double>(i);
        double y = static_cast<double>(lag) + x;
        c[i - 1] = std::pow(x, d - 1.0) * std::pow(y, d - 1.0);
    }
    auto e = esf(c, k);
    std::vector<double> tau(static_cast<std::size_t>(k) + 1);
    detail::tail_esf(d, k, lag, L, tau);
    double total = 0.0;
    for (int j = 0; j <= k; ++j)
        total += e[static_cast<std::size_t>(k - j)] * tau[static_cast<std::size_t>(j)];
    return total;
}

/// Batch version of gamma_auto_continued over lags 0..max_lag; the head
/// power sums for all lags come from FFT autocorrelations, the head e_j via
/// the Newton recursion (positive inputs), the tail via the analytic
/// integrals. Cross-checked against the single-lag route in the tests.
[[nodiscard]] inline std::vector<double>
acf_auto_continued(double d, int k, std::size_t max_lag, std::size_t head_M) {
    if (head_M < static_cast<std::size_t>(2.5 * static_cast<double>(max_lag)) + 1)
        throw ValidationError("acf_auto_continued: head must be >= 2.5x the largest lag");
    std::vector<double> a(head_M);
    for (std::size_t i = 1; i <= head_M; ++i)
        a[i - 1] = std::pow(static_cast<double>(i), d - 1.0);
    std::vector<std::vector<double>> p(static_cast<std::size_t>(k));
    std::vector<double> aj(a);
    for (int j = 1; j <= k; ++j) {
        if (j > 1)
            for (std::size_t i = 0; i < a.size(); ++i)
                aj[i] *= a[i];
        p[static_cast<std::size_t>(j) - 1] = autocorrelate(aj, max_lag);
    }
    std::vector<double> g(max_lag + 1);
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    std::vector<double> tau(static_cast<std::size_t>(k) + 1);
    for (std::size_t h = 0; h <= max_lag; ++h) {
        e[0] = 1.0;
        for (int j = 1; j <= k; ++j) {
            double acc = 0.0;
            double sign = 1.0;
            for (int i = 1; i <= j; ++i) {
                acc += sign * e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i) - 1][h];
                sign = -sign;
            }
            e[static_cast<std::size_t>(j)] = acc / static_cast<double>(j);
        }
        detail::tail_esf(d, k, static_cast<long long>(h), head_M - h, tau);
        double total = 0.0;
        for (int j = 0; j <= k; ++j)
            total += e[static_cast<std::size_t>(k - j)] * tau[static_cast<std::size_t>(j)];
        g[h] = total;
    }
    return g;
}

/// Long-run variance result with truncation diagnostics.
struct SigmaSummary {
    double sigma_sq = 0.0;
    double sigma = 0.0;          // sqrt when positive
    std::size_t cutoff_lag = 0;  // last lag included
    double tail_bound = 0.0;     // estimated magnitude of what was dropped
    bool positive = false;       // strict positivity of the lag sum
};

/// sigma^2 = sum_n gamma(n) for an SRD spec, summed exactly over the whole
/// lag range of the working-length process (gamma vanishes once the lag
/// separates the supports, so the sum is finite and exact; the FFT batch
/// makes the full range as cheap as any truncated one). cutoff_lag reports
/// the window edge and tail_bound the dropped mass, zero here.
[[nodiscard]] inline SigmaSummary long_run_sigma(const ChaosProcessSpec& spec) {
    if (spec.regime.regime != Regime::SRD)
        throw RegimeError("long_run_sigma: spec is not short-range dependent");
    auto a = build_coefficients(spec.coeffs);
    if (a.size() > (std::size_t{1} << 21))
        throw ValidationError("long_run_sigma: working length exceeds the desk-scale cap");
    std::size_t M = a.size();
    auto g = acf_auto_batch(a, spec.k, M - 1, AcfMethod::Auto);
    SigmaSummary out;
    double total = g[0];
    for (std::size_t h = 1; h < M; ++h)
        total += 2.0 * g[h];
    out.sigma_sq = total;
    out.cutoff_lag = M - 1;
    out.tail_bound = 0.0;
    out.positive = out.sigma_sq > 0.0;
    out.sigma = out.positive ? std::sqrt(out.sigma_sq) : 0.0;
    return out;
}

/// sigma_pq = sum_{n in Z} gamma_pq(n) for two SRD specs on shared noise.
/// Exactly zero across orders.
[[nodiscard]] inline SigmaSummary
long_run_cross(const ChaosProcessSpec& p, const ChaosProcessSpec& q) {
    if (p.regime.regime != Regime::SRD || q.regime.regime != Regime::SRD)
        throw RegimeError("long_run_cross: both specs must be short-range dependent");
    SigmaSummary out;
    if (p.k != q.k) {
        out.positive = false;
        return out; // orthogonal chaos orders
    }
    auto a = build_coefficients(p.coeffs);
    auto b = build_coefficients(q.coeffs);
    long long lo = -(static_cast<long long>(a.size()) - 1);
    long long hi = static_cast<long long>(b.size()) - 1;
    double total = 0.0;
    for (long long n = lo; n <= hi; ++n)
        total += gamma_cross(a, p.k, b, q.k, n);
    out.sigma_sq = total;
    out.cutoff_lag = static_cast<std::size_t>(std::max(-lo, hi));
    out.positive = total > 0.0;
    out.sigma = out.positive ? std::sqrt(total) : 0.0;
    return out;
}

/// Limit covariance matrix entries (s ^ t) sigma_pq / (sigma_p sigma_q) of
/// the normalized partial-sum vector for pure short-memory components.
[[nodiscard]] inline std::vector<std::vector<double>>
srd_limit_covariance(const std::vector<ChaosProcessSpec>& specs, double s, double t) {
    std::vector<SigmaSummary> sig;
    for (const auto& sp : specs) {
        auto ss = long_run_sigma(sp);
        if (!ss.positive)
            throw ValidationError("srd_limit_covariance: spec '" + sp.label +
                                  "' has nonpositive long-run variance");
        sig.push_back(ss);
    }
    double w = std::min(s, t);
    std::size_t J = specs.size();
    std::vector<std::vector<double>> m(J, std::vector<double>(J, 0.0));
    for (std::size_t pi = 0; pi < J; ++pi) {
        for (std::size_t qi = 0; qi < J; ++qi) {
            double spq = (pi == qi) ? sig[pi].sigma_sq
                                    : long_run_cross(specs[pi], specs[qi]).sigma_sq;
            m[pi][qi] = w * spq / (sig[pi].sigma * sig[qi].sigma);
        }
    }
    return m;
}

/// Var(sum_{n=1..N} X(n)) = sum_{|h| < N} (N - |h|) gamma(h), exact for the
/// working-length process.
[[nodiscard]] inline double
exact_partial_sum_variance(std::span<const double> a, int k, std::size_t N,
                           AcfMethod method = AcfMethod::Auto) {
    if (N < 1)
        throw ValidationError("exact_partial_sum_variance: N must be >= 1");
    std::size_t max_lag = std::min(N - 1, a.size() > 0 ? a.size() - 1 : 0);
    auto g = acf_auto_batch(a, k, max_lag, method);
    double total = static_cast<double>(N) * g[0];
    for (std::size_t h = 1; h <= max_lag; ++h)
        total += 2.0 * static_cast<double>(N - h) * g[h];
    return total;
}

[[nodiscard]] inline double
exact_partial_sum_variance(const ChaosProcessSpec& spec, std::size_t N,
                           AcfMethod method = AcfMethod::Auto) {
    auto a = build_coefficients(spec.coeffs);
    return exact_partial_sum_variance(a, spec.k, N, method);
}

/// Partial-sum variance of the untruncated power-law process via the
/// tail-continued autocovariance.
[[nodiscard]] inline double
exact_partial_sum_variance_continued(double d, int k, std::size_t N, std::size_t head_M) {
    auto g = acf_auto_continued(d, k, N - 1, head_M);
    double total = static_cast<double>(N) * g[0];
    for (std::size_t h = 1; h < N; ++h)
        total += 2.0 * static_cast<double>(N - h) * g[h];
    return total;
}

/// Second-order summary for reporting: regime, the long-run variance when
/// short memory, the memory parameter and power-law constant when long.
struct CovarianceSummary {
    MemoryRegime regime;
    double sigma_sq = std::numeric_limits<double>::quiet_NaN();
    double d_X = std::numeric_limits<double>::quiet_NaN();
    double lstar_constant = std::numeric_limits<double>::quiet_NaN();
};

[[nodiscard]] inline CovarianceSummary make_covariance_summary(const ChaosProcessSpec& spec) {
    CovarianceSummary s;
    s.regime = spec.regime;
    if (spec.regime.regime == Regime::SRD) {
        s.sigma_sq = long_run_sigma(spec).sigma_sq;
    } else if (spec.regime.regime == Regime::LRD) {
        s.d_X = spec.regime.d_X;
        s.lstar_constant = lrd_asymptotic_constant(spec.k, spec.coeffs.d);
    }
    return s;
}

} // namespace chaoslim

#endif
