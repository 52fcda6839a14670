#ifndef CHAOSLIM_PROCESS_HPP
#define CHAOSLIM_PROCESS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chaoslim/coefficients.hpp"
#include "chaoslim/errors.hpp"
#include "chaoslim/fft.hpp"
#include "chaoslim/noise.hpp"
#include "chaoslim/symfun.hpp"

namespace chaoslim {

/// One process component: coefficient sequence plus chaos order, with the
/// derived memory regime. X(n) is the order-k elementary symmetric function
/// of the windowed products a_i eps_{n-i}.
struct ChaosProcessSpec {
    CoefficientSpec coeffs;
    int k = 1;
    std::string label;
    MemoryRegime regime;

    [[nodiscard]] static ChaosProcessSpec make(CoefficientSpec coeffs, int k, std::string label = "") {
        if (k < 1)
            throw ValidationError("ChaosProcessSpec: order must be >= 1");
        ChaosProcessSpec s;
        s.regime = classify_spec(coeffs, k);
        s.coeffs = std::move(coeffs);
        s.k = k;
        s.label = std::move(label);
        return s;
    }
};

/// Direct simulator: per time step, the window products w_i = a_i eps_{n-i}
/// are rebuilt and fed through the one-pass symmetric-function recurrence.
/// Cost O(N M k). Windows are recomputed rather than updated incrementally;
/// sliding add/remove updates are unstable when coefficients get small.
[[nodiscard]] inline std::vector<double>
simulate_path_direct(std::span<const double> a, int k, const NoiseWindow& noise,
                     std::size_t N, bool compensated = false) {
    const std::size_t M = a.size();
    if (noise.lo > 1 - static_cast<long long>(M) || noise.hi() < static_cast<long long>(N) - 1)
        throw ValidationError("simulate_path: noise window does not cover 1-M .. N-1");
    std::vector<double> x(N);
    std::vector<double> w(M);
    for (std::size_t n = 1; n <= N; ++n) {
        for (std::size_t i = 1; i <= M; ++i)
            w[i - 1] = a[i - 1] * noise.at(static_cast<long long>(n) - static_cast<long long>(i));
        auto e = compensated ? esf_compensated(w, k) : esf(w, k);
        x[n - 1] = e[static_cast<std::size_t>(k)];
    }
    return x;
}

/// FFT-accelerated simulator. The power sums of the window products,
/// p_j(n) = sum_i a_i^j eps_{n-i}^j, are convolutions of a^j with eps^j, so
/// one pass of FFTs yields them for every n at once; per-time-step Newton
/// recursion then turns p_1..p_k into e_k. The inputs to that recursion are
/// sums of positive-weight products of comparable scale, so the classical
/// instability of Newton's identities does not bite at the orders used here
/// (the direct simulator remains the reference and the two are cross-checked
/// in the test suite).
///
/// The plan caches the coefficient spectra; simulate() is const and
/// allocates its own scratch, so one plan can serve many replications,
/// including concurrently.
class PowerSumSimulator {
public:
    PowerSumSimulator(std::span<const double> a, int k, std::size_t N)
        : M_(a.size()), k_(k), N_(N),
          conv_len_(M_ + (M_ + N_) - 1),
          fft_len_(next_pow2(conv_len_)),
          plan_(fft_len_) {
        if (k < 1)
            throw ValidationError("PowerSumSimulator: order must be >= 1");
        spectra_re_.resize(static_cast<std::size_t>(k));
        spectra_im_.resize(static_cast<std::size_t>(k));
        std::vector<double> re(fft_len_), im(fft_len_);
        for (int j = 1; j <= k; ++j) {
            std::fill(re.begin(), re.end(), 0.0);
            std::fill(im.begin(), im.end(), 0.0);
            for (std::size_t i = 0; i < M_; ++i)
                re[i] = std::pow(a[i], j);
            plan_.forward(re, im);
            spectra_re_[static_cast<std::size_t>(j) - 1] = re;
            spectra_im_[static_cast<std::size_t>(j) - 1] = im;
        }
    }

    [[nodiscard]] std::size_t window_length() const { return M_ + N_; }

    /// eps must hold the window eps_{1-M} .. eps_N (length M+N at least).
    [[nodiscard]] std::vector<double> simulate(std::span<const double> eps) const {
        if (eps.size() < M_ + N_)
            throw ValidationError("PowerSumSimulator: eps window too short");
        // p_j(n) lives at index n + M - 2 of conv(a^j, eps^j)
        std::vector<std::vector<double>> p(static_cast<std::size_t>(k_));
        std::vector<double> re(fft_len_), im(fft_len_);
        std::vector<double> zr(fft_len_), zi(fft_len_);
        for (int j = 1; j <= k_; j += 2) {
            bool pair = j + 1 <= k_;
            std::fill(re.begin(), re.end(), 0.0);
            std::fill(im.begin(), im.end(), 0.0);
            for (std::size_t t = 0; t < M_ + N_; ++t) {
                double v = eps[t];
                for (int q = 1; q < j; ++q)
                    v *= eps[t];
                re[t] = v;
                im[t] = pair ? v * eps[t] : 0.0;
            }
            plan_.forward(re, im);
            const auto& ar1 = spectra_re_[static_cast<std::size_t>(j) - 1];
            const auto& ai1 = spectra_im_[static_cast<std::size_t>(j) - 1];
            const auto& ar2 = spectra_re_[pair ? static_cast<std::size_t>(j) : 0];
            const auto& ai2 = spectra_im_[pair ? static_cast<std::size_t>(j) : 0];
            for (std::size_t f = 0; f < fft_len_; ++f) {
                std::size_t fc = (fft_len_ - f) & (fft_len_ - 1);
                // unpack the two real-signal spectra from the packed transform
                double e1r = 0.5 * (re[f] + re[fc]);
                double e1i = 0.5 * (im[f] - im[fc]);
                double e2r = 0.5 * (im[f] + im[fc]);
                double e2i = 0.5 * (re[fc] - re[f]);
                double p1r = e1r * ar1[f] - e1i * ai1[f];
                double p1i = e1r * ai1[f] + e1i * ar1[f];
                if (pair) {
                    double p2r = e2r * ar2[f] - e2i * ai2[f];
                    double p2i = e2r * ai2[f] + e2i * ar2[f];
                    // inverse of (P1 + i P2) carries conv1 in re, conv2 in im
                    zr[f] = p1r - p2i;
                    zi[f] = p1i + p2r;
                } else {
                    zr[f] = p1r;
                    zi[f] = p1i;
                }
            }
            plan_.inverse(zr, zi);
            auto& pj = p[static_cast<std::size_t>(j) - 1];
            pj.resize(N_);
            for (std::size_t n = 0; n < N_; ++n)
                pj[n] = zr[n + M_ - 1];
            if (pair) {
                auto& pj2 = p[static_cast<std::size_t>(j)];
                pj2.resize(N_);
                for (std::size_t n = 0; n < N_; ++n)
                    pj2[n] = zi[n + M_ - 1];
            }
        }
        // Newton recursion e_j = (1/j) sum_{i=1..j} (-1)^{i-1} e_{j-i} p_i
        std::vector<double> x(N_);
        std::vector<double> e(static_cast<std::size_t>(k_) + 1);
        for (std::size_t n = 0; n < N_; ++n) {
            e[0] = 1.0;
            for (int j = 1; j <= k_; ++j) {
                double acc = 0.0;
                double sign = 1.0;
                for (int i = 1; i <= j; ++i) {
                    acc += sign * e[static_cast<std::size_t>(j - i)] * p[static_cast<std::size_t>(i) - 1][n];
                    sign = -sign;
                }
                e[static_cast<std::size_t>(j)] = acc / static_cast<double>(j);
            }
            x[n] = e[static_cast<std::size_t>(k_)];
        }
        return x;
    }

private:
    std::size_t M_, N_;
    int k_;
    std::size_t conv_len_, fft_len_;
    FFTPlan plan_;
    std::vector<std::vector<double>> spectra_re_, spectra_im_;
};

enum class SimulatorKind { Auto, Direct, PowerSum };

/// X(1..N) for one component. Auto picks the FFT route once the direct
/// operation count stops being desk-cheap.
[[nodiscard]] inline std::vector<double>
simulate_path(const ChaosProcessSpec& spec, const NoiseWindow& noise, std::size_t N,
              SimulatorKind kind = SimulatorKind::Auto, bool compensated = false) {
    auto a = build_coefficients(spec.coeffs);
    if (kind == SimulatorKind::Auto) {
        double direct_cost = static_cast<double>(N) * static_cast<double>(a.size()) * spec.k;
        kind = direct_cost <= 2e7 ? SimulatorKind::Direct : SimulatorKind::PowerSum;
    }
    if (kind == SimulatorKind::Direct)
        return simulate_path_direct(a, spec.k, noise, N, compensated);
    const std::size_t M = a.size();
    if (noise.lo > 1 - static_cast<long long>(M) || noise.hi() < static_cast<long long>(N) - 1)
        throw ValidationError("simulate_path: noise window does not cover 1-M .. N-1");
    PowerSumSimulator sim(a, spec.k, N);
    std::size_t off = static_cast<std::size_t>((1 - static_cast<long long>(M)) - noise.lo);
    return sim.simulate(std::span<const double>(noise.eps).subspan(off, M + N));
}

/// Same process with coefficients zeroed beyond m. The result is
/// m-dependent: values more than m apart share no innovations.
[[nodiscard]] inline std::vector<double>
simulate_truncated_path(const ChaosProcessSpec& spec, std::size_t m, const NoiseWindow& noise,
                        std::size_t N) {
    if (m <= static_cast<std::size_t>(spec.k))
        throw ValidationError("simulate_truncated_path: truncation must exceed the order");
    auto a = build_coefficients(spec.coeffs);
    if (a.size() > m)
        a.resize(m);
    return simulate_path_direct(a, spec.k, noise, N);
}

/// Simulated sample paths: R replications of J components over N time steps.
struct PathMatrix {
    std::size_t N = 0, J = 0, R = 0;
    std::vector<double> values; // (r, j, n) row-major, n fastest
    std::uint64_t seed = 0;
    std::vector<std::string> labels;
    std::string noise_name;

    [[nodiscard]] double at(std::size_t r, std::size_t j, std::size_t n) const {
        return values[(r * J + j) * N + (n - 1)];
    }
    [[nodiscard]] double& at(std::size_t r, std::size_t j, std::size_t n) {
        return values[(r * J + j) * N + (n - 1)];
    }
};

/// Simulate all components on one shared noise stream per replication; the
/// lag index eps_{n-i} addresses the same realized value in every component,
/// which is the coupling the multivariate limit theorems are about.
[[nodiscard]] inline PathMatrix
simulate_vector(const std::vector<ChaosProcessSpec>& specs, NoiseSpec noise, SeedPolicy policy,
                std::size_t N, std::size_t R, SimulatorKind kind = SimulatorKind::Auto) {
    if (specs.empty())
        throw ValidationError("simulate_vector: need at least one component spec");
    const std::size_t J = specs.size();
    if (N * J * R > (std::size_t{1} << 28))
        throw ValidationError("simulate_vector: requested path matrix exceeds the desk-scale cap");
    PathMatrix out;
    out.N = N;
    out.J = J;
    out.R = R;
    out.seed = policy.master_seed;
    out.noise_name = NoiseSpec{noise}.name();
    out.values.resize(N * J * R);
    std::size_t M_max = 0;
    for (const auto& s : specs) {
        out.labels.push_back(s.label);
        M_max = std::max(M_max, s.coeffs.M);
    }
    for (std::size_t r = 0; r < R; ++r) {
        NoiseWindow w = make_noise_window(noise, policy, r, M_max, N);
        for (std::size_t j = 0; j < J; ++j) {
            auto x = simulate_path(specs[j], w, N, kind);
            std::copy(x.begin(), x.end(), out.values.begin() + (r * J + j) * N);
        }
    }
    return out;
}

/// Kernel of a discrete multiple integral: finitely many off-diagonal index
/// tuples with real weights. Tuples are taken as given (no implicit
/// symmetrization); diagonal tuples are rejected outright.
struct DiscreteKernel {
    int k = 1;
    std::vector<std::pair<std::vector<long long>, double>> points;

    [[nodiscard]] static DiscreteKernel
    make(int k, std::vector<std::pair<std::vector<long long>, double>> pts,
         std::size_t support_cap = 10000000) {
        if (k < 1)
            throw ValidationError("DiscreteKernel: order must be >= 1");
        if (pts.size() > support_cap)
            throw ValidationError("DiscreteKernel: support exceeds the configured cap");
        for (const auto& [idx, value] : pts) {
            if (idx.size() != static_cast<std::size_t>(k))
                throw ValidationError("DiscreteKernel: tuple arity mismatch");
            if (!std::isfinite(value))
                throw ValidationError("DiscreteKernel: non-finite weight");
            auto sorted = idx;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ValidationError("DiscreteKernel: kernels must vanish on diagonals");
        }
        DiscreteKernel h;
        h.k = k;
        h.points = std::move(pts);
        return h;
    }

    [[nodiscard]] long long min_index() const {
        long long lo = 0;
        for (const auto& [idx, value] : points)
            for (long long i : idx)
                lo = std::min(lo, i);
        return lo;
    }
    [[nodiscard]] long long max_index() const {
        long long hi = 0;
        for (const auto& [idx, value] : points)
            for (long long i : idx)
                hi = std::max(hi, i);
        return hi;
    }
};

/// Q_k(h) = sum h(i_1..i_k) eps_{i_1} ... eps_{i_k} over the declared support.
[[nodiscard]] inline double
evaluate_polynomial_form(const DiscreteKernel& h, const NoiseWindow& noise) {
    double total = 0.0;
    for (const auto& [idx, value] : h.points) {
        double prod = value;
        for (long long i : idx)
            prod *= noise.at(i);
        total += prod;
    }
    return total;
}

/// Exact E(Q_k(h)^2). Tuples with equal index multisets are the only pairs
/// whose noise products have nonzero mean (each innovation then shows up
/// squared), so the value is the sum of squared per-multiset weight totals.
/// Holds for every unit-variance innovation law.
[[nodiscard]] inline double exact_second_moment(const DiscreteKernel& h) {
    std::map<std::vector<long long>, double> groups;
    for (const auto& [idx, value] : h.points) {
        auto key = idx;
        std::sort(key.begin(), key.end());
        groups[key] += value;
    }
    double total = 0.0;
    for (const auto& [key, sum] : groups)
        total += sum * sum;
    return total;
}

} // namespace chaoslim

#endif
