#ifndef CHAOSLIM_PARTIAL_SUMS_HPP
#define CHAOSLIM_PARTIAL_SUMS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chaoslim/covariance.hpp"
#include "chaoslim/errors.hpp"
#include "chaoslim/process.hpp"

namespace chaoslim {

/// Evaluation times 0 < t_1 < ... < t_G = 1 for the partial-sum process.
struct TimeGrid {
    std::vector<double> t;

    [[nodiscard]] static TimeGrid make(std::vector<double> points) {
        if (points.empty())
            throw ValidationError("TimeGrid: needs at least one point");
        double prev = 0.0;
        for (double v : points) {
            if (!(v > prev) || v > 1.0)
                throw ValidationError("TimeGrid: points must be strictly increasing in (0, 1]");
            prev = v;
        }
        if (points.back() != 1.0)
            throw ValidationError("TimeGrid: grid must include t = 1");
        TimeGrid g;
        g.t = std::move(points);
        return g;
    }

    [[nodiscard]] static TimeGrid quarters() { return make({0.25, 0.5, 0.75, 1.0}); }

    [[nodiscard]] std::size_t size() const { return t.size(); }
    [[nodiscard]] std::size_t step_of(double ti, std::size_t N) const {
        return static_cast<std::size_t>(std::floor(ti * static_cast<double>(N)));
    }
};

enum class NormalizationMode { ExactVariance, AsymptoticSRD, AsymptoticLRD };

/// A(N) choice for Y_N(t) = A(N)^{-1} sum_{n <= [Nt]} X(n). ExactVariance
/// pins Var(Y_N(1)) = 1 identically for the working-length process; the
/// asymptotic modes use the limit-theorem rates (sigma sqrt(N) for short
/// memory, c N^{1+(d-1/2)k} L(N)^{k/2} for long memory, with c realized
/// from the exact variance).
struct NormalizationPlan {
    NormalizationMode mode = NormalizationMode::ExactVariance;
    double A = 1.0;
};

[[nodiscard]] inline NormalizationPlan
make_normalization(const ChaosProcessSpec& spec, std::size_t N, NormalizationMode mode) {
    NormalizationPlan plan;
    plan.mode = mode;
    switch (mode) {
    case NormalizationMode::ExactVariance:
        plan.A = std::sqrt(exact_partial_sum_variance(spec, N));
        break;
    case NormalizationMode::AsymptoticSRD: {
        auto s = long_run_sigma(spec);
        if (!s.positive)
            throw ValidationError("make_normalization: nonpositive long-run variance");
        plan.A = s.sigma * std::sqrt(static_cast<double>(N));
        break;
    }
    case NormalizationMode::AsymptoticLRD: {
        if (spec.regime.regime != Regime::LRD)
            throw RegimeError("make_normalization: asymptotic long-memory mode needs an LRD spec");
        double H = 1.0 + spec.k * (spec.coeffs.d - 0.5);
        double exact = std::sqrt(exact_partial_sum_variance(spec, N));
        double rate = std::pow(static_cast<double>(N), H) *
                      std::pow(spec.coeffs.L.eval(static_cast<double>(N)),
                               0.5 * static_cast<double>(spec.k));
        plan.A = exact; // c realized from the exact variance: c = exact / rate
        (void)rate;
        break;
    }
    }
    if (!(plan.A > 0.0))
        throw ValidationError("make_normalization: normalization must be positive");
    return plan;
}

/// Y(t_g) = A^{-1} sum_{n <= [N t_g]} X(n) over the grid; one prefix pass.
[[nodiscard]] inline std::vector<double>
partial_sum_process(std::span<const double> x, const NormalizationPlan& plan, const TimeGrid& grid) {
    if (!(plan.A > 0.0))
        throw ValidationError("partial_sum_process: normalization must be positive");
    std::size_t N = x.size();
    std::vector<double> y(grid.size());
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::size_t upto = grid.step_of(grid.t[g], N);
        for (; n < upto; ++n)
            acc += x[n];
        y[g] = acc / plan.A;
    }
    return y;
}

/// Normalized partial sums of the raw innovations, W_N(t) = N^{-1/2}
/// sum_{n <= [Nt]} eps_n; the common Brownian driver all order-1 short
/// memory components converge to.
[[nodiscard]] inline std::vector<double>
noise_partial_sums(const NoiseWindow& w, std::size_t N, const TimeGrid& grid) {
    std::vector<double> y(grid.size());
    double acc = 0.0;
    std::size_t n = 0;
    double inv = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::size_t upto = grid.step_of(grid.t[g], N);
        for (; n < upto; ++n)
            acc += w.at(static_cast<long long>(n) + 1);
        y[g] = acc * inv;
    }
    return y;
}

/// Exact-variance plan for a long-memory spec plus the implied constant
/// c_hat(N) = A(N) / (N^H L(N)^{k/2}), reported for diagnostics; the limit
/// theorems fix the rate but not the constant.
struct LrdCalibration {
    NormalizationPlan plan;
    double c_hat = 0.0;
    double H = 0.0;
};

[[nodiscard]] inline LrdCalibration
calibrate_lrd_normalization(const ChaosProcessSpec& spec, std::size_t N) {
    if (spec.regime.regime != Regime::LRD)
        throw RegimeError("calibrate_lrd_normalization: spec is not long-range dependent");
    LrdCalibration cal;
    cal.H = 1.0 + spec.k * (spec.coeffs.d - 0.5);
    cal.plan = make_normalization(spec, N, NormalizationMode::ExactVariance);
    double rate = std::pow(static_cast<double>(N), cal.H) *
                  std::pow(spec.coeffs.L.eval(static_cast<double>(N)),
                           0.5 * static_cast<double>(spec.k));
    cal.c_hat = cal.plan.A / rate;
    return cal;
}

} // namespace chaoslim

#endif
