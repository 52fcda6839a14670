#ifndef CHAOSLIM_COEFFICIENTS_HPP
#define CHAOSLIM_COEFFICIENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "chaoslim/errors.hpp"
#include "chaoslim/special_functions.hpp"

namespace chaoslim {

enum class SlowlyVaryingKind { Constant, LogPower, IteratedLog };

/// Slowly varying factor L(i) multiplying the power-law coefficient decay.
/// Built-ins: a positive constant, (1 + ln i)^p, and ln(e + ln i).
struct SlowlyVaryingSpec {
    SlowlyVaryingKind kind = SlowlyVaryingKind::Constant;
    double c = 1.0; // Constant value
    double p = 0.0; // LogPower exponent

    [[nodiscard]] static SlowlyVaryingSpec constant(double value) {
        if (!(value > 0.0))
            throw ValidationError("SlowlyVaryingSpec: constant must be positive");
        return {SlowlyVaryingKind::Constant, value, 0.0};
    }
    [[nodiscard]] static SlowlyVaryingSpec log_power(double exponent) {
        return {SlowlyVaryingKind::LogPower, 1.0, exponent};
    }
    [[nodiscard]] static SlowlyVaryingSpec iterated_log() {
        return {SlowlyVaryingKind::IteratedLog, 1.0, 0.0};
    }

    /// Evaluate at real argument x >= 1 (real so normalization formulas can
    /// query L(N) off the integer grid).
    [[nodiscard]] double eval(double x) const {
        if (!(x >= 1.0))
            throw ValidationError("SlowlyVaryingSpec: argument must be >= 1");
        switch (kind) {
        case SlowlyVaryingKind::Constant: return c;
        case SlowlyVaryingKind::LogPower: return std::pow(1.0 + std::log(x), p);
        case SlowlyVaryingKind::IteratedLog: return std::log(std::exp(1.0) + std::log(x));
        }
        throw ValidationError("SlowlyVaryingSpec: unknown kind");
    }

    [[nodiscard]] bool is_unit_constant() const {
        return kind == SlowlyVaryingKind::Constant && c == 1.0;
    }
};

enum class CoefficientFamily { RegVar, Explicit, BoundedDecay };

/// Coefficient sequence a_1..a_M with the convention a_i = 0 for i <= 0 and
/// beyond M. RegVar evaluates a_i = i^{d-1} L(i); Explicit stores the values;
/// BoundedDecay stores values with a declared envelope |a_i| <= c i^{d-1}.
struct CoefficientSpec {
    CoefficientFamily family = CoefficientFamily::Explicit;
    double d = 0.0;               // decay parameter (RegVar, BoundedDecay)
    SlowlyVaryingSpec L;          // RegVar only
    std::vector<double> values;   // Explicit, BoundedDecay
    double bound_c = 1.0;         // BoundedDecay envelope constant
    std::size_t M = 0;            // working length

    [[nodiscard]] static CoefficientSpec reg_var(double d, SlowlyVaryingSpec L, std::size_t M) {
        if (!(d > 0.0 && d < 0.5))
            throw ValidationError("CoefficientSpec: RegVar requires d in (0, 1/2)");
        if (M < 1)
            throw ValidationError("CoefficientSpec: M must be >= 1");
        CoefficientSpec s;
        s.family = CoefficientFamily::RegVar;
        s.d = d;
        s.L = L;
        s.M = M;
        return s;
    }

    [[nodiscard]] static CoefficientSpec explicit_seq(std::vector<double> v) {
        if (v.empty())
            throw ValidationError("CoefficientSpec: explicit sequence must be nonempty");
        CoefficientSpec s;
        s.family = CoefficientFamily::Explicit;
        s.M = v.size();
        s.values = std::move(v);
        return s;
    }

    [[nodiscard]] static CoefficientSpec bounded_decay(double d, std::vector<double> v, double c) {
        if (!(d < 0.5))
            throw ValidationError("CoefficientSpec: BoundedDecay requires d < 1/2");
        if (v.empty())
            throw ValidationError("CoefficientSpec: BoundedDecay sequence must be nonempty");
        if (!(c > 0.0))
            throw ValidationError("CoefficientSpec: BoundedDecay constant must be positive");
        CoefficientSpec s;
        s.family = CoefficientFamily::BoundedDecay;
        s.d = d;
        s.M = v.size();
        s.values = std::move(v);
        s.bound_c = c;
        return s;
    }

    /// Geometric helper a_i = ratio^{i-1}, stored as an explicit sequence.
    [[nodiscard]] static CoefficientSpec geometric(double ratio, std::size_t M) {
        if (!(std::abs(ratio) < 1.0) || ratio == 0.0)
            throw ValidationError("CoefficientSpec: geometric ratio must satisfy 0 < |ratio| < 1");
        std::vector<double> v(M);
        double cur = 1.0;
        for (std::size_t i = 0; i < M; ++i) {
            v[i] = cur;
            cur *= ratio;
        }
        return explicit_seq(std::move(v));
    }
};

/// a_1..a_M per the spec's family. Deterministic; pure formula evaluation.
[[nodiscard]] inline std::vector<double> build_coefficients(const CoefficientSpec& spec) {
    switch (spec.family) {
    case CoefficientFamily::RegVar: {
        std::vector<double> a(spec.M);
        for (std::size_t i = 1; i <= spec.M; ++i) {
            double x = static_cast<double>(i);
            a[i - 1] = std::pow(x, spec.d - 1.0) * spec.L.eval(x);
        }
        return a;
    }
    case CoefficientFamily::Explicit:
    case CoefficientFamily::BoundedDecay:
        return spec.values;
    }
    throw ValidationError("build_coefficients: unknown family");
}

enum class Regime { SRD, LRD, Boundary };

/// Memory regime of a chaos-order-k process with decay parameter d.
/// The SRD/LRD boundary sits at d = (1/2)(1 - 1/k); above it the process has
/// long memory with parameter d_X = 1/2 - k(1/2 - d).
struct MemoryRegime {
    Regime regime = Regime::SRD;
    double d = 0.0;
    int k = 1;
    double d_X = std::numeric_limits<double>::quiet_NaN(); // defined only when LRD

    [[nodiscard]] std::string name() const {
        switch (regime) {
        case Regime::SRD: return "SRD";
        case Regime::LRD: return "LRD";
        case Regime::Boundary: return "Boundary";
        }
        return "?";
    }
};

[[nodiscard]] inline double memory_boundary(int k) {
    return 0.5 * (1.0 - 1.0 / static_cast<double>(k));
}

[[nodiscard]] inline MemoryRegime classify_memory(double d, int k) {
    if (k < 1)
        throw ValidationError("classify_memory: k must be >= 1");
    if (d >= 0.5)
        throw ValidationError("classify_memory: d >= 1/2 is outside the model");
    MemoryRegime m;
    m.d = d;
    m.k = k;
    double boundary = memory_boundary(k);
    // boundary test with a float tolerance so d = 1/3 at k = 3 lands on the
    // boundary rather than a rounding-dependent side
    if (std::abs(d - boundary) <= 1e-12) {
        m.regime = Regime::Boundary;
        return m;
    }
    if (d > boundary) {
        m.regime = Regime::LRD;
        m.d_X = 0.5 - static_cast<double>(k) * (0.5 - d);
    } else {
        m.regime = Regime::SRD;
    }
    return m;
}

/// Regime of a coefficient spec at chaos order k. Explicit sequences have
/// finite support, hence summable covariances: always SRD.
[[nodiscard]] inline MemoryRegime classify_spec(const CoefficientSpec& spec, int k) {
    if (spec.family == CoefficientFamily::Explicit) {
        MemoryRegime m;
        m.regime = Regime::SRD;
        m.d = spec.d;
        m.k = k;
        return m;
    }
    return classify_memory(spec.d, k);
}

/// sum_{i >= 1} a_{n+i} b_i over the finite working lengths, with the
/// a_i = 0 for i <= 0 convention.
[[nodiscard]] inline double
tail_product_sum(std::span<const double> a, std::span<const double> b, long long n) {
    double total = 0.0;
    for (std::size_t i = 1; i <= b.size(); ++i) {
        long long ai = n + static_cast<long long>(i);
        if (ai < 1)
            continue;
        if (ai > static_cast<long long>(a.size()))
            break;
        total += a[static_cast<std::size_t>(ai) - 1] * b[i - 1];
    }
    return total;
}

/// Power sum of the lagged product sequence with its truncated part replaced
/// by the analytic integral: for unit-L RegVar coefficients,
///
///   sum_{i>L} (n+i)^{j(d-1)} i^{j(d-1)}  ~  integral_{L+1/2}^inf x^q (x+n)^q dx,
///
/// q = j(d-1), midpoint rule. Head terms up to L are summed directly by the
/// caller; this returns just the tail estimate.
[[nodiscard]] inline double
power_tail_estimate(double d, int j, long long n, std::size_t L) {
    double q = static_cast<double>(j) * (d - 1.0);
    return tail_power_product_integral(q, static_cast<double>(n),
                                       static_cast<double>(L) + 0.5);
}

/// tail_product_sum for a unit-L RegVar spec extended past the working length
/// by analytic continuation; converges to the genuinely infinite sum.
[[nodiscard]] inline double
tail_product_sum_continued(double d, long long n, std::size_t head_length) {
    double head = 0.0;
    for (std::size_t i = 1; i <= head_length; ++i) {
        double x = static_cast<double>(i);
        double y = static_cast<double>(n) + x;
        head += std::pow(x, d - 1.0) * std::pow(y, d - 1.0);
    }
    return head + power_tail_estimate(d, 1, n, head_length);
}

} // namespace chaoslim

#endif
