#ifndef CHAOSLIM_STATS_HPP
#define CHAOSLIM_STATS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chaoslim/errors.hpp"

namespace chaoslim {

/// Sample moments with normality z-scores. Skewness and excess kurtosis of
/// R iid Gaussians have standard errors sqrt(6/R) and sqrt(24/R); the
/// z-scores divide by those, so |z| < 4 is the usual acceptance band.
struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    double z_mean = 0.0;
    double z_skewness = 0.0;
    double z_kurtosis = 0.0;
};

[[nodiscard]] inline MomentSummary moment_summary(std::span<const double> x) {
    std::size_t n = x.size();
    if (n < 4)
        throw ValidationError("moment_summary: need at least 4 samples");
    double mean = 0.0;
    for (double v : x)
        mean += v;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        double c = v - mean;
        double c2 = c * c;
        m2 += c2;
        m3 += c2 * c;
        m4 += c2 * c2;
    }
    double dn = static_cast<double>(n);
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    MomentSummary s;
    s.n = n;
    s.mean = mean;
    s.variance = m2 * dn / (dn - 1.0);
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    s.z_mean = mean / std::sqrt(s.variance / dn);
    s.z_skewness = s.skewness / std::sqrt(6.0 / dn);
    s.z_kurtosis = s.excess_kurtosis / std::sqrt(24.0 / dn);
    return s;
}

[[nodiscard]] inline double sample_mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v;
    return s / static_cast<double>(x.size());
}

[[nodiscard]] inline double sample_variance(std::span<const double> x) {
    double mean = sample_mean(x);
    double s = 0.0;
    for (double v : x) {
        double c = v - mean;
        s += c * c;
    }
    return s / static_cast<double>(x.size() - 1);
}

/// Pairwise covariance estimate with a jackknife standard error. The
/// leave-one-out estimates are reconstructed from the five sufficient
/// sums, so the whole computation is a single O(n) pass plus an O(n)
/// jackknife sweep; no per-sample recomputation of the moments.
struct CovarianceEstimate {
    double cov = 0.0;      // unbiased sample covariance
    double corr = 0.0;     // Pearson correlation
    double se_cov = 0.0;   // jackknife se of cov
    double se_corr = 0.0;  // jackknife se of corr
};

[[nodiscard]] inline CovarianceEstimate
covariance_estimate(std::span<const double> x, std::span<const double> y) {
    std::size_t n = x.size();
    if (n != y.size() || n < 3)
        throw ValidationError("covariance_estimate: need matched samples, n >= 3");
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    double dn = static_cast<double>(n);
    auto cov_of = [](double sx_, double sy_, double sxy_, double m) {
        return (sxy_ - sx_ * sy_ / m) / (m - 1.0);
    };
    auto corr_of = [](double sx_, double sy_, double sxx_, double syy_, double sxy_, double m) {
        double cxy = sxy_ - sx_ * sy_ / m;
        double cxx = sxx_ - sx_ * sx_ / m;
        double cyy = syy_ - sy_ * sy_ / m;
        double den = std::sqrt(cxx * cyy);
        return den > 0.0 ? cxy / den : 0.0;
    };
    CovarianceEstimate e;
    e.cov = cov_of(sx, sy, sxy, dn);
    e.corr = corr_of(sx, sy, sxx, syy, sxy, dn);

    double mean_cov = 0.0, mean_corr = 0.0;
    std::vector<double> jc(n), jr(n);
    double m = dn - 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sx_ = sx - x[i], sy_ = sy - y[i];
        double sxx_ = sxx - x[i] * x[i], syy_ = syy - y[i] * y[i];
        double sxy_ = sxy - x[i] * y[i];
        jc[i] = cov_of(sx_, sy_, sxy_, m);
        jr[i] = corr_of(sx_, sy_, sxx_, syy_, sxy_, m);
        mean_cov += jc[i];
        mean_corr += jr[i];
    }
    mean_cov /= dn;
    mean_corr /= dn;
    double vc = 0.0, vr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        vc += (jc[i] - mean_cov) * (jc[i] - mean_cov);
        vr += (jr[i] - mean_corr) * (jr[i] - mean_corr);
    }
    e.se_cov = std::sqrt(vc * m / dn);
    e.se_corr = std::sqrt(vr * m / dn);
    return e;
}

/// Mean estimate with a jackknife se (reduces to the usual se of the mean;
/// kept for a uniform reporting interface).
struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
};

[[nodiscard]] inline MeanEstimate mean_estimate(std::span<const double> x) {
    MeanEstimate e;
    e.mean = sample_mean(x);
    e.se = std::sqrt(sample_variance(x) / static_cast<double>(x.size()));
    return e;
}

/// Distance correlation (double-centered pairwise distances). Zero iff
/// independent in the population limit; O(n^2), so reserved for an optional
/// slow diagnostic path.
[[nodiscard]] inline double distance_correlation(std::span<const double> x,
                                                 std::span<const double> y) {
    std::size_t n = x.size();
    if (n != y.size() || n < 4)
        throw ValidationError("distance_correlation: need matched samples, n >= 4");
    auto centered = [n](std::span<const double> v, std::vector<double>& m) {
        std::vector<double> row(n, 0.0);
        double grand = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double dist = std::abs(v[i] - v[j]);
                m[i * n + j] = dist;
                row[i] += dist;
                grand += dist;
            }
        for (std::size_t i = 0; i < n; ++i)
            row[i] /= static_cast<double>(n);
        grand /= static_cast<double>(n) * static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i * n + j] += grand - row[i] - row[j];
    };
    std::vector<double> ax(n * n), ay(n * n);
    centered(x, ax);
    centered(y, ay);
    double vxy = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
        vxy += ax[i] * ay[i];
        vx += ax[i] * ax[i];
        vy += ay[i] * ay[i];
    }
    double den = std::sqrt(vx * vy);
    return den > 0.0 ? std::sqrt(std::max(0.0, vxy) / den) : 0.0;
}

/// Least-squares slope of y against x.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

[[nodiscard]] inline SlopeFit ols_slope(std::span<const double> x, std::span<const double> y) {
    std::size_t n = x.size();
    if (n != y.size() || n < 2)
        throw ValidationError("ols_slope: need matched samples, n >= 2");
    double mx = sample_mean(x), my = sample_mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw ValidationError("ols_slope: degenerate abscissae");
    SlopeFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / static_cast<double>(n));
    return f;
}

} // namespace chaoslim

#endif
