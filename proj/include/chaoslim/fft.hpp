#ifndef CHAOSLIM_FFT_HPP
#define CHAOSLIM_FFT_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "chaoslim/errors.hpp"

namespace chaoslim {

[[nodiscard]] inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

/// Iterative radix-2 complex FFT with precomputed bit-reversal and twiddle
/// tables. Plans are immutable after construction, so one plan can serve many
/// transforms of the same size; workers each own their plans (no shared
/// mutable state).
class FFTPlan {
public:
    explicit FFTPlan(std::size_t n) : n_(n) {
        if (n == 0 || (n & (n - 1)) != 0)
            throw ValidationError("FFTPlan: size must be a power of two");
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n)
            ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b))
                    r |= std::size_t{1} << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        cos_.resize(n / 2);
        sin_.resize(n / 2);
        for (std::size_t j = 0; j < n / 2; ++j) {
            double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
            cos_[j] = std::cos(theta);
            sin_[j] = std::sin(theta);
        }
    }

    [[nodiscard]] std::size_t size() const { return n_; }

    void forward(std::vector<double>& re, std::vector<double>& im) const { run(re, im, -1.0, false); }

    /// Inverse transform including the 1/n scale.
    void inverse(std::vector<double>& re, std::vector<double>& im) const { run(re, im, 1.0, true); }

private:
    void run(std::vector<double>& re, std::vector<double>& im, double sign, bool scale) const {
        if (re.size() != n_ || im.size() != n_)
            throw ValidationError("FFTPlan: buffer size mismatch");
        for (std::size_t i = 0; i < n_; ++i) {
            std::size_t j = bitrev_[i];
            if (j > i) {
                std::swap(re[i], re[j]);
                std::swap(im[i], im[j]);
            }
        }
        for (std::size_t len = 2; len <= n_; len <<= 1) {
            std::size_t half = len >> 1;
            std::size_t step = n_ / len;
            for (std::size_t base = 0; base < n_; base += len) {
                for (std::size_t j = 0; j < half; ++j) {
                    double c = cos_[j * step];
                    double s = sign * sin_[j * step];
                    std::size_t p = base + j;
                    std::size_t q = p + half;
                    double tr = re[q] * c - im[q] * s;
                    double ti = re[q] * s + im[q] * c;
                    re[q] = re[p] - tr;
                    im[q] = im[p] - ti;
                    re[p] += tr;
                    im[p] += ti;
                }
            }
        }
        if (scale) {
            double inv = 1.0 / static_cast<double>(n_);
            for (std::size_t i = 0; i < n_; ++i) {
                re[i] *= inv;
                im[i] *= inv;
            }
        }
    }

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<double> cos_, sin_;
};

/// Full linear convolution of two real sequences, length |a|+|b|-1.
/// Both forward transforms ride in a single complex FFT (a in the real lane,
/// b in the imaginary lane, spectra separated by Hermitian symmetry).
[[nodiscard]] inline std::vector<double>
convolve_real(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        return {};
    std::size_t out_len = a.size() + b.size() - 1;
    std::size_t n = next_pow2(out_len);
    FFTPlan plan(n);
    std::vector<double> re(n, 0.0), im(n, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        re[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        im[i] = b[i];
    plan.forward(re, im);
    std::vector<double> pr(n), pi(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t kc = (n - k) & (n - 1);
        double ar = 0.5 * (re[k] + re[kc]);
        double ai = 0.5 * (im[k] - im[kc]);
        double br = 0.5 * (im[k] + im[kc]);
        double bi = 0.5 * (re[kc] - re[k]);
        pr[k] = ar * br - ai * bi;
        pi[k] = ar * bi + ai * br;
    }
    plan.inverse(pr, pi);
    pr.resize(out_len);
    return pr;
}

/// g[h] = sum_i a_{i+h} a_i for h = 0..max_lag (indices within bounds).
[[nodiscard]] inline std::vector<double>
autocorrelate(std::span<const double> a, std::size_t max_lag) {
    std::vector<double> rev(a.rbegin(), a.rend());
    std::vector<double> conv = convolve_real(a, rev);
    // conv[|a|-1 + h] = sum_i a_{i+h} a_i
    std::size_t keep = std::min(max_lag + 1, a.size());
    std::vector<double> g(max_lag + 1, 0.0);
    for (std::size_t h = 0; h < keep; ++h)
        g[h] = conv[a.size() - 1 + h];
    return g;
}

} // namespace chaoslim

#endif
