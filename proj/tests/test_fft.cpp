#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "chaoslim/fft.hpp"

using namespace chaoslim;

namespace {

std::vector<std::complex<double>> dft_naive(const std::vector<double>& re,
                                            const std::vector<double>& im) {
    std::size_t n = re.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            double theta = -2.0 * M_PI * static_cast<double>(k * j % n) / static_cast<double>(n);
            acc += std::complex<double>(re[j], im[j]) * std::polar(1.0, theta);
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> convolve_naive(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

TEST_CASE("forward transform matches the naive DFT") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (std::size_t n : {2u, 8u, 64u, 256u}) {
        std::vector<double> re(n), im(n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] = unif(rng);
            im[i] = unif(rng);
        }
        auto want = dft_naive(re, im);
        FFTPlan plan(n);
        plan.forward(re, im);
        for (std::size_t k = 0; k < n; ++k) {
            REQUIRE(re[k] == Catch::Approx(want[k].real()).margin(1e-9));
            REQUIRE(im[k] == Catch::Approx(want[k].imag()).margin(1e-9));
        }
    }
}

TEST_CASE("inverse undoes forward") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::size_t n = 1024;
    std::vector<double> re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = unif(rng);
        im[i] = unif(rng);
    }
    auto re0 = re;
    auto im0 = im;
    FFTPlan plan(n);
    plan.forward(re, im);
    plan.inverse(re, im);
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(re[i] == Catch::Approx(re0[i]).margin(1e-11));
        REQUIRE(im[i] == Catch::Approx(im0[i]).margin(1e-11));
    }
}

TEST_CASE("parseval energy identity") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::size_t n = 512;
    std::vector<double> re(n), im(n, 0.0);
    for (double& v : re)
        v = unif(rng);
    double time_energy = 0.0;
    for (double v : re)
        time_energy += v * v;
    FFTPlan plan(n);
    plan.forward(re, im);
    double freq_energy = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        freq_energy += re[k] * re[k] + im[k] * im[k];
    REQUIRE(freq_energy / static_cast<double>(n) == Catch::Approx(time_energy).epsilon(1e-12));
}

TEST_CASE("real convolution matches the quadratic oracle") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (auto [la, lb] : {std::pair<std::size_t, std::size_t>{1, 1}, {5, 3}, {17, 200}, {300, 300}}) {
        std::vector<double> a(la), b(lb);
        for (double& v : a)
            v = unif(rng);
        for (double& v : b)
            v = unif(rng);
        auto fast = convolve_real(a, b);
        auto slow = convolve_naive(a, b);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i)
            REQUIRE(fast[i] == Catch::Approx(slow[i]).margin(1e-10));
    }
}

TEST_CASE("autocorrelation matches the direct sum") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> a(257);
    for (double& v : a)
        v = unif(rng);
    auto g = autocorrelate(a, 300);
    for (std::size_t h = 0; h <= 300; ++h) {
        double want = 0.0;
        for (std::size_t i = 0; i + h < a.size(); ++i)
            want += a[i + h] * a[i];
        REQUIRE(g[h] == Catch::Approx(want).margin(1e-10));
    }
}

TEST_CASE("plan rejects non power of two sizes") {
    REQUIRE_THROWS_AS(FFTPlan(0), ValidationError);
    REQUIRE_THROWS_AS(FFTPlan(12), ValidationError);
}
