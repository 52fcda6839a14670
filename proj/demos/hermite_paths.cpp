// Simulates a handful of long-memory limit paths (fractional Brownian
// motion at k = 1, the non-Gaussian order-2 limit otherwise) on a fine
// grid and writes them as CSV for plotting, together with the exact
// variance function t^{2H}.
//
//   ./demo_hermite_paths > paths.csv

#include <cstdio>
#include <vector>

#include "chaoslim/hermite.hpp"

using namespace chaoslim;

int main() {
    auto spec = HermiteSpec::make(2, 0.4);
    const std::size_t N = 2048, R = 5;

    std::vector<double> t;
    for (int i = 1; i <= 64; ++i)
        t.push_back(i / 64.0);
    auto sample = simulate_hermite(spec, N, R, TimeGrid::make(t), NoiseSpec{}, SeedPolicy{7});

    std::printf("t,var_exact");
    for (std::size_t r = 0; r < R; ++r)
        std::printf(",path%zu", r);
    std::printf("\n");
    for (std::size_t g = 0; g < t.size(); ++g) {
        std::printf("%.6f,%.6f", t[g], hermite_theoretical_variance(spec, t[g]));
        for (std::size_t r = 0; r < R; ++r)
            std::printf(",%.6f", sample.at(r, g));
        std::printf("\n");
    }
    std::fprintf(stderr, "wrote %zu paths, H = %.3f\n", R, spec.H);
    return 0;
}
