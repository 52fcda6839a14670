// Prints the autocovariance of an order-k power-law process next to its
// predicted asymptote, then the local log-log slope, so the crossover into
// the n^(2 d_X - 1) regime is visible by eye.
//
//   ./demo_acf_decay [k] [d]

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "chaoslim/covariance.hpp"

using namespace chaoslim;

int main(int argc, char** argv) {
    int k = argc > 1 ? std::atoi(argv[1]) : 2;
    double d = argc > 2 ? std::atof(argv[2]) : 0.4;

    double d_X = 0.5 - k * (0.5 - d);
    double constant = lrd_asymptotic_constant(k, d);
    std::printf("order k = %d, memory d = %.3f  =>  d_X = %.3f, gamma(n) ~ %.6g n^%.3f\n\n",
                k, d, d_X, constant, 2.0 * d_X - 1.0);

    const std::size_t max_lag = 1 << 14;
    auto g = acf_auto_continued(d, k, max_lag, 4 * max_lag);

    std::printf("%8s  %14s  %14s  %8s  %8s\n", "n", "gamma(n)", "asymptote", "ratio",
                "slope");
    double prev = 0.0;
    for (std::size_t n = 1; n <= max_lag; n *= 4) {
        double asym = constant * std::pow(static_cast<double>(n), 2.0 * d_X - 1.0);
        double slope = n == 1 ? 0.0 : std::log(g[n] / prev) / std::log(4.0);
        std::printf("%8zu  %14.6e  %14.6e  %8.4f  %8.4f\n", n, g[n], asym, g[n] / asym,
                    slope);
        prev = g[n];
    }
    std::printf("\n(slope column should approach %.3f)\n", 2.0 * d_X - 1.0);
    return 0;
}
