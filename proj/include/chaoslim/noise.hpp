#ifndef CHAOSLIM_NOISE_HPP
#define CHAOSLIM_NOISE_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "chaoslim/errors.hpp"
#include "chaoslim/philox.hpp"

namespace chaoslim {

enum class NoiseDistribution {
    Gaussian,
    Rademacher,
    CenteredUniform,         // uniform on (-sqrt(3), sqrt(3)), variance 1
    StandardizedExponential, // Exp(1) - 1
};

/// Innovation distribution descriptor. All built-ins are mean 0, variance 1,
/// with every absolute moment finite, so any of them satisfies the moment
/// assumptions of the limit theorems being verified.
struct NoiseSpec {
    NoiseDistribution distribution = NoiseDistribution::Gaussian;

    /// Exact fourth moment E(eps^4) of the selected distribution.
    [[nodiscard]] double fourth_moment() const {
        switch (distribution) {
        case NoiseDistribution::Gaussian: return 3.0;
        case NoiseDistribution::Rademacher: return 1.0;
        case NoiseDistribution::CenteredUniform: return 9.0 / 5.0;
        case NoiseDistribution::StandardizedExponential: return 9.0;
        }
        throw ValidationError("NoiseSpec: unknown distribution");
    }

    [[nodiscard]] std::string name() const {
        switch (distribution) {
        case NoiseDistribution::Gaussian: return "gaussian";
        case NoiseDistribution::Rademacher: return "rademacher";
        case NoiseDistribution::CenteredUniform: return "centered_uniform";
        case NoiseDistribution::StandardizedExponential: return "standardized_exponential";
        }
        throw ValidationError("NoiseSpec: unknown distribution");
    }
};

[[nodiscard]] inline NoiseDistribution noise_distribution_from_name(const std::string& s) {
    if (s == "gaussian") return NoiseDistribution::Gaussian;
    if (s == "rademacher") return NoiseDistribution::Rademacher;
    if (s == "centered_uniform") return NoiseDistribution::CenteredUniform;
    if (s == "standardized_exponential") return NoiseDistribution::StandardizedExponential;
    throw ValidationError("unknown noise distribution: " + s);
}

/// Seeding contract: one stream per replication index, all components of that
/// replication consume the same stream. Derivation is pure, so replication
/// workers never share state.
struct SeedPolicy {
    std::uint64_t master_seed = 0;
};

/// Draws one variate; Gaussian uses Box-Muller and hands pairs out one by one.
class NoiseSampler {
public:
    NoiseSampler(NoiseSpec spec, SeedPolicy policy, std::uint64_t replication)
        : spec_(spec), stream_(policy.master_seed, replication) {}

    [[nodiscard]] double next() {
        switch (spec_.distribution) {
        case NoiseDistribution::Gaussian: {
            if (have_spare_) {
                have_spare_ = false;
                return spare_;
            }
            double u1 = stream_.next_unit();
            double u2 = stream_.next_unit();
            double radius = std::sqrt(-2.0 * std::log(u1));
            spare_ = radius * std::sin(2.0 * M_PI * u2);
            have_spare_ = true;
            return radius * std::cos(2.0 * M_PI * u2);
        }
        case NoiseDistribution::Rademacher:
            return (stream_.next_u32() & 0x80000000u) ? 1.0 : -1.0;
        case NoiseDistribution::CenteredUniform:
            return (stream_.next_unit() - 0.5) * 2.0 * std::sqrt(3.0);
        case NoiseDistribution::StandardizedExponential:
            return -std::log(stream_.next_unit()) - 1.0;
        }
        throw ValidationError("NoiseSampler: unknown distribution");
    }

private:
    NoiseSpec spec_;
    PhiloxStream stream_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

[[nodiscard]] inline std::vector<double>
generate_noise(NoiseSpec spec, SeedPolicy policy, std::uint64_t replication, std::size_t length) {
    if (length == 0)
        throw ValidationError("generate_noise: length must be >= 1");
    NoiseSampler sampler(spec, policy, replication);
    std::vector<double> out(length);
    for (double& v : out)
        v = sampler.next();
    return out;
}

/// Materialized innovation window eps_{1-M}, ..., eps_N for one replication.
/// Every component of the replication addresses the same realized values
/// through at(); index arithmetic lives here so filters cannot misalign.
struct NoiseWindow {
    std::vector<double> eps;
    long long lo = 0; // time index of eps[0]

    [[nodiscard]] double at(long long t) const { return eps[static_cast<std::size_t>(t - lo)]; }
    [[nodiscard]] long long hi() const { return lo + static_cast<long long>(eps.size()) - 1; }
};

[[nodiscard]] inline NoiseWindow
make_noise_window(NoiseSpec spec, SeedPolicy policy, std::uint64_t replication,
                  std::size_t M, std::size_t N) {
    NoiseWindow w;
    w.lo = 1 - static_cast<long long>(M);
    w.eps = generate_noise(spec, policy, replication, M + N);
    return w;
}

} // namespace chaoslim

#endif
