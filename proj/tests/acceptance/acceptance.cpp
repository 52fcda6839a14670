// Acceptance gate: twelve verification criteria covering the exact
// combinatorial layer, the covariance formulas, both partial-sum limit
// regimes, the long-memory approximant, the moment inequality, and CLI
// determinism. One PASS/FAIL line per criterion; exit status is the number
// of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "chaoslim/config.hpp"
#include "chaoslim/covariance.hpp"
#include "chaoslim/harness.hpp"
#include "chaoslim/hermite.hpp"
#include "chaoslim/io.hpp"

using namespace chaoslim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;  // always-printed summary, set by the criterion
    std::string fails; // accumulated gate failures

    void gate(bool ok, const std::string& why) {
        if (!ok) {
            pass = false;
            if (!fails.empty())
                fails += "; ";
            fails += why;
        }
    }

    [[nodiscard]] std::string line() const {
        if (fails.empty())
            return note;
        return note.empty() ? fails : note + " [" + fails + "]";
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

bool scaled_close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

std::vector<double> random_coeffs(PhiloxStream& rng, std::size_t m, double lo = -1.0,
                                  double hi = 1.0) {
    std::vector<double> v(m);
    for (double& x : v)
        x = lo + (hi - lo) * rng.next_unit();
    return v;
}

// ---- criterion 1: elementary symmetric functions vs subset enumeration ----

double esf_enumerated(const std::vector<double>& c, int k) {
    int n = static_cast<int>(c.size());
    if (k == 0)
        return 1.0;
    if (k > n)
        return 0.0;
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k)
            continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                prod *= c[static_cast<std::size_t>(i)];
        total += prod;
    }
    return total;
}

Outcome criterion_esf() {
    Outcome out;
    PhiloxStream rng(101, 1);
    double worst = 0.0;
    for (std::size_t M = 1; M <= 10; ++M)
        for (int k = 1; k <= 4; ++k)
            for (int trial = 0; trial < 200; ++trial) {
                auto c = random_coeffs(rng, M);
                auto e = esf(c, k);
                double want = esf_enumerated(c, k);
                double got = e[static_cast<std::size_t>(k)];
                double scaled = std::abs(got - want) / std::max(1.0, std::abs(want));
                worst = std::max(worst, scaled);
            }
    out.gate(worst <= 1e-12, "max scaled error " + fmt(worst));
    out.note = "max scaled error " + fmt(worst) + " over 8000 inputs";
    return out;
}

// ---- criterion 2: simulation vs nested-loop evaluation ----

std::vector<double> simulate_enumerated(const std::vector<double>& a, int k,
                                        const NoiseWindow& w, std::size_t N) {
    int M = static_cast<int>(a.size());
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::vector<double> x(N, 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        if (k > M)
            continue;
        for (int i = 0; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = i + 1;
        double total = 0.0;
        while (true) {
            double prod = 1.0;
            for (int i : idx)
                prod *= a[static_cast<std::size_t>(i) - 1] *
                        w.at(static_cast<long long>(n) - i);
            total += prod;
            int pos = k - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == M - (k - 1 - pos))
                --pos;
            if (pos < 0)
                break;
            ++idx[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < k; ++i)
                idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
        }
        x[n - 1] = total;
    }
    return x;
}

Outcome criterion_simulation() {
    Outcome out;
    PhiloxStream rng(202, 1);
    const std::size_t N = 50;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::size_t M = 1 + static_cast<std::size_t>(seed % 8);
        int k = 1 + static_cast<int>(seed % 4);
        auto a = random_coeffs(rng, M);
        auto spec = ChaosProcessSpec::make(CoefficientSpec::explicit_seq(a), k);
        NoiseWindow w = make_noise_window(NoiseSpec{}, SeedPolicy{seed + 1}, 0, M, N);
        auto want = simulate_enumerated(a, k, w, N);
        for (auto kind : {SimulatorKind::Direct, SimulatorKind::PowerSum}) {
            auto got = simulate_path(spec, w, N, kind);
            for (std::size_t n = 0; n < N; ++n) {
                double scaled =
                    std::abs(got[n] - want[n]) / std::max(1.0, std::abs(want[n]));
                worst = std::max(worst, scaled);
            }
        }
    }
    out.gate(worst <= 1e-12, "max scaled error " + fmt(worst));
    out.note = "both routes, max scaled error " + fmt(worst);
    return out;
}

// ---- criterion 3: autocovariance decay constant ----

Outcome criterion_acf_constant() {
    Outcome out;
    const long long n = 10000;
    // head of 10^6 explicitly summed lagged products, analytic continuation
    // beyond (a hard cutoff at 10^6 would still be ~50% short at order 2:
    // the lagged-product sum converges like M^(2d-1))
    const std::size_t M = 1000000;
    struct Case {
        int k;
        double d;
    };
    std::string seen;
    for (Case c : {Case{1, 0.3}, Case{2, 0.4}, Case{3, 0.45}}) {
        double g = gamma_auto_continued(c.d, c.k, n, M);
        double d_X = 0.5 - c.k * (0.5 - c.d);
        double constant = lrd_asymptotic_constant(c.k, c.d);
        double ratio = g * std::pow(static_cast<double>(n), 1.0 - 2.0 * d_X) / constant;
        out.gate(ratio >= 0.9 && ratio <= 1.1,
                 "(k=" + std::to_string(c.k) + ", d=" + fmt(c.d) + ") ratio " + fmt(ratio));
        seen += (seen.empty() ? "" : ", ") + fmt(ratio);
    }
    out.note = "gamma ratios at n=1e4: " + seen;
    return out;
}

// ---- criterion 4: cross-covariance sum identity ----

Outcome criterion_cross_sum() {
    Outcome out;
    PhiloxStream rng(404, 1);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t Ma = 1 + static_cast<std::size_t>(rng.next_u32() % 30);
        std::size_t Mb = 1 + static_cast<std::size_t>(rng.next_u32() % 30);
        auto a = random_coeffs(rng, Ma);
        auto b = random_coeffs(rng, Mb);
        long long L = static_cast<long long>(std::max(Ma, Mb)) - 1;
        double lhs = 0.0;
        for (long long h = -L; h <= L; ++h)
            lhs += gamma_cross(a, 1, b, 1, h);
        double rhs = std::accumulate(a.begin(), a.end(), 0.0) *
                     std::accumulate(b.begin(), b.end(), 0.0);
        double scaled = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
        worst = std::max(worst, scaled);

        auto sp = ChaosProcessSpec::make(CoefficientSpec::explicit_seq(a), 1);
        auto sq = ChaosProcessSpec::make(CoefficientSpec::explicit_seq(b), 1);
        double via_sigma = long_run_cross(sp, sq).sigma_sq;
        worst = std::max(worst, std::abs(via_sigma - rhs) / std::max(1.0, std::abs(rhs)));
    }
    out.gate(worst <= 1e-10, "max scaled error " + fmt(worst));
    out.note = "lag sum vs coefficient-sum product, max scaled error " + fmt(worst);
    return out;
}

// ---- criterion 5: short-memory partial-sum variance normalization ----

Outcome criterion_srd_variance() {
    Outcome out;
    const std::size_t N = std::size_t{1} << 16;
    std::vector<ChaosProcessSpec> specs = {
        ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0}), 1, "unit"),
        ChaosProcessSpec::make(CoefficientSpec::explicit_seq({0.5, 0.5}), 1, "ma2"),
        ChaosProcessSpec::make(CoefficientSpec::geometric(0.5, 40), 1, "geo1"),
        ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0, 1.0}), 2, "pair"),
        ChaosProcessSpec::make(CoefficientSpec::geometric(0.5, 40), 2, "geo2"),
    };
    std::string seen;
    for (const auto& spec : specs) {
        double v = exact_partial_sum_variance(spec, N);
        double sigma_sq = long_run_sigma(spec).sigma_sq;
        double ratio = v / (static_cast<double>(N) * sigma_sq);
        out.gate(ratio >= 0.98 && ratio <= 1.02, spec.label + " ratio " + fmt(ratio));
        seen += (seen.empty() ? "" : ", ") + spec.label + " " + fmt(ratio);
    }
    out.note = seen;
    return out;
}

// ---- criterion 6: long-memory normalization exponent ----

Outcome criterion_lrd_exponent() {
    Outcome out;
    const std::size_t maxN = std::size_t{1} << 17;
    struct Case {
        int k;
        double d;
    };
    std::string seen;
    for (Case c : {Case{1, 0.4}, Case{2, 0.4}, Case{2, 0.45}}) {
        auto g = acf_auto_continued(c.d, c.k, maxN - 1, 4 * maxN);
        std::vector<double> lx, ly;
        double s1 = 0.0, s2 = 0.0;
        std::size_t h = 1;
        for (std::size_t N = std::size_t{1} << 12; N <= maxN; N <<= 1) {
            for (; h < N; ++h) {
                s1 += g[h];
                s2 += static_cast<double>(h) * g[h];
            }
            double v = static_cast<double>(N) * (g[0] + 2.0 * s1) - 2.0 * s2;
            lx.push_back(std::log(static_cast<double>(N)));
            ly.push_back(0.5 * std::log(v));
        }
        double H = 1.0 + c.k * (c.d - 0.5);
        double slope = ols_slope(lx, ly).slope;
        out.gate(std::abs(slope - H) <= 0.02, "(k=" + std::to_string(c.k) + ", d=" + fmt(c.d) +
                                                  ") slope " + fmt(slope) + " vs " + fmt(H));
        seen += (seen.empty() ? "" : ", ") + fmt(slope) + " (H=" + fmt(H) + ")";
    }
    out.note = "regression slopes: " + seen;
    return out;
}

// ---- criterion 7: mixed-order short-memory covariance matrix ----

Outcome criterion_srd_covariance() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0, 0.6, 0.3}), 1, "lvl"),
         Block::S1});
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0, -0.5, 0.25}), 2, "quad"),
         Block::S2});
    cfg.N = std::size_t{1} << 14;
    cfg.R = 2000;
    cfg.seed = 11;
    auto rep = run_experiment(cfg);

    std::size_t asserted = 0;
    double worst_z = 0.0;
    for (const auto& p : rep.covariance) {
        if (!p.asserted)
            continue;
        ++asserted;
        worst_z = std::max(worst_z, std::abs(p.z));
        if (!p.pass)
            out.gate(false, rep.labels[p.j1] + "(t=" + fmt(rep.grid_t[p.g1]) + ") x " +
                                rep.labels[p.j2] + "(t=" + fmt(rep.grid_t[p.g2]) + ") z=" +
                                fmt(p.z));
    }
    out.gate(asserted == rep.covariance.size(), "not every pair carried a target");
    out.note = std::to_string(asserted) + " covariance targets, worst |z| " + fmt(worst_z);
    return out;
}

// ---- criterion 8: three-block independence split ----

Outcome criterion_mixed_blocks() {
    Outcome out;
    ExperimentConfig cfg;
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::explicit_seq({0.5, 0.5}), 1, "short1"),
         Block::S1});
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::geometric(-0.7, 40), 2, "short2"), Block::S2});
    cfg.components.push_back(
        {ChaosProcessSpec::make(
             CoefficientSpec::reg_var(0.4, SlowlyVaryingSpec::constant(1.0), std::size_t{1} << 14),
             2, "long2"),
         Block::L});
    cfg.N = std::size_t{1} << 14;
    cfg.R = 2000;
    cfg.seed = 20260823;
    auto rep = run_experiment(cfg);

    for (const auto& p : rep.covariance)
        if (p.asserted && !p.pass)
            out.gate(false, "cov " + rep.labels[p.j1] + "(t=" + fmt(rep.grid_t[p.g1]) + ") x " +
                                rep.labels[p.j2] + "(t=" + fmt(rep.grid_t[p.g2]) + "): emp " +
                                fmt(p.empirical) + " target " + fmt(p.target) + " z " + fmt(p.z));

    double worst_corr = 0.0;
    for (const auto& e : rep.independence) {
        for (double c : e.corr)
            worst_corr = std::max(worst_corr, std::abs(c));
        if (!e.pass)
            out.gate(false, "independence " + rep.labels[e.j_s2] + " x " +
                                rep.labels[e.j_other] + " at t=" + fmt(rep.grid_t[e.g]));
    }
    out.gate(!rep.independence.empty(), "no independence pairs were formed");

    // the exact finite-N correlation with the noise-level sums stands in for
    // the limit value 1; it exceeds 0.999 at every grid time here
    double min_corr = 1.0;
    for (const auto& b : rep.brownian)
        if (b.versus_noise) {
            min_corr = std::min(min_corr, b.corr);
            if (!b.pass)
                out.gate(false, "noise coupling off target at t=" + fmt(rep.grid_t[b.g]));
            out.gate(b.corr >= 0.999, "corr(S1, W_N) = " + fmt(b.corr) + " below 0.999");
        }
    for (const auto& [name, ok] : rep.verdicts)
        out.gate(ok, "verdict " + name + " failed");
    out.note = "worst |corr| " + fmt(worst_corr) + ", min corr(S1, W_N) " + fmt(min_corr);
    return out;
}

// ---- criterion 9: long-memory marginal variance ----

Outcome criterion_hermite_marginals() {
    Outcome out;
    const std::size_t N = std::size_t{1} << 16;
    const std::size_t R = 600;
    struct Case {
        int k;
        double d;
    };
    std::string seen;
    for (Case c : {Case{1, 0.4}, Case{2, 0.4}}) {
        auto spec = HermiteSpec::make(c.k, c.d);
        double ratio = hermite_variance_ratio(spec, 0.5, N);
        out.gate(ratio >= 0.95 && ratio <= 1.05,
                 "k=" + std::to_string(c.k) + " exact half-time ratio " + fmt(ratio));

        auto sample = simulate_hermite(spec, N, R, TimeGrid::make({0.5, 1.0}), NoiseSpec{},
                                       SeedPolicy{900 + static_cast<std::uint64_t>(c.k)});
        std::vector<double> y(R);
        for (std::size_t r = 0; r < R; ++r)
            y[r] = sample.at(r, 1);
        double v = sample_variance(y);
        double gate = 4.0 * std::sqrt(2.0 / static_cast<double>(R));
        out.gate(std::abs(v - 1.0) <= gate, "k=" + std::to_string(c.k) + " Var Z(1) = " +
                                                fmt(v) + " (gate " + fmt(gate) + ")");
        seen += (seen.empty() ? "" : "; ") + std::string("k=") + std::to_string(c.k) +
                ": ratio " + fmt(ratio) + ", Var Z(1) " + fmt(v);
    }
    out.note = seen;
    return out;
}

// ---- criterion 10: Gaussian vs non-Gaussian marginals ----

Outcome criterion_gaussianity_contrast() {
    Outcome out;
    const std::size_t N = std::size_t{1} << 14;
    const std::size_t R = 5000;

    auto collect = [&](const ChaosProcessSpec& spec, std::uint64_t seed) {
        auto a = build_coefficients(spec.coeffs);
        auto plan = make_normalization(spec, N, NormalizationMode::ExactVariance);
        TimeGrid grid = TimeGrid::make({1.0});
        std::vector<double> y(R);
        bool fast = static_cast<double>(N) * static_cast<double>(a.size()) * spec.k > 2e7;
        PowerSumSimulator sim(a, spec.k, fast ? N : 4);
        parallel_for(R, 0, [&](std::size_t r) {
            NoiseWindow w = make_noise_window(NoiseSpec{}, SeedPolicy{seed}, r, a.size(), N);
            std::vector<double> x = fast ? sim.simulate(w.eps)
                                         : simulate_path_direct(a, spec.k, w, N);
            y[r] = partial_sum_process(x, plan, grid)[0];
        });
        return moment_summary(y);
    };

    auto srd = collect(ChaosProcessSpec::make(CoefficientSpec::geometric(-0.7, 40), 2), 31);
    out.gate(std::abs(srd.z_skewness) < 4.0 && std::abs(srd.z_kurtosis) < 4.0,
             "short-memory z_skew " + fmt(srd.z_skewness) + ", z_kurt " + fmt(srd.z_kurtosis));

    auto lrd = collect(
        ChaosProcessSpec::make(
            CoefficientSpec::reg_var(0.4, SlowlyVaryingSpec::constant(1.0), N), 2),
        32);
    out.gate(lrd.z_kurtosis > 4.0,
             "long-memory kurtosis z " + fmt(lrd.z_kurtosis) + " failed to flag");
    out.note = "short-memory |z| " +
                 fmt(std::max(std::abs(srd.z_skewness), std::abs(srd.z_kurtosis))) +
                 ", long-memory kurtosis z " + fmt(lrd.z_kurtosis);
    return out;
}

// ---- criterion 11: fourth-moment inequality sweep ----

Outcome criterion_moment_inequality() {
    Outcome out;
    PhiloxStream rng(1111, 1);
    // order-3 kernels under the exponential law make Q^2 skewed enough that
    // modest sample sizes underestimate mean and se together; the gate is a
    // plain 4 se test, so R has to be large enough for the CLT to hold at
    // the tails
    const std::size_t R = 2000000;
    int checked = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10; ++i) {
        int k = i < 5 ? 2 : 3;
        std::size_t points = 3 + rng.next_u32() % 4;
        std::vector<std::pair<std::vector<long long>, double>> pts;
        for (std::size_t p = 0; p < points; ++p) {
            std::vector<long long> idx;
            long long next = 1 + static_cast<long long>(rng.next_u32() % 3);
            for (int q = 0; q < k; ++q) {
                idx.push_back(next);
                next += 1 + static_cast<long long>(rng.next_u32() % 3);
            }
            double w = 2.0 * rng.next_unit() - 1.0;
            pts.emplace_back(std::move(idx), w == 0.0 ? 0.5 : w);
        }
        auto h = DiscreteKernel::make(k, std::move(pts));
        for (auto dist :
             {NoiseDistribution::Gaussian, NoiseDistribution::Rademacher,
              NoiseDistribution::CenteredUniform, NoiseDistribution::StandardizedExponential}) {
            NoiseSpec noise;
            noise.distribution = dist;
            auto r = hypercontractivity_check(h, noise, R,
                                              SeedPolicy{static_cast<std::uint64_t>(7000 + i)});
            ++checked;
            min_slack = std::min(min_slack, r.slack / std::max(1.0, r.bound));
            if (!r.inequality_pass)
                out.gate(false, "kernel " + std::to_string(i) + " " + noise.name() +
                                    " inequality violated");
            if (!r.crosscheck_pass)
                out.gate(false, "kernel " + std::to_string(i) + " " + noise.name() +
                                    " second moment off: mc " + fmt(r.second_moment_mc) +
                                    " vs exact " + fmt(r.second_moment_exact));
        }
    }
    out.note = std::to_string(checked) + " kernel/noise combinations, min relative slack " +
                 fmt(min_slack);
    return out;
}

// ---- criterion 12: CLI determinism ----

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("chaoslim_accept_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_cli_determinism() {
    Outcome out;
#if !defined(CHAOSLIM_CLI_PATH) || !defined(CHAOSLIM_CONFIG_DIR)
    out.gate(false, "CLI path not wired into the build");
    return out;
#else
    const std::string cli = CHAOSLIM_CLI_PATH;
    const std::string cfgdir = CHAOSLIM_CONFIG_DIR;
    TempDir root("cli");
    auto exp_cfg = root.path / "exp.json";
    std::ofstream(exp_cfg) << R"({
      "experiment": { "N": 1024, "R": 400, "seed": 3 },
      "components": [
        { "k": 1, "block": "S1", "coefficients": { "family": "explicit", "values": [1.0, 0.6] } },
        { "k": 2, "block": "S2", "coefficients": { "family": "explicit", "values": [1.0, -0.5] } } ] })";

    struct Job {
        std::string name;
        std::string args;
        std::vector<std::string> files;
    };
    std::vector<Job> jobs = {
        {"simulate_csv", "simulate --config " + cfgdir + "/simulate_small.json", {"paths.csv"}},
        {"simulate_bin", "simulate --config " + cfgdir + "/simulate_small.json --format bin",
         {"paths.bin"}},
        {"acf", "acf --k 2 --d 0.45 --M 2048 --max-lag 32", {"acf.csv"}},
        {"hermite", "hermite --k 2 --d 0.4 --N 512 --R 50 --seed 5", {"hermite.csv"}},
        {"experiment", "experiment --config " + exp_cfg.string(),
         {"covariance.csv", "independence.csv", "normality.csv", "brownian.csv", "summary.txt"}},
        {"check", "check --config " + cfgdir + "/kernel_check.json", {"check.json"}},
    };
    for (const auto& job : jobs) {
        TempDir a("cli_a_" + job.name), b("cli_b_" + job.name);
        for (const auto* dir : {&a, &b}) {
            std::string cmd =
                cli + " " + job.args + " --out " + dir->path.string() + " > /dev/null 2>&1";
            int rc = std::system(cmd.c_str());
            out.gate(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0,
                     job.name + " exited nonzero");
        }
        for (const auto& f : job.files) {
            std::string va = slurp(a.path / f), vb = slurp(b.path / f);
            out.gate(!va.empty() && va == vb, job.name + "/" + f + " differs between reruns");
        }
    }
    out.note = std::to_string(jobs.size()) + " subcommands byte-stable";
    return out;
#endif
}

} // namespace

int main(int argc, char** argv) {
    // optional args restrict the run to the listed criterion numbers
    std::vector<int> only;
    for (int i = 1; i < argc; ++i)
        only.push_back(std::atoi(argv[i]));

    struct Entry {
        const char* title;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {"symmetric-function oracle equivalence", criterion_esf},
        {"simulation oracle equivalence", criterion_simulation},
        {"autocovariance decay constant", criterion_acf_constant},
        {"cross-covariance sum identity", criterion_cross_sum},
        {"short-memory variance normalization", criterion_srd_variance},
        {"long-memory normalization exponent", criterion_lrd_exponent},
        {"mixed-order covariance matrix", criterion_srd_covariance},
        {"three-block independence split", criterion_mixed_blocks},
        {"long-memory marginal variance", criterion_hermite_marginals},
        {"Gaussianity contrast", criterion_gaussianity_contrast},
        {"fourth-moment inequality sweep", criterion_moment_inequality},
        {"CLI determinism", criterion_cli_determinism},
    };

    int failures = 0;
    int id = 0;
    for (const auto& e : entries) {
        ++id;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out.pass = false;
            out.note = std::string("exception: ") + ex.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("AC%-2d %-4s (%6.1fs) %s: %s\n", id, out.pass ? "PASS" : "FAIL", secs,
                    e.title, out.line().c_str());
        std::fflush(stdout);
        if (!out.pass)
            ++failures;
    }
    if (failures == 0)
        std::printf("all 12 criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
