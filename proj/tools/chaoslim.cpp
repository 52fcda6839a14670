// chaoslim: simulation and verification CLI for discrete-chaos processes.
//
// Subcommands:
//   simulate    sample paths of a component vector -> CSV/binary + manifest
//   acf         exact covariance lag table for one spec or a pair
//   experiment  multivariate partial-sum verification run -> report files
//   hermite     variance profile of the long-memory approximant
//   check       moment-inequality spot check for an explicit kernel
//
// Exit codes: 0 success, 2 usage, 3 validation, 4 verdict failure, 5 runtime.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "chaoslim/config.hpp"
#include "chaoslim/covariance.hpp"
#include "chaoslim/harness.hpp"
#include "chaoslim/hermite.hpp"
#include "chaoslim/io.hpp"

namespace fs = std::filesystem;
using namespace chaoslim;

namespace {

constexpr int kExitValidation = 3;
constexpr int kExitVerdict = 4;
constexpr int kExitRuntime = 5;

std::size_t threads_from_env(std::size_t fallback) {
    const char* env = std::getenv("CHAOSLIM_THREADS");
    if (env == nullptr || *env == '\0')
        return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw ValidationError("CHAOSLIM_THREADS is not a nonnegative integer");
    return static_cast<std::size_t>(v);
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ValidationError("cannot create output directory: " + dir.string());
    return dir;
}

struct CommonOpts {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t threads = 0;
    bool threads_set = false;
    std::vector<double> grid;

    void apply(ExperimentConfig& cfg) const {
        if (seed_set)
            cfg.seed = seed;
        if (threads_set)
            cfg.threads = threads;
        else
            cfg.threads = threads_from_env(cfg.threads);
        if (!grid.empty())
            cfg.grid = TimeGrid::make(grid);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_grid) {
    cmd->add_option("--config", o.config, "configuration file (JSON)")->required();
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--seed", o.seed, "override the config seed")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--threads", o.threads,
                    "worker thread count (0 = all cores; falls back to CHAOSLIM_THREADS)")
        ->each([&o](const std::string&) { o.threads_set = true; });
    if (with_grid)
        cmd->add_option("--grid", o.grid, "time grid in (0, 1], last point 1")->delimiter(',');
}

int cmd_simulate(const CommonOpts& o, const std::string& format) {
    auto root = load_json_file(o.config);
    auto cfg = parse_experiment_config(root, /*require_blocks=*/false);
    o.apply(cfg);

    std::vector<ChaosProcessSpec> specs;
    for (const auto& c : cfg.components)
        specs.push_back(c.spec);
    auto paths = simulate_vector(specs, cfg.noise, SeedPolicy{cfg.seed}, cfg.N, cfg.R);

    fs::path dir = ensure_out_dir(o.out);
    fs::path data = dir / (format == "bin" ? "paths.bin" : "paths.csv");
    if (format == "bin")
        write_paths_bin(data, paths);
    else
        write_paths_csv(data, paths);
    write_manifest(dir / "manifest.json", experiment_config_to_json(cfg), cfg.seed, {data});
    std::cout << "wrote " << data.string() << " (" << paths.R << " x " << paths.J << " x "
              << paths.N << ")\n";
    return 0;
}

struct AcfOpts {
    int k = 1, k2 = 0;
    std::vector<double> values, values2;
    double d = 0.0, d2 = 0.0;
    std::size_t M = 0, M2 = 0;
    std::size_t max_lag = 64;
    std::string out = ".";
};

CoefficientSpec acf_spec(const std::vector<double>& values, double d, std::size_t M,
                         const char* which) {
    if (!values.empty()) {
        if (M != 0 || d != 0.0)
            throw ValidationError(std::string("acf: give either explicit ") + which +
                                  " values or a power-law (d, M), not both");
        return CoefficientSpec::explicit_seq(values);
    }
    if (M == 0)
        throw ValidationError(std::string("acf: ") + which +
                              " spec needs --values or both --d and --M");
    return CoefficientSpec::reg_var(d, SlowlyVaryingSpec::constant(1.0), M);
}

int cmd_acf(const AcfOpts& o) {
    auto a = build_coefficients(acf_spec(o.values, o.d, o.M, "first"));
    fs::path dir = ensure_out_dir(o.out);
    fs::path data = dir / "acf.csv";

    bool cross = !o.values2.empty() || o.M2 != 0;
    if (!cross) {
        auto gamma = acf_auto_batch(a, o.k, o.max_lag, AcfMethod::Auto);
        write_acf_csv(data, gamma);
    } else {
        auto b = build_coefficients(acf_spec(o.values2, o.d2, o.M2, "second"));
        int kb = o.k2 > 0 ? o.k2 : o.k;
        auto out = open_output(data);
        out << "lag,gamma,cumulative,local_slope\n";
        double cum = 0.0;
        long long L = static_cast<long long>(o.max_lag);
        for (long long h = -L; h <= L; ++h) {
            double g = gamma_cross(a, o.k, b, kb, h);
            cum += g;
            out << h << ',' << format_double(g) << ',' << format_double(cum) << ",\n";
        }
    }
    std::cout << "wrote " << data.string() << '\n';
    return 0;
}

int cmd_experiment(const CommonOpts& o) {
    auto root = load_json_file(o.config);
    auto cfg = parse_experiment_config(root, /*require_blocks=*/true);
    o.apply(cfg);

    auto rep = run_experiment(cfg);

    fs::path dir = ensure_out_dir(o.out);
    std::vector<fs::path> files = {dir / "covariance.csv", dir / "independence.csv",
                                   dir / "normality.csv", dir / "brownian.csv",
                                   dir / "summary.txt"};
    write_covariance_csv(files[0], rep);
    write_independence_csv(files[1], rep);
    write_normality_csv(files[2], rep);
    write_brownian_csv(files[3], rep);
    write_summary_txt(files[4], rep);
    write_manifest(dir / "manifest.json", experiment_config_to_json(cfg), cfg.seed, files);

    for (const auto& [name, ok] : rep.verdicts)
        std::cout << name << ": " << (ok ? "PASS" : "FAIL") << '\n';
    std::cout << "overall: " << (rep.all_pass ? "PASS" : "FAIL") << '\n';
    return rep.all_pass ? 0 : kExitVerdict;
}

struct HermiteOpts {
    int k = 2;
    double d = 0.4;
    std::size_t N = 4096, R = 200, window_factor = 1;
    std::string noise = "gaussian";
    std::uint64_t seed = 0;
    std::vector<double> grid;
    std::string out = ".";
};

int cmd_hermite(const HermiteOpts& o) {
    auto spec = HermiteSpec::make(o.k, o.d);
    TimeGrid grid = o.grid.empty() ? TimeGrid::quarters() : TimeGrid::make(o.grid);
    NoiseSpec noise;
    noise.distribution = noise_distribution_from_name(o.noise);
    auto sample =
        simulate_hermite(spec, o.N, o.R, grid, noise, SeedPolicy{o.seed}, o.window_factor);

    fs::path dir = ensure_out_dir(o.out);
    fs::path data = dir / "hermite.csv";
    auto out = open_output(data);
    out << "t,theoretical_variance,mc_variance,mc_se,exact_ratio\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> y(o.R);
        for (std::size_t r = 0; r < o.R; ++r)
            y[r] = sample.at(r, g);
        double mean = sample_mean(y);
        double var = sample_variance(y);
        double m4 = 0.0;
        for (double v : y) {
            double c = v - mean;
            m4 += c * c * c * c;
        }
        m4 /= static_cast<double>(o.R);
        double se = std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(o.R));
        out << format_double(grid.t[g]) << ','
            << format_double(hermite_theoretical_variance(spec, grid.t[g])) << ','
            << format_double(var) << ',' << format_double(se) << ','
            << format_double(hermite_variance_ratio(spec, grid.t[g], o.N)) << '\n';
    }
    out.close();
    std::cout << "wrote " << data.string() << " (H = " << format_double(spec.H) << ")\n";
    return 0;
}

int cmd_check(const CommonOpts& o) {
    auto root = load_json_file(o.config);
    auto cfg = parse_kernel_config(root);
    if (o.seed_set)
        cfg.seed = o.seed;
    std::size_t threads = o.threads_set ? o.threads : threads_from_env(0);

    auto rep = hypercontractivity_check(cfg.kernel, cfg.noise, cfg.R, SeedPolicy{cfg.seed},
                                        threads);

    fs::path dir = ensure_out_dir(o.out);
    nlohmann::json j = {{"R", rep.R},
                        {"k", rep.k},
                        {"noise", rep.noise_name},
                        {"second_moment_mc", rep.second_moment_mc},
                        {"second_moment_se", rep.second_moment_se},
                        {"second_moment_exact", rep.second_moment_exact},
                        {"fourth_moment_mc", rep.fourth_moment_mc},
                        {"fourth_moment_se", rep.fourth_moment_se},
                        {"constant", rep.constant},
                        {"bound", rep.bound},
                        {"slack", rep.slack},
                        {"inequality_pass", rep.inequality_pass},
                        {"crosscheck_pass", rep.crosscheck_pass},
                        {"pass", rep.pass}};
    {
        auto out = open_output(dir / "check.json");
        out << j.dump(2) << '\n';
    }
    std::cout << "E(Q^2): mc " << format_double(rep.second_moment_mc) << "  exact "
              << format_double(rep.second_moment_exact) << '\n';
    std::cout << "E(Q^4): mc " << format_double(rep.fourth_moment_mc) << "  bound "
              << format_double(rep.bound) << '\n';
    std::cout << "moment inequality: " << (rep.inequality_pass ? "PASS" : "FAIL") << '\n';
    std::cout << "sampler cross-check: " << (rep.crosscheck_pass ? "PASS" : "FAIL") << '\n';
    return rep.pass ? 0 : kExitVerdict;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and verification toolkit for discrete-chaos processes"};
    app.require_subcommand(1);

    CommonOpts sim_opts;
    std::string sim_format = "csv";
    auto* sim = app.add_subcommand("simulate", "sample paths of the configured components");
    add_common(sim, sim_opts, /*with_grid=*/false);
    sim->add_option("--format", sim_format, "output format")
        ->check(CLI::IsMember({"csv", "bin"}))
        ->capture_default_str();

    AcfOpts acf_opts;
    auto* acf = app.add_subcommand("acf", "exact covariance lag table");
    acf->add_option("--k", acf_opts.k, "chaos order")->capture_default_str();
    acf->add_option("--values", acf_opts.values, "explicit coefficients")->delimiter(',');
    acf->add_option("--d", acf_opts.d, "power-law decay parameter in (0, 1/2)");
    acf->add_option("--M", acf_opts.M, "power-law working length");
    acf->add_option("--k2", acf_opts.k2, "second spec order (cross mode)");
    acf->add_option("--values2", acf_opts.values2, "second spec coefficients (cross mode)")
        ->delimiter(',');
    acf->add_option("--d2", acf_opts.d2, "second spec decay parameter");
    acf->add_option("--M2", acf_opts.M2, "second spec working length");
    acf->add_option("--max-lag", acf_opts.max_lag, "largest lag")->capture_default_str();
    acf->add_option("--out", acf_opts.out, "output directory")->capture_default_str();

    CommonOpts exp_opts;
    auto* exp = app.add_subcommand("experiment", "multivariate partial-sum verification run");
    add_common(exp, exp_opts, /*with_grid=*/true);

    HermiteOpts her_opts;
    auto* her = app.add_subcommand("hermite", "variance profile of the long-memory approximant");
    her->add_option("--k", her_opts.k, "chaos order")->capture_default_str();
    her->add_option("--d", her_opts.d, "decay parameter in the long-memory range")
        ->capture_default_str();
    her->add_option("--N", her_opts.N, "time steps")->capture_default_str();
    her->add_option("--R", her_opts.R, "replications")->capture_default_str();
    her->add_option("--window-factor", her_opts.window_factor,
                    "coefficient window length as a multiple of N")
        ->capture_default_str();
    her->add_option("--noise", her_opts.noise, "innovation distribution")->capture_default_str();
    her->add_option("--seed", her_opts.seed, "master seed")->capture_default_str();
    her->add_option("--grid", her_opts.grid, "time grid in (0, 1], last point 1")
        ->delimiter(',');
    her->add_option("--out", her_opts.out, "output directory")->capture_default_str();

    CommonOpts chk_opts;
    auto* chk = app.add_subcommand("check", "moment-inequality spot check for a kernel");
    add_common(chk, chk_opts, /*with_grid=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_opts, sim_format);
        if (acf->parsed())
            return cmd_acf(acf_opts);
        if (exp->parsed())
            return cmd_experiment(exp_opts);
        if (her->parsed())
            return cmd_hermite(her_opts);
        if (chk->parsed())
            return cmd_check(chk_opts);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 2;
}
