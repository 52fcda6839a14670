#ifndef CHAOSLIM_CONFIG_HPP
#define CHAOSLIM_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoslim/errors.hpp"
#include "chaoslim/harness.hpp"
#include "chaoslim/process.hpp"

namespace chaoslim {

namespace detail {

template <class T>
T require_field(const nlohmann::json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key))
        throw ValidationError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(where + ": field '" + key + "': " + e.what());
    }
}

template <class T>
T optional_field(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key))
        return fallback;
    return j.at(key).get<T>();
}

inline SlowlyVaryingSpec parse_slowly_varying(const nlohmann::json& j, const std::string& where) {
    std::string kind = require_field<std::string>(j, "kind", where);
    if (kind == "constant")
        return SlowlyVaryingSpec::constant(optional_field<double>(j, "c", 1.0));
    if (kind == "log_power")
        return SlowlyVaryingSpec::log_power(require_field<double>(j, "p", where));
    if (kind == "iterated_log")
        return SlowlyVaryingSpec::iterated_log();
    throw ValidationError(where + ": unknown slowly-varying kind '" + kind + "'");
}

inline CoefficientSpec parse_coefficients(const nlohmann::json& j, const std::string& where) {
    std::string family = require_field<std::string>(j, "family", where);
    try {
        if (family == "reg_var") {
            auto L = j.contains("slowly_varying")
                         ? parse_slowly_varying(j.at("slowly_varying"), where + ".slowly_varying")
                         : SlowlyVaryingSpec::constant(1.0);
            return CoefficientSpec::reg_var(require_field<double>(j, "d", where), L,
                                            require_field<std::size_t>(j, "M", where));
        }
        if (family == "explicit")
            return CoefficientSpec::explicit_seq(
                require_field<std::vector<double>>(j, "values", where));
        if (family == "geometric")
            return CoefficientSpec::geometric(require_field<double>(j, "ratio", where),
                                              require_field<std::size_t>(j, "M", where));
        if (family == "bounded_decay")
            return CoefficientSpec::bounded_decay(
                require_field<double>(j, "d", where),
                require_field<std::vector<double>>(j, "values", where),
                optional_field<double>(j, "bound", 1.0));
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    throw ValidationError(where + ": unknown coefficient family '" + family + "'");
}

} // namespace detail

/// Parses the experiment/simulation config document. Block labels are
/// optional per component unless require_blocks is set (the experiment
/// subcommand needs them; plain simulation does not and defaults order-1
/// components to S1, higher orders to S2, long memory to L).
[[nodiscard]] inline ExperimentConfig parse_experiment_config(const nlohmann::json& root,
                                                              bool require_blocks = true) {
    ExperimentConfig cfg;
    if (!root.contains("components") || !root.at("components").is_array() ||
        root.at("components").empty())
        throw ValidationError("config: needs a non-empty 'components' array");

    const auto& exp = root.contains("experiment") ? root.at("experiment") : nlohmann::json::object();
    cfg.N = detail::optional_field<std::size_t>(exp, "N", cfg.N);
    cfg.R = detail::optional_field<std::size_t>(exp, "R", cfg.R);
    cfg.seed = detail::optional_field<std::uint64_t>(exp, "seed", 0);
    cfg.threads = detail::optional_field<std::size_t>(exp, "threads", 0);
    if (exp.contains("grid"))
        cfg.grid = TimeGrid::make(exp.at("grid").get<std::vector<double>>());
    if (exp.contains("noise"))
        cfg.noise.distribution =
            noise_distribution_from_name(exp.at("noise").get<std::string>());
    if (root.contains("tolerances")) {
        const auto& tol = root.at("tolerances");
        cfg.z_threshold = detail::optional_field<double>(tol, "z_threshold", cfg.z_threshold);
        cfg.distance_diagnostic =
            detail::optional_field<bool>(tol, "distance_diagnostic", false);
    }

    std::size_t idx = 0;
    for (const auto& cj : root.at("components")) {
        std::string where = "components[" + std::to_string(idx) + "]";
        ComponentConfig cc;
        int k = detail::require_field<int>(cj, "k", where);
        if (!cj.contains("coefficients"))
            throw ValidationError(where + ": missing field 'coefficients'");
        auto coeffs = detail::parse_coefficients(cj.at("coefficients"), where + ".coefficients");
        std::string label = detail::optional_field<std::string>(cj, "label", "");
        try {
            cc.spec = ChaosProcessSpec::make(std::move(coeffs), k,
                                             label.empty() ? "c" + std::to_string(idx) : label);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        if (cj.contains("block")) {
            cc.block = block_from_name(cj.at("block").get<std::string>());
        } else if (require_blocks) {
            throw ValidationError(where + ": missing field 'block' (S1, S2, or L)");
        } else {
            cc.block = cc.spec.regime.regime == Regime::LRD ? Block::L
                       : cc.spec.k == 1                     ? Block::S1
                                                            : Block::S2;
        }
        cfg.components.push_back(std::move(cc));
        ++idx;
    }
    return cfg;
}

[[nodiscard]] inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config parse error in " + path + ": " + e.what());
    }
    return j;
}

struct KernelCheckConfig {
    DiscreteKernel kernel;
    NoiseSpec noise;
    std::size_t R = 100000;
    std::uint64_t seed = 0;
};

[[nodiscard]] inline KernelCheckConfig parse_kernel_config(const nlohmann::json& root) {
    if (!root.contains("kernel"))
        throw ValidationError("config: missing 'kernel' object");
    const auto& kj = root.at("kernel");
    int k = detail::require_field<int>(kj, "k", "kernel");
    std::vector<std::pair<std::vector<long long>, double>> pts;
    if (!kj.contains("points") || !kj.at("points").is_array())
        throw ValidationError("kernel: needs a 'points' array");
    std::size_t idx = 0;
    for (const auto& pj : kj.at("points")) {
        std::string where = "kernel.points[" + std::to_string(idx) + "]";
        pts.emplace_back(detail::require_field<std::vector<long long>>(pj, "indices", where),
                         detail::require_field<double>(pj, "weight", where));
        ++idx;
    }
    KernelCheckConfig cfg;
    cfg.kernel = DiscreteKernel::make(k, std::move(pts));
    if (root.contains("noise"))
        cfg.noise.distribution =
            noise_distribution_from_name(root.at("noise").get<std::string>());
    cfg.R = detail::optional_field<std::size_t>(root, "R", cfg.R);
    cfg.seed = detail::optional_field<std::uint64_t>(root, "seed", 0);
    return cfg;
}

/// Round-trip echo of the effective configuration for the run manifest.
[[nodiscard]] inline nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json root;
    root["experiment"] = {{"N", cfg.N},       {"R", cfg.R},
                          {"seed", cfg.seed}, {"threads", cfg.threads},
                          {"grid", cfg.grid.t}, {"noise", cfg.noise.name()}};
    root["tolerances"] = {{"z_threshold", cfg.z_threshold},
                          {"distance_diagnostic", cfg.distance_diagnostic}};
    root["components"] = nlohmann::json::array();
    for (const auto& c : cfg.components) {
        nlohmann::json cj;
        cj["label"] = c.spec.label;
        cj["k"] = c.spec.k;
        cj["block"] = block_name(c.block);
        nlohmann::json co;
        switch (c.spec.coeffs.family) {
        case CoefficientFamily::RegVar: {
            co["family"] = "reg_var";
            co["d"] = c.spec.coeffs.d;
            co["M"] = c.spec.coeffs.M;
            const auto& L = c.spec.coeffs.L;
            if (!L.is_unit_constant()) {
                nlohmann::json lj;
                switch (L.kind) {
                case SlowlyVaryingKind::Constant:
                    lj = {{"kind", "constant"}, {"c", L.c}};
                    break;
                case SlowlyVaryingKind::LogPower:
                    lj = {{"kind", "log_power"}, {"p", L.p}};
                    break;
                case SlowlyVaryingKind::IteratedLog:
                    lj = {{"kind", "iterated_log"}};
                    break;
                }
                co["slowly_varying"] = lj;
            }
            break;
        }
        case CoefficientFamily::Explicit:
            co["family"] = "explicit";
            co["values"] = c.spec.coeffs.values;
            break;
        case CoefficientFamily::BoundedDecay:
            co["family"] = "bounded_decay";
            co["d"] = c.spec.coeffs.d;
            co["values"] = c.spec.coeffs.values;
            co["bound"] = c.spec.coeffs.bound_c;
            break;
        }
        cj["coefficients"] = co;
        root["components"].push_back(cj);
    }
    return root;
}

} // namespace chaoslim

#endif
