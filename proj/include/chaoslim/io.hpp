#ifndef CHAOSLIM_IO_HPP
#define CHAOSLIM_IO_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaoslim/errors.hpp"
#include "chaoslim/harness.hpp"
#include "chaoslim/process.hpp"

namespace chaoslim {

/// Shortest round-trippable decimal form of a double.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[nodiscard]] inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

[[nodiscard]] inline std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open file for hashing: " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    return h;
}

[[nodiscard]] inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary); // binary: LF line endings everywhere
    if (!out)
        throw ValidationError("cannot open output file: " + path.string());
    return out;
}

/// Long-format path table, one row per (replication, component, time step).
inline void write_paths_csv(const std::filesystem::path& path, const PathMatrix& m) {
    auto out = open_output(path);
    out << "r,j,n,value\n";
    for (std::size_t r = 0; r < m.R; ++r)
        for (std::size_t j = 0; j < m.J; ++j)
            for (std::size_t n = 1; n <= m.N; ++n)
                out << r << ',' << j << ',' << n << ',' << format_double(m.at(r, j, n)) << '\n';
}

/// Binary layout: magic "CHLM", u32 version, u64 N, u32 J, u32 R, then
/// R*J*N float64 values in (r, j, n) row-major order. Little-endian host
/// assumed (checked at runtime).
inline void write_paths_bin(const std::filesystem::path& path, const PathMatrix& m) {
    std::uint32_t probe = 1;
    char probe_byte;
    std::memcpy(&probe_byte, &probe, 1);
    if (probe_byte != 1)
        throw ValidationError("binary path output requires a little-endian host");
    auto out = open_output(path);
    out.write("CHLM", 4);
    std::uint32_t version = 1, J = static_cast<std::uint32_t>(m.J),
                  R = static_cast<std::uint32_t>(m.R);
    std::uint64_t N = m.N;
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&N), 8);
    out.write(reinterpret_cast<const char*>(&J), 4);
    out.write(reinterpret_cast<const char*>(&R), 4);
    out.write(reinterpret_cast<const char*>(m.values.data()),
              static_cast<std::streamsize>(m.values.size() * sizeof(double)));
}

[[nodiscard]] inline PathMatrix read_paths_bin(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open path file: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "CHLM", 4) != 0)
        throw ValidationError("not a path file (bad magic): " + path.string());
    std::uint32_t version = 0, J = 0, R = 0;
    std::uint64_t N = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&N), 8);
    in.read(reinterpret_cast<char*>(&J), 4);
    in.read(reinterpret_cast<char*>(&R), 4);
    if (version != 1)
        throw ValidationError("unsupported path file version");
    PathMatrix m;
    m.N = N;
    m.J = J;
    m.R = R;
    m.values.resize(N * J * R);
    in.read(reinterpret_cast<char*>(m.values.data()),
            static_cast<std::streamsize>(m.values.size() * sizeof(double)));
    if (!in)
        throw ValidationError("truncated path file: " + path.string());
    return m;
}

/// Lag table for the acf subcommand: cumulative sum tracks the long-run
/// variance buildup, local_slope is d log gamma / d log n between
/// consecutive positive lags (empty where undefined).
inline void write_acf_csv(const std::filesystem::path& path, const std::vector<double>& gamma) {
    auto out = open_output(path);
    out << "lag,gamma,cumulative,local_slope\n";
    double cum = 0.0;
    for (std::size_t h = 0; h < gamma.size(); ++h) {
        cum += (h == 0 ? 1.0 : 2.0) * gamma[h];
        out << h << ',' << format_double(gamma[h]) << ',' << format_double(cum) << ',';
        if (h >= 2 && gamma[h] > 0.0 && gamma[h - 1] > 0.0) {
            double slope = (std::log(gamma[h]) - std::log(gamma[h - 1])) /
                           (std::log(static_cast<double>(h)) -
                            std::log(static_cast<double>(h - 1)));
            out << format_double(slope);
        }
        out << '\n';
    }
}

inline void write_covariance_csv(const std::filesystem::path& path, const ExperimentReport& r) {
    auto out = open_output(path);
    out << "j1,t1,j2,t2,empirical,se,target,z,asserted,pass\n";
    for (const auto& p : r.covariance) {
        out << r.labels[p.j1] << ',' << format_double(r.grid_t[p.g1]) << ',' << r.labels[p.j2]
            << ',' << format_double(r.grid_t[p.g2]) << ',' << format_double(p.empirical) << ','
            << format_double(p.se) << ',';
        if (!std::isnan(p.target))
            out << format_double(p.target);
        out << ',';
        if (!std::isnan(p.z))
            out << format_double(p.z);
        out << ',' << (p.asserted ? 1 : 0) << ',' << (p.pass ? 1 : 0) << '\n';
    }
}

inline void write_independence_csv(const std::filesystem::path& path, const ExperimentReport& r) {
    auto out = open_output(path);
    out << "j_s2,j_other,t,corr_ll,se_ll,corr_ls,se_ls,corr_sl,se_sl,corr_ss,se_ss,dcorr,pass\n";
    for (const auto& e : r.independence) {
        out << r.labels[e.j_s2] << ',' << r.labels[e.j_other] << ','
            << format_double(r.grid_t[e.g]);
        for (int q = 0; q < 4; ++q)
            out << ',' << format_double(e.corr[q]) << ',' << format_double(e.se[q]);
        out << ',';
        if (!std::isnan(e.dcorr))
            out << format_double(e.dcorr);
        out << ',' << (e.pass ? 1 : 0) << '\n';
    }
}

inline void write_normality_csv(const std::filesystem::path& path, const ExperimentReport& r) {
    auto out = open_output(path);
    out << "j,t,mean,variance,skewness,excess_kurtosis,z_skewness,z_kurtosis,flagged\n";
    for (const auto& e : r.normality) {
        const auto& m = e.moments;
        out << r.labels[e.j] << ',' << format_double(r.grid_t[e.g]) << ','
            << format_double(m.mean) << ',' << format_double(m.variance) << ','
            << format_double(m.skewness) << ',' << format_double(m.excess_kurtosis) << ','
            << format_double(m.z_skewness) << ',' << format_double(m.z_kurtosis) << ','
            << (e.flagged ? 1 : 0) << '\n';
    }
}

inline void write_brownian_csv(const std::filesystem::path& path, const ExperimentReport& r) {
    auto out = open_output(path);
    out << "j1,j2,t,corr,se,target,pass\n";
    for (const auto& e : r.brownian) {
        out << r.labels[e.j1] << ',' << (e.versus_noise ? "W_N" : r.labels[e.j2]) << ','
            << format_double(r.grid_t[e.g]) << ',' << format_double(e.corr) << ','
            << format_double(e.se) << ',' << format_double(e.target) << ','
            << (e.pass ? 1 : 0) << '\n';
    }
}

inline void write_summary_txt(const std::filesystem::path& path, const ExperimentReport& r) {
    auto out = open_output(path);
    out << "experiment summary\n";
    out << "N=" << r.N << " R=" << r.R << " seed=" << r.seed << " noise=" << r.noise_name
        << '\n';
    out << "components:";
    for (std::size_t j = 0; j < r.labels.size(); ++j)
        out << ' ' << r.labels[j] << '(' << block_name(r.blocks[j]) << ')';
    out << "\ngrid:";
    for (double t : r.grid_t)
        out << ' ' << format_double(t);
    out << "\n\nverdicts:\n";
    for (const auto& [name, ok] : r.verdicts)
        out << "  " << name << ": " << (ok ? "PASS" : "FAIL") << '\n';
    out << "overall: " << (r.all_pass ? "PASS" : "FAIL") << '\n';
}

/// Run manifest: effective config echo, seed, and the data-file inventory
/// with content hashes. The created timestamp is informational; determinism
/// comparisons should use the per-file hashes.
inline void write_manifest(const std::filesystem::path& path, const nlohmann::json& config_echo,
                           std::uint64_t seed,
                           const std::vector<std::filesystem::path>& files) {
    nlohmann::json m;
    m["artifact_version"] = "1.0.0";
    m["seed"] = seed;
    m["created"] = []() {
        std::time_t t = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        return std::string(buf);
    }();
    m["config"] = config_echo;
    m["files"] = nlohmann::json::array();
    for (const auto& f : files) {
        m["files"].push_back({{"name", f.filename().string()},
                              {"bytes", std::filesystem::file_size(f)},
                              {"fnv1a64", hex64(fnv1a64_file(f.string()))}});
    }
    auto out = open_output(path);
    out << m.dump(2) << '\n';
}

} // namespace chaoslim

#endif
