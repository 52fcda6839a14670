#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chaoslim/config.hpp"
#include "chaoslim/harness.hpp"
#include "chaoslim/io.hpp"

using namespace chaoslim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("chaoslim_io_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("format_double round-trips doubles exactly") {
    for (double v : {1.0 / 3.0, 0.1, -2.5e-17, 1234567.89, 0.0, 6.02e23}) {
        REQUIRE(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("fnv1a64 matches the published test vectors") {
    REQUIRE(fnv1a64("", 0) == 0xcbf29ce484222325ull);
    REQUIRE(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    REQUIRE(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);
    REQUIRE(hex64(0xcbf29ce484222325ull) == "cbf29ce484222325");
}

TEST_CASE("file hashing agrees with the in-memory hash") {
    TempDir tmp;
    auto p = tmp.path / "blob.bin";
    std::string payload = "chaoslim hashing payload \x01\x02\x03";
    {
        std::ofstream out(p, std::ios::binary);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
    REQUIRE(fnv1a64_file(p.string()) == fnv1a64(payload.data(), payload.size()));
    REQUIRE_THROWS_AS(fnv1a64_file((tmp.path / "missing").string()), ValidationError);
}

TEST_CASE("binary path files round-trip") {
    PathMatrix m;
    m.N = 5;
    m.J = 2;
    m.R = 3;
    m.values.resize(m.N * m.J * m.R);
    for (std::size_t i = 0; i < m.values.size(); ++i)
        m.values[i] = 0.25 * static_cast<double>(i) - 3.0;

    TempDir tmp;
    auto p = tmp.path / "paths.bin";
    write_paths_bin(p, m);
    REQUIRE(fs::file_size(p) == 24 + 8 * m.values.size());

    auto back = read_paths_bin(p);
    REQUIRE(back.N == m.N);
    REQUIRE(back.J == m.J);
    REQUIRE(back.R == m.R);
    REQUIRE(back.values == m.values);

    SECTION("bad magic is rejected") {
        auto q = tmp.path / "junk.bin";
        std::ofstream out(q, std::ios::binary);
        out << "NOPE";
        out.close();
        REQUIRE_THROWS_WITH(read_paths_bin(q), Catch::Matchers::ContainsSubstring("magic"));
    }
}

TEST_CASE("csv path files use the long format") {
    PathMatrix m;
    m.N = 2;
    m.J = 2;
    m.R = 1;
    m.values = {1.5, -2.5, 0.125, 4.0}; // (r=0,j=0,n=1..2), (r=0,j=1,n=1..2)

    TempDir tmp;
    auto p = tmp.path / "paths.csv";
    write_paths_csv(p, m);
    auto lines = read_lines(p);
    REQUIRE(lines.size() == 5);
    REQUIRE(lines[0] == "r,j,n,value");
    REQUIRE(lines[1] == "0,0,1,1.5");
    REQUIRE(lines[2] == "0,0,2,-2.5");
    REQUIRE(lines[3] == "0,1,1,0.125");
    REQUIRE(lines[4] == "0,1,2,4");
}

TEST_CASE("acf csv reports cumulative sums and local slopes") {
    TempDir tmp;
    auto p = tmp.path / "acf.csv";
    write_acf_csv(p, {1.0, 0.5, 0.25});
    auto lines = read_lines(p);
    REQUIRE(lines.size() == 4);
    REQUIRE(lines[0] == "lag,gamma,cumulative,local_slope");
    REQUIRE(lines[1] == "0,1,1,");
    REQUIRE(lines[2] == "1,0.5,2,");
    // gamma halves from lag 1 to lag 2: slope = log(1/2) / log(2) = -1
    std::istringstream row(lines[3]);
    std::string field;
    std::getline(row, field, ',');
    REQUIRE(field == "2");
    std::getline(row, field, ',');
    REQUIRE(std::stod(field) == 0.25);
    std::getline(row, field, ',');
    REQUIRE(std::stod(field) == 2.5);
    std::getline(row, field, ',');
    REQUIRE(std::stod(field) == Catch::Approx(-1.0));
}

TEST_CASE("manifest lists files with sizes and hashes") {
    TempDir tmp;
    auto f1 = tmp.path / "a.csv";
    auto f2 = tmp.path / "b.bin";
    std::ofstream(f1) << "r,j,n,value\n";
    std::ofstream(f2, std::ios::binary) << "CHLM";

    nlohmann::json echo = {{"experiment", {{"N", 64}}}};
    write_manifest(tmp.path / "manifest.json", echo, 1234, {f1, f2});

    auto m = load_json_file((tmp.path / "manifest.json").string());
    REQUIRE(m.at("seed").get<std::uint64_t>() == 1234);
    REQUIRE(m.at("config").at("experiment").at("N").get<int>() == 64);
    REQUIRE(m.at("files").size() == 2);
    REQUIRE(m.at("files")[0].at("name") == "a.csv");
    REQUIRE(m.at("files")[0].at("bytes").get<std::uint64_t>() == fs::file_size(f1));
    REQUIRE(m.at("files")[1].at("fnv1a64") == hex64(fnv1a64("CHLM", 4)));
    REQUIRE(m.contains("created"));
}

TEST_CASE("experiment report files are written with stable headers") {
    ExperimentConfig cfg;
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0}), 1, "p"), Block::S1});
    cfg.components.push_back(
        {ChaosProcessSpec::make(CoefficientSpec::explicit_seq({1.0, 0.5}), 2, "q"), Block::S2});
    cfg.N = 256;
    cfg.R = 64;
    cfg.seed = 9;
    cfg.threads = 1;
    auto rep = run_experiment(cfg);

    TempDir tmp;
    write_covariance_csv(tmp.path / "covariance.csv", rep);
    write_independence_csv(tmp.path / "independence.csv", rep);
    write_normality_csv(tmp.path / "normality.csv", rep);
    write_brownian_csv(tmp.path / "brownian.csv", rep);
    write_summary_txt(tmp.path / "summary.txt", rep);

    auto cov = read_lines(tmp.path / "covariance.csv");
    REQUIRE(cov[0] == "j1,t1,j2,t2,empirical,se,target,z,asserted,pass");
    REQUIRE(cov.size() == rep.covariance.size() + 1);
    REQUIRE(cov[1].substr(0, 2) == "p,");

    auto ind = read_lines(tmp.path / "independence.csv");
    REQUIRE(ind[0] ==
            "j_s2,j_other,t,corr_ll,se_ll,corr_ls,se_ls,corr_sl,se_sl,corr_ss,se_ss,dcorr,pass");
    REQUIRE(ind.size() == rep.independence.size() + 1);

    auto nor = read_lines(tmp.path / "normality.csv");
    REQUIRE(nor[0] == "j,t,mean,variance,skewness,excess_kurtosis,z_skewness,z_kurtosis,flagged");
    REQUIRE(nor.size() == rep.normality.size() + 1);

    auto bro = read_lines(tmp.path / "brownian.csv");
    REQUIRE(bro[0] == "j1,j2,t,corr,se,target,pass");
    // single S1 component: only the noise-level comparisons remain
    REQUIRE(bro.size() == cfg.grid.size() + 1);
    REQUIRE(bro[1].substr(0, 6) == "p,W_N,");

    auto sum = read_lines(tmp.path / "summary.txt");
    REQUIRE(sum[0] == "experiment summary");
    bool has_overall = false;
    for (const auto& line : sum)
        if (line.rfind("overall: ", 0) == 0)
            has_overall = true;
    REQUIRE(has_overall);
}
