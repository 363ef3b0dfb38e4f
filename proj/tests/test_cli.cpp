#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "unruh_cli");
    std::ostringstream out, err;
    int code = unruh::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    for (std::string f; std::getline(ss, f, sep);) v.push_back(f);
    return v;
}

fs::path tmp(const std::string& name) {
    fs::path d = fs::path(UNRUH_TEST_TMPDIR) / "cli_out";
    fs::create_directories(d);
    return d / name;
}

}  // namespace

TEST_CASE("eval json") {
    auto r = cli({"eval", "--dim", "1", "--motion", "accel", "--a", "1", "--omega", "1", "--Omega", "1"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["p_alpha_ex"].get<double>() == j["p_alpha_de"].get<double>());
    CHECK(j["p_vac_ex"].get<double>() < j["p_vac_de"].get<double>());
    CHECK(j["regime_ok"].get<bool>());
}

TEST_CASE("eval text and oracle") {
    auto r = cli({"eval", "--mirror", "--z0", "0.3", "--format", "text", "--oracle"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("p_alpha_ex") != std::string::npos);
    CHECK(r.out.find("oracle") != std::string::npos);
}

TEST_CASE("eval regime warning in 3+1") {
    auto r = cli({"eval", "--dim", "3", "--a", "5", "--kx", "0.3"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK_FALSE(j["regime_ok"].get<bool>());
    CHECK_FALSE(j["regime_warning"].get<std::string>().empty());
}

TEST_CASE("sweep csv") {
    auto r = cli({"sweep", "--axis", "a=0.5,1,2", "--ratio"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 4);
    auto head = split(ls[0], ',');
    CHECK(head.back() == "vac_ratio");
    std::size_t ia = 0;
    while (head[ia] != "a") ++ia;
    for (int i = 1; i <= 3; ++i) {
        auto f = split(ls[i], ',');
        REQUIRE(f.size() == head.size());
        double a = std::stod(f[ia]);
        CHECK(std::stod(f.back()) == doctest::Approx(std::exp(-2 * M_PI / a)).epsilon(1e-12));
    }
}

TEST_CASE("sweep keeps the classical field strength") {
    auto r = cli({"sweep", "--axis", "hbar_f=1,0.1,0.01", "--keep-field-strength", "--format", "json"});
    REQUIRE(r.code == 0);
    auto pts = json::parse(r.out)["points"];
    REQUIRE(pts.size() == 3);
    double p0 = pts[0]["p_alpha_ex"];
    double v0 = pts[0]["p_vac_ex"];
    for (int i = 1; i < 3; ++i) {
        CHECK(pts[i]["p_alpha_ex"].get<double>() == doctest::Approx(p0).epsilon(1e-12));
        CHECK(pts[i]["p_vac_ex"].get<double>() == doctest::Approx(v0 * std::pow(0.1, i)).epsilon(1e-12));
    }
}

TEST_CASE("sweep output is reproducible and has a manifest") {
    auto p1 = tmp("run1.csv"), p2 = tmp("run2.csv");
    std::vector<std::string> common = {"sweep", "--dim", "3", "--motion", "static", "--mirror", "--axis",
                                       "a=20,40", "--axis", "theta=0.5,1.5"};
    auto a1 = common, a2 = common;
    a1.insert(a1.end(), {"--out", p1.string(), "--threads", "3"});
    a2.insert(a2.end(), {"--out", p2.string(), "--threads", "1"});
    REQUIRE(cli(a1).code == 0);
    REQUIRE(cli(a2).code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(lines(slurp(p1)).size() == 5);
    auto m = json::parse(slurp(p1.string() + ".manifest.json"));
    CHECK(m["command"] == "sweep");
    CHECK(m["grid"]["points"] == 4);
    CHECK(m.contains("wall_time_s"));
    CHECK(m.contains("arguments"));
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == unruh::cli::kUsage);
    CHECK(cli({"eval", "--bogus"}).code == unruh::cli::kUsage);
    CHECK(cli({"eval", "--mirror", "--free"}).code == unruh::cli::kUsage);
    CHECK(cli({"sweep", "--axis", "nope=1"}).code == unruh::cli::kUsage);
    CHECK(cli({"sweep", "--axis", "a=1,x"}).code == unruh::cli::kUsage);
    CHECK(cli({"eval", "--a", "-1"}).code == unruh::cli::kDomain);
    CHECK(cli({"eval", "--Omega", "0"}).code == unruh::cli::kDomain);
    CHECK(cli({"eval", "--help"}).code == unruh::cli::kOk);
    auto bad = (tmp("no_such_dir") / "x" / "y.csv").string();
    auto r = cli({"sweep", "--axis", "a=1", "--out", bad});
    CHECK(r.code == unruh::cli::kIo);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("figure y-peak") {
    auto r = cli({"figure", "y-peak", "--resolution", "50"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    CHECK(ls.size() == 51);
    CHECK(r.err.find("peak") != std::string::npos);
    auto j = json::parse(cli({"figure", "y-peak", "--format", "json", "--resolution", "10"}).out);
    CHECK(j["points"].size() == 10);
    CHECK(j["peak"]["value_peak"].get<double>() == doctest::Approx(0.7246).epsilon(1e-3));
    CHECK(cli({"figure", "y-peak", "--resolution", "0"}).code == unruh::cli::kUsage);
}

TEST_CASE("verify special functions") {
    auto r = cli({"verify", "--preset", "special-fns"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verification passed") != std::string::npos);
}
