#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = uplink::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir() {
    auto d = std::filesystem::temp_directory_path() / "uplink_cli_test";
    std::filesystem::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("coverage with profile defaults has 31 rows") {
    const auto r = run({"coverage"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 32);
    CHECK(rows[0] == std::vector<std::string>{"threshold_db", "threshold_linear", "p_c_analytic"});
    CHECK(rows[1][0] == "-15");
    CHECK(rows[31][0] == "15");
}

TEST_CASE("a zero threshold covers everything") {
    const auto r = run({"coverage", "--threshold-db", "0", "--sigma2", "0", "--t-linear", "0"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][2] == "1");
}

TEST_CASE("uniform disk at alpha 4 adds the closed-form column") {
    const auto r = run({"coverage", "--model", "uniform-disk", "--alpha", "4", "--eps", "1",
                        "--no-noise", "--t-step-db", "5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows[0].size() == 4);
    CHECK(rows[0][3] == "p_c_closed_form");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][3]) == doctest::Approx(std::stod(rows[i][2])).epsilon(1e-6));
    }
}

TEST_CASE("exit codes for bad configuration") {
    CHECK(run({"coverage", "--no-such-flag"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"coverage", "--model", "lognormal"}).code == 2);
    CHECK(run({"coverage", "--eps", "1.5"}).code == 2);
    CHECK(run({"coverage", "--no-noise", "--sigma2-dbm", "-100"}).code == 2);
    CHECK(run({"coverage", "--config", "/nonexistent/file.json"}).code == 2);
    const auto bad = scratch_dir() / "bad.json";
    std::ofstream(bad) << "{\"alpha\": 4, \"unknown-key\": 1}";
    CHECK(run({"coverage", "--config", bad.string()}).code == 2);
}

TEST_CASE("config file sits between profile and flags") {
    const auto dir = scratch_dir();
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"alpha": 4, "eps": 0.5, "no-noise": true, "coverage": {"t-step-db": 10}})";
    const auto out = dir / "cov.csv";
    const auto r = run({"coverage", "--config", cfg.string(), "--eps", "1", "--out", out.string()});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(slurp(out));
    CHECK(rows.size() == 5);  // -15, -5, 5, 15
    const auto manifest = nlohmann::json::parse(slurp(dir / "cov.manifest.json"));
    CHECK(manifest["params"]["alpha"] == 4.0);
    CHECK(manifest["params"]["epsilon"] == 1.0);
    CHECK(manifest["params"]["noise_model_units"] == 0.0);
    CHECK(manifest["params"]["density_per_km2"] == 0.24);
    CHECK(manifest["data_file"] == "cov.csv");
    CHECK(manifest["quadrature"]["evaluations"].get<std::uint64_t>() > 0);
}

TEST_CASE("simulated coverage is reproducible and dumps samples") {
    const auto dir = scratch_dir();
    std::vector<std::string> args{"coverage", "--simulate", "--mode", "iid-rayleigh", "--trials",
                                  "300", "--seed", "42", "--alpha", "4", "--no-noise",
                                  "--t-step-db", "5", "--dump-samples", (dir / "s.txt").string()};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto rows = parse_csv(a.out);
    CHECK(rows[0].back() == "mc_stderr");
    std::istringstream samples(slurp(dir / "s.txt"));
    int lines = 0;
    for (std::string line; std::getline(samples, line);) {
        ++lines;
    }
    CHECK(lines == 300);
}

TEST_CASE("downlink without noise reduces to 1 / (1 + rho)") {
    const auto r = run({"dl-ul", "--no-noise", "--t-step-db", "10", "--uplink-eps", "1"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"threshold_db", "p_c_downlink", "p_c_downlink_no_noise",
                                              "p_c_uplink_eps_1"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(std::stod(rows[i][1]) == doctest::Approx(std::stod(rows[i][2])).epsilon(1e-6));
    }
}

TEST_CASE("opt-eps and rate tables") {
    const auto o = run({"opt-eps", "--alphas", "3.7", "--t-min-db", "-10", "--t-max-db", "20",
                        "--t-step-db", "30", "--eps-step", "0.05"});
    REQUIRE(o.code == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(rows[1][2]) >= 0.2);
    CHECK(std::stod(rows[2][2]) == 0.0);

    const auto r = run({"rate", "--alphas", "4", "--eps-step", "0.5"});
    REQUIRE(r.code == 0);
    const auto rate = parse_csv(r.out);
    REQUIRE(rate.size() == 4);
    CHECK(rate[0][2] == "rate_no_noise_nats_per_hz");
    CHECK(std::stod(rate[1][2]) > std::stod(rate[3][2]));
}

TEST_CASE("txpower and rzstats") {
    const auto t = run({"txpower", "--trials", "2000", "--eps-list", "0", "--eps-list", "1"});
    REQUIRE(t.code == 0);
    const auto rows = parse_csv(t.out);
    CHECK(rows[0] == std::vector<std::string>{"power_dbm", "ccdf_eps_0", "ccdf_eps_1"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double p = std::stod(rows[i][0]);
        CHECK(std::stod(rows[i][1]) == (p < 10.0 ? 1.0 : 0.0));
    }
    const auto z = run({"rzstats", "--iid", "--lambda", "0.25", "--pairs", "2000", "--bins", "5"});
    REQUIRE(z.code == 0);
    CHECK(parse_csv(z.out).size() == 26);
    CHECK(z.err.find("rho = ") != std::string::npos);
}

TEST_CASE("validate reports and sets the exit code") {
    const auto a = run({"validate", "--only", "4", "--only", "7", "--seed", "42"});
    CHECK(a.code == 0);
    CHECK(a.out.find("[PASS]  4") != std::string::npos);
    CHECK(a.out.find("[PASS]  7") != std::string::npos);
    CHECK(a.out == run({"validate", "--only", "4,7", "--seed", "42"}).out);
}
