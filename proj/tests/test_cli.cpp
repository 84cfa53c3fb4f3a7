#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tabp/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tabp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = tabp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("classify") {
    const auto r = run({"classify", "--lambda", "1", "--dist", "pareto:alpha=1"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["regime"] == "III");
    CHECK(j["unbounded_component"] == "no");
    CHECK(j["schema"] == 1);

    const auto ii = nlohmann::json::parse(run({"classify", "--dist", "pareto:alpha=0.5"}).out);
    CHECK(ii["regime"] == "II");
    CHECK(ii["integral"]["status"] == "finite");
}

TEST_CASE("inconclusive verdict exits with 2") {
    const auto path = std::filesystem::temp_directory_path() / "tabp_cli_critical.csv";
    {
        std::ofstream f(path);
        f << "y,tail\n";
        for (int j = 0; j <= 60; ++j) {
            const double y = std::pow(10.0, j / 10.0);
            f << std::setprecision(17) << y << "," << 1.0 / y << "\n";
        }
    }
    const auto r = run({"classify", "--dist", "table:path=" + path.string()});
    CHECK(r.code == 2);
    CHECK(nlohmann::json::parse(r.out)["regime"] == "Inconclusive");
}

TEST_CASE("invalid input exits with 1 and names the token") {
    const auto bad = run({"classify", "--lambda", "1", "--dist", "constant:c=-1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("c=-1") != std::string::npos);
    CHECK(run({"classify", "--lambda", "0"}).code == 1);
    CHECK(run({"classify", "--domain", "both"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"verify", "--reps", "2.5"}).code == 1);
    CHECK(run({"verify", "--dist", "pareto:alpha=1", "--domain", "full", "--reps", "5"}).code == 1);
}

TEST_CASE("help exits with 0") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("analytics") {
    const auto r = run({"analytics", "--lambda", "1", "--dist", "pareto:alpha=0.5", "--probe", "0,1", "--T", "1e3"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["cvf"] == 1.0);
    CHECK(std::abs(j["E_Nv"].get<double>() - 1.1839397205857212) < 1e-6);
    CHECK(j["vacancy"][0][1] == 1.0);
    CHECK(j["expected_vacant_length"][0][0] == 1000.0);

    const auto inf = nlohmann::json::parse(run({"analytics", "--dist", "pareto:alpha=1"}).out);
    CHECK(inf["E_Nv"] == "inf");
    CHECK(inf["p_geometric"] == 0.0);
}

TEST_CASE("scan") {
    const auto r = run({"scan", "--lambda", "1", "--alpha-grid", "0.5,1,2"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "param,regime,E_Nv,cvf");
    CHECK(lines[1].rfind("0.5,II,", 0) == 0);
    CHECK(lines[2] == "1,III,inf,1");
    CHECK(lines[3].rfind("2,I,inf,", 0) == 0);

    const auto lam = run({"scan", "--dist", "pareto:alpha=1", "--lambda-grid", "0.5,1.5"});
    CHECK(lam.out.find("0.5,III,inf,1") != std::string::npos);
    CHECK(lam.out.find("1.5,II,") != std::string::npos);

    CHECK(run({"scan"}).code == 1);
    CHECK(run({"scan", "--lambda-grid", "1", "--alpha-grid", "1"}).code == 1);
}

TEST_CASE("simulate and replay") {
    const auto dir = std::filesystem::temp_directory_path() / "tabp_cli_sim";
    std::filesystem::remove_all(dir);
    const auto r = run({"simulate", "--dist", "pareto:alpha=1", "--T", "200", "--seed", "3", "--csv", dir.string()});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir / "realization.csv"));
    CHECK(std::filesystem::exists(dir / "decomposition.csv"));
    const auto first = nlohmann::json::parse(r.out);

    const auto replay = run({"simulate", "--dist", "pareto:alpha=1", "--T", "200", "--replay",
                             (dir / "realization.csv").string()});
    CHECK(replay.code == 0);
    const auto second = nlohmann::json::parse(replay.out);
    CHECK(first["covered_length"] == second["covered_length"]);
    CHECK(first["n_vacant_complete"] == second["n_vacant_complete"]);
}

TEST_CASE("verify") {
    const auto dir = std::filesystem::temp_directory_path() / "tabp_cli_verify";
    std::filesystem::remove_all(dir);
    const auto json_path = dir.string() + ".json";
    const std::vector<std::string> args{"verify", "--dist", "pareto:alpha=1", "--T", "1e3", "--reps", "2000",
                                        "--seed", "42", "--probe", "1,2.718281828459045", "--workers", "2"};
    const auto r = run(args);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
    CHECK(j["config"]["replicates"] == 2000);

    auto with_files = args;
    for (const char* a : {"--csv", "", "--json", ""}) with_files.emplace_back(a);
    with_files[with_files.size() - 3] = dir.string();
    with_files.back() = json_path;
    const auto f = run(with_files);
    CHECK(f.code == 0);
    CHECK(f.out.find("overall: PASS") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "replicates.csv"));
    CHECK(std::filesystem::exists(dir / "gap_length.csv"));
    std::ifstream in(json_path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == r.out);

    const auto text = run({"verify", "--reps", "10", "--T", "100", "--format", "text"});
    CHECK(text.out.find("overall:") != std::string::npos);
    CHECK(run({"verify", "--format", "xml"}).code == 1);
}
