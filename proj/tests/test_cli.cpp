#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

// End-to-end checks of the command-line tool: flag validation, exit codes,
// format parity and report schemas.

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string path = "/tmp/solenoid_cli_test_out.txt";
    std::string cmd = std::string(SOLENOID_CLI_PATH) + " " + args + " > " + path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    std::remove(path.c_str());
    return {WEXITSTATUS(rc), os.str()};
}

}  // namespace

TEST_CASE("ball command") {
    auto csv = run_cli("ball --p 2 --d 2 --n 0 --r 2 --format csv");
    REQUIRE(csv.exit_code == 0);
    std::size_t rows = std::count(csv.output.begin(), csv.output.end(), '\n');
    CHECK(rows == 10);  // header + 9 elements

    // json and csv carry the same element set
    auto json_run = run_cli("ball --p 2 --d 2 --n 0 --r 2");
    REQUIRE(json_run.exit_code == 0);
    auto j = nlohmann::json::parse(json_run.output);
    CHECK(j["schema"] == 1);
    CHECK(j["count"] == 9);
    std::set<std::string> from_json;
    for (const auto& e : j["ball"]["elements"])
        from_json.insert(std::to_string(e[0][0].get<int>()) + "/" +
                         std::to_string(e[0][1].get<int>()) + ":" +
                         std::to_string(e[1][0].get<int>()) + "/" +
                         std::to_string(e[1][1].get<int>()));
    std::set<std::string> from_csv;
    std::istringstream lines(csv.output);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string n0, e0, n1, e1;
        std::getline(cells, n0, ',');
        std::getline(cells, e0, ',');
        std::getline(cells, n1, ',');
        std::getline(cells, e1, ',');
        from_csv.insert(n0 + "/" + e0 + ":" + n1 + "/" + e1);
    }
    CHECK(from_json == from_csv);

    CHECK(run_cli("ball --p 1 --d 2 --n 0 --r 2").exit_code == 1);
    CHECK(run_cli("ball --p 2 --d 2 --n 0 --r 40 --cap 100").exit_code == 2);
}

TEST_CASE("spectrum command exit codes") {
    CHECK(run_cli("spectrum --p 2 --d 2 --n 0 --r 3").exit_code == 0);
    // tol 0 trips on eigensolver noise
    CHECK(run_cli("spectrum --p 2 --d 2 --n 0 --r 3 --tol 0").exit_code == 3);
}

TEST_CASE("lip command") {
    auto r = run_cli("lip --generator 1/2,0 --theta 0.3");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["n"] == 1);  // lifted to the generator's level
    CHECK(std::abs(j["exact"].get<double>() - 1.118033988749895) < 1e-12);
    CHECK(std::abs(j["value"].get<double>() - 1.118033988749895) < 1e-9);
    CHECK(j["converged"] == true);
    CHECK(j["trace"].size() >= 2);

    CHECK(run_cli("lip --theta 0.3").exit_code == 1);  // neither generator nor poly
    CHECK(run_cli("lip --generator 1/3,0 --p 2").exit_code == 1);  // not representable

    auto eq = run_cli("lip --check-equality --generator 1,0 --n 0 --m 1 --r 2.5 --theta 0.3");
    REQUIRE(eq.exit_code == 0);
    auto je = nlohmann::json::parse(eq.output);
    CHECK(je["equality_check"]["pass"] == true);
}

TEST_CASE("distance command") {
    auto r = run_cli("distance --phi trace --psi trace");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["value"] == 0.0);
    CHECK(j["degenerate"] == true);

    CHECK(run_cli("distance --phi bogus --psi trace").exit_code == 1);
    CHECK(run_cli("distance --phi trace --psi trace --mode wat").exit_code == 1);
}

TEST_CASE("fejer command") {
    auto r = run_cli("fejer --n 0 --m 1 --N 4 --r 4 --support-radius 2 --theta 0.3 --seed 5");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.output);
    CHECK(j["contraction_pass"] == true);
    CHECK(j["coefficient_contraction_pass"] == true);
    CHECK(j["lip_after"].get<double>() <=
          j["lip_before"].get<double>() * (1.0 + 1e-6));
}

TEST_CASE("converge command") {
    auto r = run_cli(
        "converge --n 0 --m 1 --r 4 --sweep-N 2,4 --samples 4 --support-radius 2 --format csv");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.rfind("N,eps_max,eps_mean\n", 0) == 0);
}

TEST_CASE("config file with flag override") {
    const std::string cfg_path = "/tmp/solenoid_cli_test_cfg.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"p": 2, "d": 2, "n": 0, "r": 2.0, "format": "csv"})";
    }
    auto from_file = run_cli("ball --config " + cfg_path);
    REQUIRE(from_file.exit_code == 0);
    CHECK(std::count(from_file.output.begin(), from_file.output.end(), '\n') == 10);

    // --r on the command line overrides the file value
    auto overridden = run_cli("ball --config " + cfg_path + " --r 1");
    REQUIRE(overridden.exit_code == 0);
    CHECK(std::count(overridden.output.begin(), overridden.output.end(), '\n') == 2);
    std::remove(cfg_path.c_str());
}
