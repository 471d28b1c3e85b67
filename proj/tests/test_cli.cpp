#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FRACTAL_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[512];
    while (size_t n = fread(buf, 1, sizeof buf, pipe))
        r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    return lines;
}

std::vector<double> csv_row(const std::string& line) {
    std::vector<double> vals;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');)
        vals.push_back(std::strtod(cell.c_str(), nullptr));
    return vals;
}

} // namespace

TEST_CASE("staircase tabulation on the line") {
    auto r = run_cli("staircase --support line --lo 0 --hi 1 --samples 3");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "x,S");
    CHECK(lines[1] == "0,0");
    CHECK(lines[2] == "0.5,0.5");
    CHECK(lines[3] == "1,1");
}

TEST_CASE("staircase tabulation on the cantor support is self-similar") {
    auto r = run_cli("staircase --support cantor --lo 0 --hi 1 --samples 4");
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    // grid 0, 1/3, 2/3, 1: the staircase halves at 1/3
    auto third = csv_row(lines[1 + 1]);
    auto full = csv_row(lines[4]);
    CHECK(third[1] == doctest::Approx(0.5 * full[1]).epsilon(1e-12));
}

TEST_CASE("staircase rejects bad ranges and alpha misuse") {
    CHECK(run_cli("staircase --lo 1 --hi 0").code == 2);
    CHECK(run_cli("staircase --lo 0 --hi 1 --samples 1").code == 2);
    CHECK(run_cli("staircase --support cantor --alpha 0.9").code == 2);
    CHECK(run_cli("staircase --support cantor --removal-ratio 1.5").code == 2);
}

TEST_CASE("transform rule mode prints the rational expression") {
    auto r = run_cli("transform --expr \"exp(-1)\" --kind sumudu --mode rule");
    CHECK(r.code == 0);
    CHECK(r.out == "1/(1 + s)\n");

    auto ml = run_cli("transform --expr \"ml(0.5,2)\" --mode rule");
    CHECK(ml.code == 0);
    CHECK(ml.out == "1/(1 + 2*s^0.5)\n");

    auto lap = run_cli("transform --expr const --kind laplace --mode rule");
    CHECK(lap.code == 0);
    CHECK(lap.out == "1/(s)\n");

    CHECK(run_cli("transform --expr \"pow(-3)\" --mode rule").code == 2);
    CHECK(run_cli("transform --mode rule").code == 2); // --expr is required
}

TEST_CASE("transform numeric mode reports rule vs quadrature per point") {
    auto r = run_cli("transform --expr \"exp(-1)\" --mode numeric --v 0.5 --v 1");
    REQUIRE(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "v,s,rule,numeric,delta");
    auto row = csv_row(lines[1]);
    REQUIRE(row.size() == 5);
    CHECK(row[0] == doctest::Approx(0.5));
    CHECK(row[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(row[4]) < 1e-6);

    CHECK(run_cli("transform --expr const --mode numeric").code == 2); // needs --v
}

TEST_CASE("operator evaluation") {
    auto integral = run_cli("operator --op integral --expr const --lo 0 --hi 1");
    REQUIRE(integral.code == 0);
    auto lines = lines_of(integral.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "lo,hi,value");
    CHECK(csv_row(lines[1])[2] == doctest::Approx(1.0).epsilon(1e-10));

    // Caputo derivative of S(t) at x = 1 on the line: 1/Gamma(2 - 0.5)
    auto cap = run_cli("operator --op caputo --expr \"pow(1)\" --order 0.5 --x 1");
    REQUIRE(cap.code == 0);
    auto capline = csv_row(lines_of(cap.out)[1]);
    CHECK(capline[1] == doctest::Approx(1.0 / 0.8862269254527580).epsilon(1e-6));

    CHECK(run_cli("operator --op caputo --expr const").code == 2); // needs --x
    CHECK(run_cli("operator --op frob --expr const --x 1").code == 2);
}

TEST_CASE("solve emits a trajectory and verifies the closed form") {
    auto r = run_cli("solve --model caputo --beta 0.7 --lambda 0.5 --p0 1 --steps 32 --verify");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 36);
    CHECK(lines[0] == "t,p,equilibrium");
    CHECK(csv_row(lines[1])[1] == doctest::Approx(1.0)); // p(0) = p0
    CHECK(csv_row(lines[1])[2] == doctest::Approx(4.0)); // p* column
    bool saw_residual = false, saw_forward = false;
    for (const auto& line : lines) {
        if (line == "residual: 0")
            saw_residual = true;
        if (line.rfind("forward-solver max deviation: ", 0) == 0) {
            saw_forward = true;
            CHECK(std::strtod(line.substr(line.rfind(' ')).c_str(), nullptr) < 1e-2);
        }
    }
    CHECK(saw_residual);
    CHECK(saw_forward);
}

TEST_CASE("solve with the as-printed constant fails verification") {
    auto r = run_cli(
        "solve --model caputo --lambda 0.5 --steps 16 --verify --as-printed");
    CHECK(r.code == 3);
    CHECK(r.out.find("residual: ") != std::string::npos);
    CHECK(r.out.find("residual: 0\n") == std::string::npos);
}

TEST_CASE("solve rejects invalid model parameters") {
    // singular wsk-exp denominator: N(d2+s2) = (1-gamma)(d1+s1)
    auto r = run_cli("solve --model wsk-exp --gamma 0.5 --d2 1 --s2 0.5 --steps 16");
    CHECK(r.code == 2);
    CHECK(run_cli("solve --model caputo --beta 1.5 --steps 16").code == 2);
    CHECK(run_cli("solve --model keynes --steps 16").code == 2);
}

TEST_CASE("solve json output parses") {
    auto r = run_cli("solve --model wsk --gamma 0.4 --p0 1 --steps 16 --format json");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"model\": \"wsk\"") != std::string::npos);
    CHECK(r.out.find("\"p_star\": 4.0") != std::string::npos);
    CHECK(r.out.find("\"stable\": true") != std::string::npos);
}

TEST_CASE("output is deterministic") {
    const std::string cmd = "solve --model caputo --beta 0.7 --steps 40";
    auto a = run_cli(cmd);
    auto b = run_cli(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = "cli_test_out.csv";
    auto direct = run_cli("staircase --lo 0 --hi 2 --samples 5");
    auto filed = run_cli("staircase --lo 0 --hi 2 --samples 5 --out " + path);
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("config file supplies defaults and explicit flags win") {
    const std::string cfg = "cli_test_cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"beta\": 0.9, \"lambda\": 0.5, \"steps\": 24}\n";
    }
    auto from_cfg = run_cli("solve --model caputo --config " + cfg);
    auto from_flags = run_cli("solve --model caputo --beta 0.9 --lambda 0.5 --steps 24");
    CHECK(from_cfg.code == 0);
    CHECK(from_cfg.out == from_flags.out);

    // an explicit flag overrides the config value
    auto overridden = run_cli("solve --model caputo --beta 0.6 --config " + cfg);
    auto expected = run_cli("solve --model caputo --beta 0.6 --lambda 0.5 --steps 24");
    CHECK(overridden.out == expected.out);
    std::remove(cfg.c_str());
}

TEST_CASE("verify-suite prints one line per criterion") {
    auto r = run_cli("verify-suite");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    int passes = 0;
    for (const auto& line : lines)
        if (line.rfind("[PASS] criterion ", 0) == 0)
            ++passes;
    CHECK(passes == 10);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}
