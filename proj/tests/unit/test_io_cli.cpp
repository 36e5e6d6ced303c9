#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "smoothtrim/error.hpp"
#include "smoothtrim/io.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/variance.hpp"
#include "smoothtrim/weights.hpp"

using namespace smoothtrim;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SMOOTHTRIM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("csv reader: one value per line, comma rows, headers, errors") {
    {
        std::istringstream in("1\n2\n3\n");
        CHECK(read_numeric_csv(in) == std::vector<double>{1, 2, 3});
    }
    {
        std::istringstream in("1,2,3,100\n");
        CHECK(read_numeric_csv(in) == std::vector<double>{1, 2, 3, 100});
    }
    {
        std::istringstream in("value\n1.5\n2.5\n");
        CHECK(read_numeric_csv(in) == std::vector<double>{1.5, 2.5});
    }
    {
        std::istringstream in("1\nbad\n");
        CHECK_THROWS_WITH_AS(read_numeric_csv(in, "data"),
                             "data: line 2: non-numeric value 'bad'", ParameterError);
    }
    {
        std::istringstream in("header only\n");
        CHECK_THROWS_AS(read_numeric_csv(in), ParameterError);
    }
    CHECK_THROWS_AS(read_numeric_csv_file("/nonexistent/file.csv"), ParameterError);
}

TEST_CASE("cli estimate on the four-point file") {
    const auto path = write_temp("four.csv", "1,2,3,100\n");
    const auto res = run_cli("estimate --alpha 0.25 --input " + path);
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["trimmed_mean"] == doctest::Approx(2.5));
    CHECK(j["winsorized_mean"] == doctest::Approx(2.5));
    CHECK(j["n"] == 4);
}

TEST_CASE("cli ci with the el method emits the documented fields") {
    std::ostringstream data;
    for (int i = 0; i < 60; ++i) data << (0.1 * i - 3.0) + ((i * 37) % 11) * 0.05 << "\n";
    const auto path = write_temp("eldata.csv", data.str());
    const auto res =
        run_cli("ci --method el --alpha 0.1 --gamma 0.2 --level 0.95 --input " + path);
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    CHECK(j["method"] == "el");
    CHECK(j.contains("point"));
    CHECK(j.contains("lower"));
    CHECK(j.contains("upper"));
    CHECK(j.contains("a_hat"));
    CHECK(j.contains("lambda_lower"));
    CHECK(j.contains("lambda_upper"));
    CHECK(double(j["lower"]) < double(j["point"]));
    CHECK(double(j["point"]) < double(j["upper"]));
}

TEST_CASE("cli exit codes: usage 2, numeric failure 1") {
    const auto bad = run_cli("ci --method warp --input /etc/hostname");
    CHECK(bad.exit_code == 2);
    const auto missing = run_cli("estimate --alpha 0.1 --input /nonexistent.csv");
    CHECK(missing.exit_code == 2);
    // constant column: the EL scaling constant degenerates -> numeric failure
    const auto path = write_temp("const.csv", "5\n5\n5\n5\n5\n5\n5\n5\n5\n5\n");
    const auto degen = run_cli("ci --method el --alpha 0.1 --gamma 0.3 --input " + path);
    CHECK(degen.exit_code == 1);
    const auto domain = run_cli("estimate --alpha 0.6 --input " + path);
    CHECK(domain.exit_code == 2);
}

TEST_CASE("cli simulate-variance is deterministic and schema-stable") {
    const std::string args =
        "simulate-variance --mixture \"1.0*N(0,1)\" --n 25 --alpha 0.1 --gamma 0.3 "
        "--reps 120 --seed 7";
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    // everything but the wall-clock time column must repeat bit for bit
    const auto strip_time = [](const std::string& text) {
        std::string out;
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            const auto cut = line.rfind(',');
            out += line.substr(0, cut);
            out += '\n';
        }
        return out;
    };
    CHECK(strip_time(a.out) == strip_time(b.out));
    CHECK(a.out.find("schema_version,mixture,n,reps,seed,alpha,gamma,jack_var_mean,"
                     "asym_var_mean,time_ratio\n") == 0);
}

TEST_CASE("cli select profile matches per-cell variance evaluations") {
    std::ostringstream data;
    for (int i = 0; i < 76; ++i) data << 70.0 + 0.2 * ((i * 13) % 29) - ((i == 5) ? 8.0 : 0.0) << "\n";
    const auto path = write_temp("select.csv", data.str());
    const auto res = run_cli("select --input " + path + " --alphas 0.05,0.1 --gammas 0.2,0.3");
    REQUIRE(res.exit_code == 0);
    const json j = json::parse(res.out);
    const SortedSample sample(read_numeric_csv_file(path));
    for (const auto& row : j["profile"]) {
        const auto spec = WeightSpec::generalized(row["alpha"], row["gamma"]);
        const double expect = stm_variance_hat(sample, spec).value;
        CHECK(std::abs(double(row["variance"]) - expect) <= 1e-12);
    }
    CHECK(j["selected"].contains("alpha"));
    const auto csv = run_cli("select --format csv --input " + path +
                             " --alphas 0.05,0.1 --gammas 0.2,0.3");
    CHECK(csv.out.find("alpha,gamma,variance,selected\n") == 0);
}

TEST_CASE("cli seed fallback comes from the environment") {
    const auto path = write_temp("seeded.csv", "1\n2\n3\n4\n5\n6\n7\n8\n9\n10\n");
    const std::string base = std::string(SMOOTHTRIM_CLI_PATH) +
                             " ci --method boot --alpha 0.1 --input " + path + " --B 300";
    RunResult with_env;
    {
        const std::string cmd = "SMOOTHTRIM_SEED=42 " + base + " 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        std::array<char, 4096> buf{};
        std::size_t got = 0;
        while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
            with_env.out.append(buf.data(), got);
        with_env.exit_code = WEXITSTATUS(pclose(pipe));
    }
    REQUIRE(with_env.exit_code == 0);
    const auto flagged = run_cli("ci --method boot --alpha 0.1 --input " + path +
                                 " --B 300 --seed 42");
    CHECK(with_env.out == flagged.out);
}
