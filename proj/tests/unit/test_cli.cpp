#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "kolchin/numpoly.hpp"

using namespace kolchin;
namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run(args, out, err);
    return Result{status, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents)
{
    const fs::path dir = fs::temp_directory_path() / "kolchin_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << contents;
    return p.string();
}

std::string system_path(const std::string& name)
{
    return std::string(KOLCHIN_TEST_DATA_DIR) + "/systems/" + name;
}

} // namespace

TEST_CASE("omega-set")
{
    const std::string e = temp_file("E.txt", "0,2\n");
    const Result human = run_cli({"omega-set", "--m", "2", "--file", e});
    CHECK(human.status == 0);
    CHECK(human.out.rfind("2*t + 1\n", 0) == 0);

    const Result json = run_cli({"--format", "json", "omega-set", "--m", "2", "--file", e});
    CHECK(json.status == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["standard_coeffs"] == nlohmann::json({"0", "2", "-1"}));
    CHECK(parse_numerical_polynomial(json.out) == NumericalPolynomial::from_ints({0, 2, -1}));

    // the format flag may also follow the subcommand
    CHECK(run_cli({"omega-set", "--m", "2", "--file", e, "--format", "json"}).out == json.out);
}

TEST_CASE("bounds")
{
    const Result r = run_cli({"bounds", "--r", "4", "--m", "1", "--n", "3"});
    CHECK(r.status == 0);
    CHECK(r.out.find("s0 = 3\n") != std::string::npos);

    const auto doc = nlohmann::json::parse(run_cli({"--format=json", "bounds", "--r", "1", "--m", "2", "--n", "1"}).out);
    CHECK(doc["s1"] == "577");
    CHECK(doc["coeff_bound"] == "36");

    const Result big = run_cli({"bounds", "--r", "3", "--m", "4", "--n", "2"});
    CHECK(big.status == 3);
    CHECK(big.err.find("recursion steps") != std::string::npos);
}

TEST_CASE("kolchin")
{
    const Result r = run_cli({"kolchin", "--system", system_path("heat.sys"), "--check"});
    CHECK(r.status == 0);
    CHECK(r.out.find("groebner: 2*t + 1") != std::string::npos);
    CHECK(r.out.find("prolongation: 2*t + 1") != std::string::npos);
    CHECK(r.out.find("AGREE\n") != std::string::npos);

    const Result j = run_cli({"--format", "json", "kolchin", "--system", system_path("cauchy_riemann.sys"), "--check",
                              "--type", "--at-least", "0,2,-1", "--equals", R"({"m":2,"standard_coeffs":["1","0","0"]})"});
    CHECK(j.status == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["check"]["agree"] == true);
    CHECK(doc["type"] == 1);
    CHECK(doc["at_least"]["result"] == true);
    CHECK(doc["equals"]["result"] == false);
    CHECK(parse_numerical_polynomial(j.out) == NumericalPolynomial::from_ints({0, 2, 0}));
    CHECK(parse_numerical_polynomial(doc["check"]["prolongation"].dump()) == NumericalPolynomial::from_ints({0, 2, 0}));
}

TEST_CASE("other subcommands")
{
    const std::string e = temp_file("E2.txt", "1,0\n0,1\n");
    const Result vol = run_cli({"volume", "--m", "2", "--file", e, "--s", "2"});
    CHECK(vol.status == 0);
    CHECK(vol.out == "enumeration = 1\ninclusion_exclusion = 1\nAGREE\n");
    CHECK(run_cli({"volume", "--m", "2", "--file", e, "--s", "7", "--kernel", "scalar"}).status == 0);

    CHECK(run_cli({"rank-compare", "--m", "2", "d[1,0]x1", "d[0,1]x1"}).out == "d[1,0]x1 > d[0,1]x1\n");
    const auto rank = nlohmann::json::parse(run_cli({"--format", "json", "rank-compare", "--m", "1", "x1", "x2"}).out);
    CHECK(rank["comparison"] == "less");
    CHECK(rank["leader"] == "d[0]x2");

    const std::string profile = temp_file("cr.leaders", "1: 2,0\n2: 1,0\n2: 0,1\n");
    CHECK(run_cli({"omega-leaders", "--m", "2", "--file", profile}).out.rfind("2*t + 2\n", 0) == 0);

    const Result interp = run_cli({"--format", "json", "interpolate", "--values", "1,3,6"});
    CHECK(parse_numerical_polynomial(interp.out) == NumericalPolynomial::from_ints({1, 0, 0}));
    CHECK(run_cli({"interpolate", "--values", "1,3,5", "--start", "1"}).out.rfind("2*t - 1\n", 0) == 0);
}

TEST_CASE("exit statuses")
{
    CHECK(run_cli({}).status == 2);
    CHECK(run_cli({"frobnicate"}).status == 2);
    CHECK(run_cli({"bounds", "--r", "1"}).status == 2);
    CHECK(run_cli({"bounds", "--r", "1", "--m", "0", "--n", "1"}).status == 2);
    CHECK(run_cli({"omega-set", "--m", "2", "--file", "/nonexistent/E.txt"}).status == 2);
    CHECK(run_cli({"interpolate", "--values", "1,x"}).status == 2);
    CHECK(run_cli({"--help"}).status == 0);

    // domain errors name the problem
    const std::string bad = temp_file("bad.sys", "m = 2\nn = 1\neq: x1*x1\n");
    const Result parse = run_cli({"kolchin", "--system", bad});
    CHECK(parse.status == 1);
    CHECK(parse.err.find("line 3") != std::string::npos);
    CHECK(run_cli({"interpolate", "--values", "1,3", "--m", "2"}).status == 1);
    CHECK(run_cli({"rank-compare", "--m", "2", "d[1]x1", "x1"}).status == 1);

    // resource limits
    const Result capped = run_cli({"--matrix-cap", "10", "kolchin", "--system", system_path("heat.sys"), "--check"});
    CHECK(capped.status == 3);
    const Result json = run_cli({"--format", "json", "--enum-cap", "5", "volume", "--m", "2", "--file",
                                 temp_file("E3.txt", "0,2\n"), "--s", "10"});
    CHECK(json.status == 3);
    CHECK(nlohmann::json::parse(json.out)["error"]["kind"] == "resource_limit");
}

TEST_CASE("environment overrides")
{
    ::setenv("KOLCHIN_MATRIX_CAP", "10", 1);
    CHECK(run_cli({"kolchin", "--system", system_path("heat.sys"), "--check"}).status == 3);
    // an explicit flag wins over the environment
    CHECK(run_cli({"--matrix-cap", "100000", "kolchin", "--system", system_path("heat.sys"), "--check"}).status == 0);
    ::unsetenv("KOLCHIN_MATRIX_CAP");

    ::setenv("KOLCHIN_ENUM_CAP", "0", 1);
    CHECK(run_cli({"volume", "--m", "1", "--file", temp_file("E4.txt", "2\n"), "--s", "3"}).status == 2);
    ::unsetenv("KOLCHIN_ENUM_CAP");
}
