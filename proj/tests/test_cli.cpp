#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bergman/specfun.hpp"
#include "commands.hpp"

using namespace bergman;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

}  // namespace

TEST_CASE("complex literals") {
    CHECK(cli::parse_complex("1") == cd(1, 0));
    CHECK(cli::parse_complex("-2.5") == cd(-2.5, 0));
    CHECK(cli::parse_complex("2-i") == cd(2, -1));
    CHECK(cli::parse_complex("0.5+3i") == cd(0.5, 3));
    CHECK(cli::parse_complex("i") == cd(0, 1));
    CHECK(cli::parse_complex("-i") == cd(0, -1));
    CHECK(cli::parse_complex("+2i") == cd(0, 2));
    CHECK(cli::parse_complex("1e-3-2E+1i") == cd(1e-3, -20));
    CHECK_THROWS_AS(cli::parse_complex("1+x"), cli::ParseError);
    CHECK_THROWS_AS(cli::parse_complex(""), cli::ParseError);
}

TEST_CASE("symbol grammar") {
    const SymbolU a = cli::parse_symbol("nu=0;U=1");
    CHECK(a.nu == 0.0);
    CHECK(a.coeffs == std::vector<cd>{1.0});
    const SymbolU b = cli::parse_symbol("nu=0.7;U=1,0.3");
    CHECK(b.nu == 0.7);
    CHECK(b.coeffs == std::vector<cd>{1.0, 0.3});
    CHECK(cli::parse_symbol("U=2-i").coeffs == std::vector<cd>{cd(2, -1)});
    CHECK_THROWS_AS(cli::parse_symbol("nu=-1;U=1"), DomainError);
    try {
        cli::parse_symbol("nu=1;U=1,zz");
        CHECK(false);
    } catch (const cli::ParseError& e) {
        CHECK(e.position == 9);
    }
    CHECK_THROWS_AS(cli::parse_symbol("nu=1;nu=2"), cli::ParseError);
    CHECK_THROWS_AS(cli::parse_symbol("mu=1"), cli::ParseError);
    CHECK_THROWS_AS(cli::parse_symbol("nu"), cli::ParseError);
}

TEST_CASE("families table") {
    const Run r = run({"families", "--alpha", "0", "--count", "5", "--seq", "b"});
    CHECK(r.code == 0);
    const auto rows = data_lines(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == "n,value");
    CHECK(rows[1].rfind("2,0.04444444444444", 0) == 0);
    CHECK(r.out.rfind("# {", 0) == 0);
    const Run t = run({"families", "--seq", "t", "--count", "3", "--a", "1", "--nu", "1"});
    CHECK(data_lines(t.out)[0] == "n,value,display");
    CHECK(data_lines(t.out)[1].rfind("0,0.6454972243679", 0) == 0);
}

TEST_CASE("verify is deterministic") {
    const Run a = run({"verify", "--seed", "7"});
    const Run b = run({"verify", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const json j = json::parse(a.out);
    CHECK(j["passed"] == true);
    CHECK(j["config"]["seed"] == 7);
    CHECK(j["checks"].size() >= 6);
}

TEST_CASE("spectrum csv is non-increasing and round-trips through fit") {
    const auto path = std::filesystem::temp_directory_path() / "bergman_cli_spectrum.csv";
    const Run r = run({"spectrum", "--op", "FrakQ", "--a", "1", "--degree", "24", "--r0", "6", "--output", path.string()});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = data_lines(ss.str());
    double last = INFINITY;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double v = std::stod(rows[i].substr(rows[i].find(',') + 1));
        CHECK(v <= last);
        last = v;
    }
    const Run f = run({"fit", "--input", path.string(), "--window", "24,72"});
    CHECK(f.code == 0);
    const json j = json::parse(f.out);
    CHECK(j["fit"]["window"][0] == 24);
    CHECK(j["fit"]["estimate"].get<double>() > 3.5);
    std::filesystem::remove(path);
}

TEST_CASE("assemble embeds its config") {
    const Run r = run({"assemble", "--op", "commutator", "--symbol", "nu=0.5;U=1", "--degree", "6", "--r0", "3"});
    CHECK(r.code == 0);
    const std::string first = r.out.substr(2, r.out.find('\n') - 2);
    const json meta = json::parse(first);
    CHECK(meta["config"]["symbol"]["nu"] == 0.5);
    CHECK(meta["config"]["degree"] == 6);
}

TEST_CASE("theorem report for a linear symbol") {
    const Run r = run({"theorem", "--alpha", "0", "--symbol", "nu=0;U=1", "--degrees", "16,32", "--no-runtime"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["theorem_constant"].get<double>() == doctest::Approx(1.0));
    CHECK(j["multiplicity"] == 4);
    CHECK(!j.contains("runtime_sec"));
    CHECK(run({"theorem", "--alpha", "0", "--symbol", "nu=0;U=1", "--degrees", "16,32", "--no-runtime"}).out == r.out);
}

TEST_CASE("usage errors exit with 2 and a JSON diagnostic") {
    const Run a = run({"spectrum", "--alpha", "-1"});
    CHECK(a.code == 2);
    CHECK(json::parse(a.err)["error"] == "usage");
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"theorem", "--symbol", "nu=-1;U=1"}).code == 2);
    CHECK(run({"assemble", "--op", "nope"}).code == 2);
    CHECK(run({"fit", "--input", "/nonexistent/file.csv"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
