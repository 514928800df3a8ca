#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plumbing/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = plumbing::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("twig commands") {
    auto r = run({"twig", "adjoint", "[2,4]"});
    CHECK(r.code == 0);
    CHECK(r.out == "[2,2,3]\n");
    CHECK(run({"twig", "det", "[2,2,3]"}).out == "7\n");
    CHECK(run({"twig", "inductance", "[2,2,3]"}).out.find("5/7") != std::string::npos);
    CHECK(run({"twig", "ma", "[2,4]"}).out.find("4") != std::string::npos);
}

TEST_CASE("Du Val commands and exit codes") {
    auto yes = run({"dp", "contains-a2", "--degree", "3", "--type", "E6"});
    CHECK(yes.code == 0);
    CHECK(yes.out.find("Contains") != std::string::npos);
    auto no = run({"dp", "contains-a2", "--degree", "1", "--type", "E7"});
    CHECK(no.code == 1);
    CHECK(no.out.find("NotContains") != std::string::npos);
    CHECK(run({"dp", "contains-a2", "--degree", "8", "--type", "A1"}).code == 1);
    CHECK(run({"dp", "contains-a2", "--degree", "8", "--type", "A1", "--rational-point"}).code == 0);
    CHECK(run({"dp", "contains-a2", "--degree", "7", "--type", "A1"}).code == 2);

    auto table = run({"dp", "table"});
    CHECK(table.code == 0);
    auto rows = lines(table.out);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == "degree\ttype\tverdict");
    for (const auto& row : rows) CHECK(std::count(row.begin(), row.end(), '\t') == 2);
}

TEST_CASE("usage errors exit 2 and name the offending token") {
    auto flag = run({"twig", "det", "--bogus", "[2]"});
    CHECK(flag.code == 2);
    CHECK((flag.err + flag.out).find("--bogus") != std::string::npos);
    auto bad = run({"twig", "det", "[2,q]"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("'q'") != std::string::npos);
    auto type = run({"dp", "contains-a2", "--degree", "4", "--type", "A1+Z3"});
    CHECK(type.code == 2);
    CHECK(type.err.find("Z3") != std::string::npos);
    auto missing = run({"graph", "check", "no/such/file.txt"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("no/such/file.txt") != std::string::npos);
    CHECK(run({"catalog", "gen", "99"}).code == 2);
}

TEST_CASE("catalog generation feeds graph classification") {
    auto gen = run({"catalog", "gen", "24"});
    REQUIRE(gen.code == 0);
    CHECK(gen.out.rfind("# (24) -> HirzebruchPair(2)", 0) == 0);
    const std::string path = "cli_test_24.txt";
    {
        std::ofstream out(path);
        out << gen.out;
    }
    auto cls = run({"graph", "classify", path});
    CHECK(cls.code == 0);
    CHECK(cls.out.find("ContainsA2") != std::string::npos);
    CHECK(cls.out.find("E6") != std::string::npos);
    auto js = run({"--json", "graph", "classify", path});
    auto j = nlohmann::json::parse(js.out);
    CHECK(j.contains("evidence"));
    auto match = run({"catalog", "match", path});
    CHECK(match.out.find("(24)") != std::string::npos);
    std::remove(path.c_str());

    // JSON output of gen reads back as a graph file.
    const std::string jpath = "cli_test_24.json";
    {
        std::ofstream out(jpath);
        out << run({"--json", "catalog", "gen", "24"}).out;
    }
    CHECK(run({"graph", "check", jpath}).code == 0);
    std::remove(jpath.c_str());

    const std::string chain = "cli_test_chain.txt";
    {
        std::ofstream out(chain);
        out << "vertex a -2\nvertex b -1\nvertex c -2\nedge a b\nedge b c\n";
    }
    CHECK(run({"graph", "classify", chain}).code == 1);
    std::remove(chain.c_str());
}

TEST_CASE("JSON output parses") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--json", "twig", "inductance", "[2,2,3]"},
             {"--json", "dp", "contains-a2", "--degree", "3", "--type", "E6"},
             {"--json", "sweep", "inductance", "--max-det", "10"},
             {"--json", "catalog", "list"}}) {
        auto r = run(args);
        CHECK(r.code == 0);
        CHECK(nlohmann::json::accept(r.out));
    }
}

TEST_CASE("catalog verify") {
    auto r = run({"catalog", "verify", "--max-t", "1", "--max-m", "3", "--twig-det", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("52/52 PASS") != std::string::npos);
    auto p = run({"catalog", "verify", "--max-t", "1", "--max-m", "3", "--twig-det", "8", "--parallel"});
    CHECK(p.out == r.out);
}

TEST_CASE("the same arguments give the same output") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"sweep", "lemmas", "--seed", "3", "--count", "50"},
             {"sweep", "fujita", "--twig-det", "6"},
             {"catalog", "gen", "8", "--twig", "[2,3]"}}) {
        auto a = run(args);
        auto b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
