#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ultradiff/cli.hpp"

using namespace ultradiff;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("eval") {
    auto r = run({"--p", "2", "eval", "--expr", "phi32(x1)", "--at", "X^2"});
    CHECK(r.code == 0);
    CHECK(r.out == "X^3 + O(X^96)\n");
    CHECK(r.err.empty());

    auto two = run({"eval", "--expr", "x1*x2", "--at", "X; X^-1", "--prec", "8"});
    CHECK(two.code == 0);
    CHECK(two.out == "1 + O(X^7)\n");

    auto tuple = run({"--format", "json", "eval", "--expr", "[x1 + 1, x1^2]", "--at", "1 + X"});
    CHECK(tuple.code == 0);
    auto j = nlohmann::json::parse(tuple.out);
    CHECK(j["values"].size() == 2);
    CHECK(j["values"][1] == "1 + X^2 + O(X^64)");
    CHECK(j["abs"][0] == "2^-1");
}

TEST_CASE("configuration errors exit with status 2") {
    auto bad_p = run({"--p", "4", "eval", "--expr", "x1", "--at", "1"});
    CHECK(bad_p.code == 2);
    CHECK(bad_p.err == "error: p must be prime\n");
    CHECK(bad_p.out.empty());

    CHECK(run({"--prec", "3", "eval", "--expr", "x1", "--at", "1"}).code == 2);
    CHECK(run({"--format", "xml", "eval", "--expr", "x1", "--at", "1"}).code == 2);
    CHECK(run({"eval", "--expr", "x1 +", "--at", "1"}).code == 2);
    CHECK(run({"eval", "--expr", "x2", "--at", "1"}).code == 2);
    CHECK(run({"eval", "--expr", "x1", "--at", "7"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"check", "nonsense", "--expr", "x1"}).code == 2);
    CHECK(run({"check", "theta", "--expr", "x1"}).code == 2);
    CHECK(run({"--domain", "O^2", "check", "fviaphi", "--expr", "x1"}).code == 2);
    CHECK(run({"eval", "--expr", "phi32(x1)", "--at", "X^-1"}).code == 2);
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("counterexample") != std::string::npos);
}

TEST_CASE("precision errors exit with status 3") {
    auto r = run({"eval", "--expr", "x1/(x1 - x2)", "--at", "X; X + O(X^4)"});
    CHECK(r.code == 3);
    CHECK(r.err.starts_with("error: "));
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    CHECK(run({"--prec", "30", "probe", "c2", "--n-max", "20"}).code == 3);
    CHECK(run({"dd", "--expr", "x1^2", "--alpha", "1", "--at", "X; X"}).code == 3);
}

TEST_CASE("dd, dq and phi") {
    auto dd = run({"--p", "2", "--prec", "16", "dd", "--expr", "phi32(x1)", "--alpha", "(2)", "--at", "0; X^2; X^2 + X^5"});
    CHECK(dd.code == 0);
    CHECK(dd.out.starts_with("X^-1 + "));
    auto rec = run({"--p", "2", "--prec", "16", "dd", "--expr", "phi32(x1)", "--alpha", "(2)", "--at", "0; X^2; X^2 + X^5",
                    "--method", "recursive"});
    CHECK(rec.code == 0);
    CHECK(rec.out.starts_with("X^-1 + 1 + X^2 + X^3 + X^5 + X^6 + "));
    CHECK(dd.out.starts_with("X^-1 + 1 + X^2 + X^3 + X^5 + X^6 + "));

    auto dq = run({"dq", "--expr", "x1*x2", "--k", "1", "--at", "1; 1; 1; 1; X"});
    CHECK(dq.code == 0);
    CHECK(dq.out.starts_with("X + O(X^"));

    auto phi = run({"phi", "--expr", "phi32(x1)", "--k", "1", "--x", "X", "--xi", "1", "--t", "X^3"});
    CHECK(phi.code == 0);
    CHECK(phi.out.starts_with("X + O(X^"));

    auto phi2 = run({"phi", "--expr", "phi32(x1)", "--k", "2", "--x", "X", "--xi", "1", "--xi", "X", "--t", "X^3; X"});
    CHECK(phi2.code == 0);
    CHECK(phi2.out.starts_with("0 + O(X^"));
    CHECK(run({"phi", "--expr", "phi32(x1)", "--k", "2", "--x", "X", "--xi", "1", "--t", "X^3"}).code == 2);
}

TEST_CASE("checks through the command line") {
    auto r = run({"--samples", "50", "--format", "json", "check", "fviaphi", "--expr", "x1*x2 + x1^3"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["op"] == "fviaphi");
    CHECK(j["exact_matches"] == 50);
    CHECK(j["samples"] == 50);

    auto csv = run({"--samples", "25", "--format", "csv", "check", "symmetry", "--expr", "x1^3", "--alpha", "2"});
    CHECK(csv.code == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 26);

    CHECK(run({"--samples", "20", "check", "simpfml", "--expr", "x1*x2", "--alpha", "1,0", "--beta", "0,0,1"}).code == 0);
    CHECK(run({"--samples", "20", "check", "theta", "--expr", "x1^3", "--alpha", "3"}).code == 0);
    CHECK(run({"--samples", "20", "check", "recursion", "--expr", "x1*x2^2", "--alpha", "1,2"}).code == 0);
    CHECK(run({"--samples", "20", "--domain", "ball(1, 2; X, 1)", "check", "fviaphi", "--expr", "x1*x2"}).code == 0);
}

TEST_CASE("probes and counterexample") {
    auto h = run({"--samples", "300", "--format", "json", "probe", "holder", "--expr", "phi32(x1)"});
    CHECK(h.code == 0);
    CHECK(nlohmann::json::parse(h.out)["sigma"] == "3/2");

    auto hcsv = run({"--samples", "300", "--format", "csv", "probe", "holder", "--expr", "x1"});
    CHECK(std::count(hcsv.out.begin(), hcsv.out.end(), '\n') == 301);

    auto c2 = run({"--format", "csv", "probe", "c2", "--n-max", "6"});
    CHECK(c2.code == 0);
    CHECK(c2.out == "n,valuation,abs\n2,-1,2^1\n4,-2,2^2\n6,-3,2^3\n");

    auto bc = run({"--samples", "40", "--format", "json", "probe", "bcnorm", "--expr", "phi32(x1)", "--alpha", "2",
                   "--levels", "5,7,9", "--witness", "gauss"});
    CHECK(bc.code == 0);
    CHECK(nlohmann::json::parse(bc.out)["monotone_growth"] == true);

    std::vector<std::string> args{"--p", "2", "--prec", "64", "--samples", "200", "counterexample", "--n-max", "20",
                                  "--format", "json"};
    auto a = run(args);
    auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["rows"].back()["abs"] == "2^10");
    CHECK(j["verdict"] == "C^∞_Lud evidence complete; C^2 refuted.");
}

TEST_CASE("expression files") {
    const char* path = "ultradiff_test_expr.txt";
    {
        std::ofstream f(path);
        f << "x1^2 + x1\n";
    }
    auto r = run({"--prec", "8", "eval", "--expr-file", path, "--at", "X"});
    CHECK(r.code == 0);
    CHECK(r.out == "X + X^2 + O(X^8)\n");
    std::remove(path);
    CHECK(run({"eval", "--expr-file", "/nonexistent/expr", "--at", "X"}).code == 2);
}
