#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "tbound/cli.hpp"

using namespace tbound;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "torsionbound");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(TBOUND_CORPUS_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
    const std::string path = std::string(TBOUND_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("torsion on the trefoil") {
    const auto r = run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,1", "--json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["delta"]["display"] == "t^2 - t + 1");
    CHECK(j["delta"]["coeffs"] == json({"1", "-1", "1"}));
    CHECK(j["c"] == "73");
    CHECK(j["k"] == 6);
    CHECK(j["verdict"] == "pass");
    CHECK(j["psi"] == json({1, 1}));
    CHECK(j["roots"].size() == 2);
    CHECK(j["roots"][0]["modulus"] == "1");

    const auto text = run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,1"});
    CHECK(text.code == 0);
    CHECK(text.out.find("delta = t^2 - t + 1") != std::string::npos);
    CHECK(text.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("torsion input errors") {
    CHECK(run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,2"}).code == 1);
    CHECK(run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "2,2"}).code == 1);
    CHECK(run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,x"}).code == 1);
    CHECK(run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,1", "--tol", "0.01"}).code == 1);
    CHECK(run({"torsion", "--pres", corpus("missing.pres"), "--psi", "1"}).code == 1);
    const auto bad = run({"torsion", "--pres", temp_file("bad.pres", "gens: x\nrel: x y\n"), "--psi", "1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("unknown generator") != std::string::npos);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({}).code == 1);
}

TEST_CASE("free group is vacuous") {
    const auto r = run({"torsion", "--pres", temp_file("free.pres", "gens: x\n"), "--psi", "1", "--json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["verdict"] == "vacuous");
}

TEST_CASE("certify-only mode") {
    const auto r = run({"torsion", "--pres", corpus("trefoil.pres"), "--psi", "1,1", "--certify-only", "--json"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["verdict"] == "pass");
    CHECK(j["roots"].empty());
}

TEST_CASE("scan") {
    const auto tr = run({"scan", "--pres", corpus("trefoil.pres"), "--bound", "3", "--json"});
    CHECK(tr.code == 0);
    CHECK(json::parse(tr.out)["reports"].size() == 1);

    const auto link = run({"scan", "--pres", corpus("torus_link_2_4.pres"), "--bound", "2", "--json"});
    CHECK(link.code == 0);
    const auto j = json::parse(link.out);
    CHECK(j["reports"].size() == 8);  // primitive vectors of Z^2 in the box, up to sign
    for (const auto& rep : j["reports"]) CHECK(rep["verdict"] == "pass");

    const auto granny = run({"scan", "--pres", corpus("granny.pres"), "--bound", "2", "--json"});
    CHECK(granny.code == 0);
    CHECK(json::parse(granny.out)["reports"].size() == 1);

    const auto betti0 = run({"scan", "--pres", temp_file("z3.pres", "gens: x\nrel: x^3\n"), "--bound", "2"});
    CHECK(betti0.code == 0);
    CHECK(betti0.err.find("warning") != std::string::npos);
    CHECK(run({"scan", "--pres", corpus("trefoil.pres"), "--bound", "0"}).code == 1);
}

TEST_CASE("mapping torus") {
    const auto cat = run({"mapping-torus", "--matrix", "2,1,1,1", "--power", "3", "--json"});
    CHECK(cat.code == 0);
    const auto j = json::parse(cat.out);
    CHECK(j["pass"] == true);
    CHECK(j["powers"].size() == 3);
    CHECK(j["bundle_torsion"]["torsion"] == "t^2 - 3*t + 1");
    CHECK(run({"mapping-torus", "--matrix", "1,0,0,1", "--power", "2"}).code == 0);
    CHECK(run({"mapping-torus", "--matrix", "2,0,0,1"}).code == 1);
    CHECK(run({"mapping-torus", "--matrix", "1,2,3"}).code == 1);
}

TEST_CASE("sol census") {
    const auto three = run({"sol-census", "--c", "3", "--json"});
    CHECK(three.code == 0);
    const auto j = json::parse(three.out);
    REQUIRE(j["traces"].size() == 2);
    CHECK(j["traces"][0]["trace"] == 3);
    CHECK(j["traces"][0]["count"] == 1);
    CHECK(j["traces"][1]["trace"] == -3);
    CHECK(j["traces"][1]["count"] == 1);
    CHECK(json::parse(run({"sol-census", "--c", "1", "--json"}).out)["traces"].empty());
    CHECK(json::parse(run({"sol-census", "--c", "2.5", "--json"}).out)["trace_bound"] == 2);
    CHECK(json::parse(run({"sol-census", "--c", "10/3", "--json"}).out)["trace_bound"] == 3);
    const auto five = run({"sol-census", "--trace-bound", "5", "--validate", "--json"});
    CHECK(five.code == 0);
    const auto f = json::parse(five.out);
    CHECK(f["validated"] == true);
    CHECK(f["traces"].size() == 6);
    CHECK(run({"sol-census", "--trace-bound", "2"}).code == 1);
    CHECK(run({"sol-census", "--c", "1/2"}).code == 1);
    CHECK(run({"sol-census", "--c", "abc"}).code == 1);
    CHECK(run({"sol-census"}).code == 1);
}

TEST_CASE("JSON round trip") {
    for (const char* file : {"trefoil.pres", "granny.pres", "bundle_rl.pres", "solid_torus.pres"}) {
        const auto p = load_presentation(corpus(file));
        for (const auto& rep : scan(p, 2, 1e-10)) {
            const auto rec = cli::make_record(p, rep);
            const auto j = cli::to_json(rec);
            CHECK(cli::record_from_json(json::parse(j.dump())) == rec);
            CHECK(j.contains("presentation"));
            CHECK(j.contains("delta"));
            CHECK(j.contains("roots"));
        }
    }
}

TEST_CASE("exit codes") {
    CHECK(cli::exit_code_for(Verdict::pass) == 0);
    CHECK(cli::exit_code_for(Verdict::vacuous) == 0);
    CHECK(cli::exit_code_for(Verdict::fail) == 2);
    CHECK(cli::exit_code_for(Verdict::boundary_indeterminate) == 3);
    CHECK(cli::exit_code_for(Verdict::unknown) == 3);
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"scan", "--pres", corpus("three_torus.pres"), "--bound", "2", "--json"};
    const auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
}

TEST_CASE("decimal formatting") {
    CHECK(cli::format_decimal(0.0) == "0");
    CHECK(cli::format_decimal(-0.0) == "0");
    CHECK(cli::format_decimal(2.618033988749895) == "2.61803398874989");
    CHECK(cli::format_decimal(1.0) == "1");
}
