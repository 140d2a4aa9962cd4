#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "schurlab/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    json report;
    std::string raw;
    std::string summary;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "schurlab");
    std::ostringstream out, err;
    const int code = schurlab::run_command(args, out, err);
    Run r{code, json(), out.str(), err.str()};
    if (!r.raw.empty()) r.report = json::parse(r.raw);
    return r;
}

std::string data(const std::string& name) { return std::string(SCHURLAB_DATA_DIR) + "/" + name; }

std::string without_time(const std::string& raw) {
    json j = json::parse(raw);
    j.erase("wall_time_s");
    return j.dump();
}

}  // namespace

TEST_CASE("extremal-q on the bundled rank-two example") {
    const Run r = run({"extremal-q", "--input", data("paper6.json")});
    CHECK(r.code == 0);
    CHECK(r.report["command"] == "extremal-q");
    CHECK(r.report["result"]["verdict"] == "Extremal");
    CHECK(r.report["result"]["rank"] == 2);
    CHECK_FALSE(r.summary.empty());
    CHECK(run({"extremal-q", "--input", data("paper6.csv")}).report["result"]["verdict"] == "Extremal");
}

TEST_CASE("extremal-q on the identity emits a split") {
    const Run r = run({"extremal-q", "--input", data("identity4.json")});
    CHECK(r.code == 1);
    CHECK(r.report["result"]["verdict"] == "NotExtremal");
    CHECK(r.report["result"]["split"].is_object());
}

TEST_CASE("norm of a PSD input") {
    const Run r = run({"norm", "--input", data("psd.json"), "--eps", "1e-6"});
    CHECK(r.code == 0);
    // maximum diagonal of the bundled matrix
    std::ifstream f(data("psd.json"));
    const json m = json::parse(f);
    double d = 0.0;
    const std::size_t n = m["rows"];
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, m["entries"][i * n + i][0].get<double>());
    CHECK(std::abs(r.report["result"]["upper"].get<double>() - d) <= 1e-6);
    CHECK(std::abs(r.report["result"]["lower"].get<double>() - d) <= 1e-6);
}

TEST_CASE("other subcommands") {
    CHECK(run({"fullness", "--input", data("paper6_L.json")}).code == 0);
    CHECK(run({"fullness", "--input", data("identity3.json")}).code == 1);
    CHECK(run({"fullness", "--input", data("paper6_L.json"), "--transform", data("identity2.json")}).code == 0);
    CHECK(run({"extremal-positive", "--input", data("example4.csv")}).report["result"]["verdict"] ==
          "NecessaryConditionsPass");
    const Run g = run({"extremal-general", "--input", data("example4.json"), "--normalize"});
    CHECK(g.code == 1);
    CHECK(g.report["result"]["verdict"] == "NotExtremal");
    CHECK(run({"decompose", "--input", data("identity3.json")}).report["result"]["split"].is_object());
    CHECK(run({"decompose", "--input", data("paper6.json")}).code == 1);
    const Run b = run({"bound", "--input", data("identity4.json")});
    CHECK(b.report["result"]["bound"] == 2.0);
    const Run gen = run({"generate", "--n", "4", "--r", "2", "--trials", "5", "--seed", "3"});
    CHECK(gen.code == 0);
    CHECK(gen.report["result"]["accepted"].get<int>() > 0);
    CHECK(run({"extend", "--input", data("paper6_L.json"), "--k", "3"}).report["result"]["report"]["verdict"] ==
          "Extremal");
    CHECK(run({"schur-product", "--input", data("diag.json"), "--other", data("identity2.json")}).code == 0);
    CHECK(run({"face-check", "--input", data("paper6.json"), "--y", data("paper6.json"), "--z",
               data("paper6.json")})
              .code == 0);
    const Run fz = run({"factorize", "--input", data("diag.csv")});
    CHECK(fz.code == 0);
    CHECK(fz.report["result"]["factorization"]["rows"] == 2);
    const Run fvg = run({"factorize", "--input", data("paper6.json"), "--fvg"});
    CHECK(fvg.code == 0);
    CHECK(fvg.report["result"]["fvg"]["residual"].get<double>() <= 1e-8);
    CHECK(fvg.report["result"]["factorization"]["rows"] == 2);
    // diag(1, 1/4) has a short column, so no F V G form exists
    CHECK(run({"factorize", "--input", data("diag.csv"), "--fvg"}).report["error"]["kind"] == "ColumnsNotUnit");
}

TEST_CASE("input errors exit 2 with a structured error") {
    const Run missing = run({"norm", "--input", data("no_such_file.json")});
    CHECK(missing.code == 2);
    CHECK(missing.report["error"]["kind"] == "ParseError");
    const Run notq = run({"extremal-q", "--input", data("example4.json")});
    CHECK(notq.code == 2);
    CHECK(notq.report["error"]["kind"] == "NotInQn");
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"norm", "--format", "xml", "--input", data("psd.json")}).code == 2);
}

TEST_CASE("precision not reached exits 3") {
    const Run r = run({"norm", "--input", data("psd.json"), "--eps", "-1"});
    CHECK(r.code == 2);
    // a bracket narrower than roundoff cannot be certified
    const Run tight = run({"norm", "--input", data("paper6.json"), "--eps", "1e-16"});
    CHECK(tight.code == 3);
    CHECK(tight.report["result"]["precision_reached"] == false);
    CHECK(tight.report["result"]["upper"].get<double>() >= tight.report["result"]["lower"].get<double>());
}

TEST_CASE("reports are deterministic") {
    const std::vector<std::string> args{"norm", "--input", data("paper6.json"), "--seed", "7"};
    CHECK(without_time(run(args).raw) == without_time(run(args).raw));
    const std::vector<std::string> g{"generate", "--n", "4", "--r", "2", "--trials", "3"};
    CHECK(without_time(run(g).raw) == without_time(run(g).raw));
}

TEST_CASE("tolerance flag and environment default") {
    CHECK(run({"norm", "--input", data("psd.json")}).report["tolerances"]["tol"] == 1e-9);
    CHECK(run({"--tol", "1e-7", "norm", "--input", data("psd.json")}).report["tolerances"]["tol"] == 1e-7);
    CHECK(run({"norm", "--input", data("psd.json"), "--tol", "1e-8"}).report["tolerances"]["tol"] == 1e-8);
    ::setenv(schurlab::kTolEnvVar, "1e-6", 1);
    const Run e = run({"norm", "--input", data("psd.json")});
    ::unsetenv(schurlab::kTolEnvVar);
    CHECK(e.report["tolerances"]["tol"] == 1e-6);
}
