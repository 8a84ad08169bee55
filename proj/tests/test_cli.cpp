#include "dkg/manifest.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dkg;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(bool(is));
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "dkg_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run(const json& manifest, const fs::path& out, std::string* log_text = nullptr,
        RunOptions base = {}) {
    base.out_dir = out.string();
    std::ostringstream log;
    const int rc = run_manifest_json(manifest, base, log);
    if (log_text) *log_text = log.str();
    return rc;
}

// Rows of a series.csv (skipping comment and header lines).
std::vector<std::vector<double>> parse_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 't') continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

TEST_CASE("region command: exact pairs and range checking") {
    const fs::path out = fresh_dir("region");
    const json manifest = {{"command", "region"}, {"r", "2"}, {"delta", "1/100"},
                           {"variant", "minimal_l"}, {"seed", 3}};
    CHECK(run(manifest, out) == kExitOk);
    const json rep = json::parse(slurp(out / "report.json"));
    CHECK(rep.at("s").get<std::string>() == "1/100");
    CHECK(rep.at("l").get<std::string>() == "13/50");
    CHECK(rep.at("in_r2_region").get<bool>());

    json bad = manifest;
    bad["r"] = "3";
    CHECK(run(bad, out) == kExitUsage);
}

TEST_CASE("simulate: zero data produces an all-zero series") {
    const fs::path out = fresh_dir("sim_zero");
    const json manifest = {{"command", "simulate"},
                           {"seed", 1},
                           {"grid", {{"n_x", 16}}},
                           {"data", {{"family", "zero"}}},
                           {"solver", {{"dt", 0.01}, {"steps", 10}}}};
    CHECK(run(manifest, out) == kExitOk);
    for (const auto& row : parse_csv(slurp(out / "series.csv")))
        for (double v : row) CHECK((v == 0.0 || v < 0.2)); // t column grows, data stays 0
    const json rep = json::parse(slurp(out / "report.json"));
    CHECK(rep.at("charge_final").get<double>() == 0.0);
}

TEST_CASE("simulate: free flow keeps the charge column constant") {
    const fs::path out = fresh_dir("sim_free");
    const json manifest = {
        {"command", "simulate"},
        {"seed", 2},
        {"grid", {{"n_x", 16}}},
        {"data", {{"family", "gaussian"}, {"amplitude", 0.4}}},
        {"solver", {{"dt", 0.01}, {"steps", 20}, {"disable_coupling", true}}}};
    CHECK(run(manifest, out) == kExitOk);
    const auto rows = parse_csv(slurp(out / "series.csv"));
    REQUIRE(rows.size() == 21);
    const double q0 = rows.front().at(1);
    for (const auto& row : rows) CHECK(std::abs(row.at(1) - q0) <= 1e-12 * q0);
    CHECK(fs::exists(out / "fields" / "psi.dkgf"));
    CHECK(fs::exists(out / "fields" / "phi.dkgf"));
}

TEST_CASE("simulate: reference run matches the golden series") {
    const fs::path data_dir(TEST_DATA_DIR);
    const json manifest = json::parse(slurp(data_dir / "golden_manifest.json"));
    const fs::path out = fresh_dir("sim_golden");
    RunOptions opts;
    CHECK(run(manifest, out, nullptr, opts) == kExitOk);
    const auto got = parse_csv(slurp(out / "series.csv"));
    const auto want = parse_csv(slurp(data_dir / "golden_series.csv"));
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        REQUIRE(got[i].size() == want[i].size());
        for (std::size_t j = 0; j < got[i].size(); ++j)
            CHECK(std::abs(got[i][j] - want[i][j]) <=
                  1e-8 * std::max(1.0, std::abs(want[i][j])));
    }
}

TEST_CASE("determinism: identical manifest and seed give identical bytes") {
    const json manifest = {
        {"command", "simulate"},
        {"seed", 9},
        {"grid", {{"n_x", 16}}},
        {"data", {{"family", "random_spectrum"}, {"amplitude", 0.2}, {"decay", 2.0}}},
        {"solver", {{"dt", 0.005}, {"steps", 11}, {"record_every", 1}}},
        {"record_norms", {{{"field", "psi"}, {"s", 0.0}, {"r", 2.0}}}}};
    const fs::path out1 = fresh_dir("det1"), out2 = fresh_dir("det2");
    CHECK(run(manifest, out1) == kExitOk);
    CHECK(run(manifest, out2) == kExitOk);
    CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));
    CHECK(slurp(out1 / "series.csv") == slurp(out2 / "series.csv"));
    CHECK(slurp(out1 / "fields" / "psi.dkgf") == slurp(out2 / "fields" / "psi.dkgf"));

    const json verify = {{"command", "verify"},
                         {"check", "angle16"},
                         {"seed", 4},
                         {"params", {{"count", 20000}}}};
    const fs::path v1 = fresh_dir("det_v1"), v2 = fresh_dir("det_v2");
    CHECK(run(verify, v1) == kExitOk);
    CHECK(run(verify, v2) == kExitOk);
    CHECK(slurp(v1 / "report.json") == slurp(v2 / "report.json"));
    CHECK(slurp(v1 / "report.csv") == slurp(v2 / "report.csv"));
}

TEST_CASE("verify: usage errors exit 1 with the violated constraint named") {
    const fs::path out = fresh_dir("verify_bad");
    // count = 0 is invalid.
    CHECK(run({{"command", "verify"}, {"check", "angle14"}, {"params", {{"count", 0}}}}, out) ==
          kExitUsage);
    // Unknown check name.
    CHECK(run({{"command", "verify"}, {"check", "nonsense"}}, out) == kExitUsage);
    // Inadmissible bilinear parameters are rejected and named.
    std::string log;
    const json bad = {{"command", "verify"},
                      {"check", "bilinear11"},
                      {"seed", 1},
                      {"params",
                       {{"s", 0.635}, {"l", 1.26}, {"r", 1.01}, {"b", 1.0},
                        {"resolutions", {8}}, {"count", 4}}}};
    CHECK(run(bad, out, &log) == kExitUsage);
    CHECK(log.find("l <= 1 + 1/(4r)") != std::string::npos);

    // The documented escape hatch runs them anyway.
    RunOptions forced;
    forced.override_hypotheses = true;
    CHECK(run(bad, out, &log, forced) == kExitOk);
}

TEST_CASE("verify: nullform13 and product run end to end") {
    const fs::path out = fresh_dir("verify_nf");
    const json nf = {{"command", "verify"},
                     {"check", "nullform13"},
                     {"seed", 5},
                     {"params",
                      {{"grid", {{"n_x", 8}, {"n_t", 8}}}, {"signs", "+-"}, {"count", 2}}}};
    CHECK(run(nf, out) == kExitOk);
    const json rep = json::parse(slurp(out / "report.json"));
    CHECK(rep.at("passed").get<bool>());

    const json prod = {{"command", "verify"},
                       {"check", "product"},
                       {"seed", 6},
                       {"params",
                        {{"which", "prop_2_3"}, {"r", 2.0}, {"alpha1", 0.4}, {"alpha2", 0.4},
                         {"b1", 0.4}, {"b2", 0.4}, {"validate_only", true}}}};
    CHECK(run(prod, out) == kExitOk);
}

TEST_CASE("simulate: blow-up exits with code 2") {
    const fs::path out = fresh_dir("sim_blowup");
    const json manifest = {
        {"command", "simulate"},
        {"seed", 1},
        {"grid", {{"n_x", 16}}},
        {"physics", {{"m", 1.0}, {"M", 1.0}}},
        {"data", {{"family", "gaussian"}, {"amplitude", 1e160}}},
        {"solver", {{"dt", 20.0}, {"steps", 60}}}};
    CHECK(run(manifest, out) == kExitBlowUp);
    const json rep = json::parse(slurp(out / "report.json"));
    CHECK(rep.contains("blow_up"));
}

TEST_CASE("simulate: picard mode reports contraction") {
    const fs::path out = fresh_dir("sim_picard");
    const json manifest = {
        {"command", "simulate"},
        {"seed", 2},
        {"grid", {{"n_x", 12}}},
        {"physics", {{"m", 1.0}, {"M", 1.0}}},
        {"data", {{"family", "gaussian"}, {"amplitude", 0.2}}},
        {"solver",
         {{"mode", "picard"}, {"picard", {{"t_local", 0.1}, {"n_t", 16}}},
          {"picard_iters", 8}, {"tol", 1e-11}}}};
    CHECK(run(manifest, out) == kExitOk);
    const json rep = json::parse(slurp(out / "report.json"));
    const auto diffs = rep.at("picard").at("cauchy_diffs").get<std::vector<double>>();
    REQUIRE(diffs.size() >= 2);
    CHECK(diffs[1] < diffs[0]);
}

TEST_CASE("norms and scaling commands") {
    const fs::path out = fresh_dir("norms");
    const json norms = {
        {"command", "norms"},
        {"seed", 8},
        {"grid", {{"n_x", 16}}},
        {"data", {{"family", "gaussian"}, {"amplitude", 0.5}}},
        {"specs",
         {{{"field", "psi"}, {"s", 0.0}, {"r", 2.0}},
          {{"field", "phi0"}, {"s", 0.26}, {"r", 2.0}},
          {{"field", "phi1"}, {"s", -0.74}, {"r", 1.5}}}}};
    CHECK(run(norms, out) == kExitOk);
    const json rep = json::parse(slurp(out / "report.json"));
    CHECK(rep.at("records").size() == 3);
    for (const auto& rec : rep.at("records")) CHECK(rec.at("value").get<double>() > 0.0);

    const fs::path out2 = fresh_dir("scaling");
    const json scal = {{"command", "scaling"}, {"seed", 8},   {"grid", {{"n_x", 32}}},
                       {"s", 0.0},             {"r", 2.0},    {"field_kind", "spinor"},
                       {"lambdas", {2, 4, 8}}, {"tolerance", 0.01}};
    CHECK(run(scal, out2) == kExitOk);
}
