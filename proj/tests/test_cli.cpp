#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "schema_check.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(PPTRI_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool validate_against(const nlohmann::json& j, const std::string& schema_file) {
    std::string err;
    bool ok = schemacheck::validate(
        j, schemacheck::load(std::string(PPTRI_SCHEMA_DIR) + "/" + schema_file), err);
    if (!ok) MESSAGE(err);
    return ok;
}

}  // namespace

TEST_CASE("pp-check: verdicts, exit codes, schema") {
    auto r = run("pp-check --p 11 --k 2 --alpha -1");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "permutation");
    CHECK(validate_against(j, "perm_report.schema.json"));

    auto r2 = run("pp-check --p 11 --k 2 --alpha 3");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["verdict"] == "not_permutation");
    CHECK(validate_against(j2, "perm_report.schema.json"));

    // expectation mismatch drives exit code 1
    CHECK(run("pp-check --p 11 --k 2 --alpha 3 --expect pp").exit_code == 1);
    CHECK(run("pp-check --p 11 --k 2 --alpha -1 --expect pp").exit_code == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("pp-check --p 11 --k 2").exit_code == 2);         // missing alpha
    CHECK(run("lintri --p 11 --l 3 --n 1 --A xx --B 0").exit_code == 2);
    CHECK(run("frobnicate --p 11").exit_code == 2);             // unknown subcommand
    CHECK(run("pp-check --p 4 --k 1 --alpha 1").exit_code == 2);  // 4 is not prime
}

TEST_CASE("census reproduces 522 and validates") {
    auto r = run("census --p 11");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["qualifying_count"] == 522);
    CHECK(j["total"] == 1330);
    CHECK(validate_against(j, "census_report.schema.json"));
}

TEST_CASE("lintri subcommand") {
    auto r = run("lintri --p 11 --l 3 --n 1 --A 1 --B 0");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(validate_against(j, "lintri_report.schema.json"));
}

TEST_CASE("charsum single mu") {
    auto r = run("charsum --p 11 --k 3 --mu 5");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(validate_against(j, "charsum_report.schema.json"));
    // the degenerate mu = 1/4 = 3 violates the bound: exit 1
    auto r2 = run("charsum --p 11 --k 3 --mu 3");
    CHECK(r2.exit_code == 1);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["satisfied"] == false);
    CHECK(j2["sum_value"] == 1330);
}

TEST_CASE("charsum csv sweep on a small field") {
    auto r = run("charsum --p 5 --k 2 --format csv");
    CHECK(r.out.rfind("mu,S,bound_ok", 0) == 0);
    // 24 data rows after the header
    int rows = 0;
    for (char ch : r.out)
        if (ch == '\n') ++rows;
    CHECK(rows >= 24);
}

TEST_CASE("mu-check") {
    auto r = run("mu-check --p 11 --k 2");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["cardinality"] == 122);
    CHECK(validate_against(j, "mu_check_report.schema.json"));
}

TEST_CASE("curve-count on a small field") {
    auto r = run("curve-count --p 7 --k 1 --alpha 3 --degrees 1");
    auto j = nlohmann::json::parse(r.out);
    CHECK(validate_against(j, "pointcount_report.schema.json"));
}

TEST_CASE("k2-unique and k2-witness") {
    auto r = run("k2-unique --p 11 --samples 3 --seed 7");
    CHECK(r.exit_code == 0);
    auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    for (const auto& j : arr) CHECK(validate_against(j, "k2_unique_report.schema.json"));

    auto r2 = run("k2-witness --p 11 --alpha 4");
    CHECK(r2.exit_code == 0);
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(validate_against(j2, "k2_witness_report.schema.json"));
}

TEST_CASE("conjecture-table rows validate and are deterministic") {
    auto r = run("conjecture-table --p 7 --k 1 --format json");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        CHECK(validate_against(j, "perm_report.schema.json"));
        ++rows;
    }
    CHECK(rows == 6);
    // byte-identical across runs with the same configuration
    auto r2 = run("conjecture-table --p 7 --k 1 --format json");
    CHECK(r.out == r2.out);

    auto csv = run("conjecture-table --p 7 --k 1 --format csv");
    CHECK(csv.out.rfind("p,k,alpha,verdict,method,witness,elapsed_ms", 0) == 0);
    // no quoting needed: commas only as the delimiter (6 per data row)
    std::istringstream cs(csv.out);
    while (std::getline(cs, line)) {
        if (line.empty()) continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 6);
    }
}

TEST_CASE("budget env var switches the method") {
    auto r = run("pp-check --p 11 --k 2 --alpha -1 --budget 100");
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["method"] == "mu_collision");
    setenv("PPTRI_BUDGET", "100", 1);
    auto r2 = run("pp-check --p 11 --k 2 --alpha -1");
    unsetenv("PPTRI_BUDGET");
    auto j2 = nlohmann::json::parse(r2.out);
    CHECK(j2["method"] == "mu_collision");
}

TEST_CASE("deterministic output, timing suppressed by default") {
    auto a = run("pp-check --p 11 --k 2 --alpha 3");
    auto b = run("pp-check --p 11 --k 2 --alpha 3");
    CHECK(a.out == b.out);
    auto j = nlohmann::json::parse(a.out);
    CHECK(j["elapsed_ms"] == 0.0);
}
