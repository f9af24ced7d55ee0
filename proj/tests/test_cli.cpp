// The suite runner and the command-line binary: canonical report order,
// byte-determinism, suite selection, exit codes, end-to-end subprocess runs.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qha/problem.hpp"
#include "qha/runner.hpp"

using namespace qha;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemFile<Rational> parse_q(const std::string& text) {
  Json j = Json::parse(text);
  return parse_problem<Rational>(j, problem_field_spec(j));
}

ProblemFile<Rational> load_fixture(const std::string& name) {
  return parse_q(slurp(std::string(QHA_DATA_DIR) + "/" + name));
}

// Drops every "millis" key (the timing fields excluded from determinism).
void strip_timing(Json& j) {
  if (j.is_object()) {
    j.erase("millis");
    for (auto& [k, v] : j.items()) strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) strip_timing(v);
  }
}

bool keys_sorted_and_unique(const RunResult& r) {
  for (std::size_t i = 0; i + 1 < r.reports.size(); ++i)
    if (!(r.reports[i].key < r.reports[i + 1].key)) return false;
  return true;
}

// The one-loop algebra x^2 = 0: admissible, but its Cartan matrix [[2]] is
// not invertible over the integers.
const char* kLoop = R"({
  "field": "Q",
  "algebras": {
    "loop": {
      "vertices": 1,
      "arrows": [{"name": "x", "source": 1, "target": 1}],
      "relations": [[{"coeff": "1", "path": ["x", "x"]}]]
    }
  }
})";

int run_cli(const std::string& args, std::string* output = nullptr) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "qha_cli_out.txt";
  const std::string cmd = std::string(QHA_CLI_BIN) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output) *output = slurp(out.string());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string write_temp(const std::string& name, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST_CASE("the bundled a2 problem passes the full suite") {
  auto p = load_fixture("a2.json");
  RunOptions opts;
  opts.suite = "all";
  opts.samples = 2;
  opts.seed = 5;
  RunResult r = run_problem(p, opts);
  CHECK(r.exit_code == 0);
  CHECK(r.failed == 0);
  CHECK(r.reports.size() > 60);
  CHECK(keys_sorted_and_unique(r));

  // The file's own checks come out under their index, including the expanded
  // corollaries suite entry.
  std::size_t file_checks = 0, corollary_checks = 0;
  for (const auto& er : r.reports) {
    file_checks += er.key.rfind("checks/", 0) == 0;
    corollary_checks += er.key.rfind("checks/005/corollaries/a2", 0) == 0;
  }
  CHECK(file_checks == 5 + 3);
  CHECK(corollary_checks == 3);
}

TEST_CASE("reports are byte-identical across runs except for timing") {
  auto p = load_fixture("a3rel.json");
  RunOptions opts;
  opts.suite = "all";
  opts.samples = 2;
  opts.seed = 42;
  opts.format = ReportFormat::json;

  RunResult r1 = run_problem(p, opts);
  RunResult r2 = run_problem(p, opts);
  Json j1 = run_result_json(p.field, opts, r1);
  Json j2 = run_result_json(p.field, opts, r2);
  strip_timing(j1);
  strip_timing(j2);
  CHECK(j1.dump(2) == j2.dump(2));
  CHECK(run_result_text(p.field, opts, r1) == run_result_text(p.field, opts, r2));
}

TEST_CASE("suites select the expected checks") {
  auto p = load_fixture("a3rel.json");

  SECTION("corollaries") {
    RunOptions opts;
    opts.suite = "corollaries";
    RunResult r = run_problem(p, opts);
    REQUIRE(r.reports.size() == 3);
    CHECK(r.exit_code == 0);
    CHECK(r.reports[0].key ==
          "corollaries/a3rel/000:corollary/hochschild-cohomology-euler");
    CHECK(r.reports[1].key == "corollaries/a3rel/001:corollary/hochschild-homology-euler");
    CHECK(r.reports[2].key == "corollaries/a3rel/002:corollary/hochschild-homology-vanishing");
    CHECK(r.reports[0].body.lhs == "1");  // Euler characteristic of HH^* for this algebra
    CHECK(r.reports[1].body.lhs == "3");  // n = 3
  }
  SECTION("lemmas") {
    RunOptions opts;
    opts.suite = "lemmas";
    opts.samples = 2;
    RunResult r = run_problem(p, opts);
    CHECK(r.exit_code == 0);
    // 3 structural + 10 per sample, plus the resolution-multiplicity device.
    CHECK(r.reports.size() == 3 + 2 * 10 + 1);
  }
  SECTION("hrr with a level filter") {
    RunOptions opts;
    opts.suite = "hrr";
    opts.samples = 2;
    opts.level = Level::module_level;
    RunResult r = run_problem(p, opts);
    CHECK(r.exit_code == 0);
    CHECK(r.reports.size() == 4 * 2);  // four module-level versions, two samples
    for (const auto& er : r.reports) {
      CHECK(er.key.rfind("hrr/a3rel/module/", 0) == 0);
      CHECK(er.body.pass);
    }
  }
  SECTION("lefschetz") {
    RunOptions opts;
    opts.suite = "lefschetz";
    opts.samples = 1;
    opts.level = Level::bimodule_level;
    RunResult r = run_problem(p, opts);
    CHECK(r.exit_code == 0);
    CHECK(r.reports.size() == 2);  // cohomological + homological
    for (const auto& er : r.reports) CHECK(er.key.find("/Lefschetz/") != std::string::npos);
  }
  SECTION("random streams emit exactly `samples` reports per algebra") {
    RunOptions opts;
    opts.suite = "random";
    opts.samples = 50;
    opts.seed = 7;
    RunResult r = run_problem(p, opts);
    CHECK(r.exit_code == 0);
    CHECK(r.failed == 0);
    CHECK(r.reports.size() == 50);
    CHECK(keys_sorted_and_unique(r));
  }
}

TEST_CASE("engine failures surface as reports, not crashes") {
  SECTION("a non-unimodular Cartan matrix poisons the algebra and exits 3") {
    auto p = parse_q(kLoop);
    RunOptions opts;
    opts.suite = "corollaries";
    RunResult r = run_problem(p, opts);
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0].key == "context/loop");
    CHECK_FALSE(r.reports[0].body.pass);
    CHECK_THAT(r.reports[0].body.lhs, ContainsSubstring("not unimodular"));
    CHECK(r.exit_code == 3);
  }
  SECTION("a check over mismatched algebras fails its report and exits 1") {
    Json j = Json::parse(slurp(std::string(QHA_DATA_DIR) + "/a2.json"));
    j["algebras"]["other"] =
        Json::parse(R"({"vertices": 1, "arrows": [], "relations": []})");
    j["modules"]["w"] =
        Json::parse(R"({"algebra": "other", "dims": [1], "actions": {}})");
    j["checks"] = Json::parse(
        R"([{"identity": "module/cohomological/HRR", "operands": ["s1", "w"]}])");
    auto p = parse_problem<Rational>(j, FieldSpec::make_rationals());
    RunOptions opts;
    opts.suite = "all";
    opts.samples = 1;
    RunResult r = run_problem(p, opts);
    CHECK(r.exit_code == 1);
    bool found = false;
    for (const auto& er : r.reports)
      if (er.key.rfind("checks/000", 0) == 0) {
        found = true;
        CHECK_FALSE(er.body.pass);
        CHECK(er.body.name == "error");
      }
    CHECK(found);
  }
}

TEST_CASE("named Lefschetz checks default to identity endomorphisms") {
  auto p = load_fixture("a2.json");
  CheckRequest hrr, lef;
  hrr.identity = identity_from_string("module/cohomological/HRR");
  hrr.operands = {"s1", "p1"};
  lef.identity = identity_from_string("module/cohomological/Lefschetz");
  lef.operands = {"s1", "p1"};
  ProblemFile<Rational> q = p;
  q.checks = {hrr, lef};
  RunOptions opts;
  opts.suite = "all";
  opts.samples = 1;
  RunResult r = run_problem(q, opts);
  CHECK(r.exit_code == 0);
  const ExecutedReport *rh = nullptr, *rl = nullptr;
  for (const auto& er : r.reports) {
    if (er.key.rfind("checks/000", 0) == 0) rh = &er;
    if (er.key.rfind("checks/001", 0) == 0) rl = &er;
  }
  REQUIRE(rh);
  REQUIRE(rl);
  CHECK(rh->body.lhs == rl->body.lhs);  // identity endomorphisms reproduce dimensions
}

TEST_CASE("the binary verifies bundled files end to end") {
  const std::string dir = QHA_DATA_DIR;
  std::string out;

  SECTION("full suite on the two-vertex line, JSON output") {
    const int code =
        run_cli("verify " + dir + "/a2.json --suite all --samples 2 --format json", &out);
    CHECK(code == 0);
    CHECK_THAT(out, ContainsSubstring("\"ok\": true"));
    CHECK_THAT(out, ContainsSubstring("\"failed\": 0"));
  }
  SECTION("corollaries suite, text output") {
    const int code = run_cli("verify " + dir + "/a3rel.json --suite corollaries", &out);
    CHECK(code == 0);
    CHECK_THAT(out, ContainsSubstring("[PASS] corollaries/a3rel"));
    CHECK_THAT(out, ContainsSubstring("3 check(s), 0 failed"));
  }
  SECTION("seeded random stream") {
    const int code = run_cli(
        "random --algebra " + dir + "/a3rel.json --samples 50 --seed 7 --format json", &out);
    CHECK(code == 0);
    CHECK_THAT(out, ContainsSubstring("\"total\": 50"));
    CHECK_THAT(out, ContainsSubstring("\"ok\": true"));
  }
  SECTION("field override runs the same file over a prime field") {
    const int code =
        run_cli("verify " + dir + "/a2.json --suite corollaries --field F_5 --format json", &out);
    CHECK(code == 0);
    CHECK_THAT(out, ContainsSubstring("\"Fp\": 5"));
  }
  SECTION("determinism at the process level, timing stripped") {
    std::string out2;
    const std::string args =
        "verify " + dir + "/kron.json --suite hrr --samples 3 --seed 9 --format json";
    CHECK(run_cli(args, &out) == 0);
    CHECK(run_cli(args, &out2) == 0);
    Json j1 = Json::parse(out);
    Json j2 = Json::parse(out2);
    strip_timing(j1);
    strip_timing(j2);
    CHECK(j1.dump() == j2.dump());
  }
}

TEST_CASE("the binary reports input and engine errors with the right exit codes") {
  std::string out;

  SECTION("missing file") {
    CHECK(run_cli("verify /nonexistent/no.json", &out) == 2);
    CHECK_THAT(out, ContainsSubstring("input error"));
  }
  SECTION("malformed JSON") {
    const std::string bad = write_temp("qha_bad.json", "{\"field\": ");
    CHECK(run_cli("verify " + bad, &out) == 2);
    CHECK_THAT(out, ContainsSubstring("not valid JSON"));
  }
  SECTION("schema violation") {
    const std::string bad = write_temp("qha_bad_schema.json", R"({
      "field": "Q",
      "algebras": {"a": {"vertices": 1, "arrows": [], "relations": []}},
      "modules": {"m": {"algebra": "missing", "dims": [1], "actions": {}}}
    })");
    CHECK(run_cli("verify " + bad, &out) == 2);
    CHECK_THAT(out, ContainsSubstring("unknown algebra 'missing'"));
  }
  SECTION("non-admissible presentation") {
    const std::string bad = write_temp("qha_cycle.json", R"({
      "field": "Q",
      "algebras": {
        "cycle": {
          "vertices": 1,
          "arrows": [{"name": "x", "source": 1, "target": 1}],
          "relations": []
        }
      }
    })");
    CHECK(run_cli("verify " + bad, &out) == 2);
  }
  SECTION("engine unimodularity failure") {
    const std::string loop = write_temp("qha_loop.json", kLoop);
    CHECK(run_cli("verify " + loop + " --suite corollaries", &out) == 3);
    CHECK_THAT(out, ContainsSubstring("[FAIL] context/loop"));
  }
  SECTION("bad flags") {
    CHECK(run_cli("verify", &out) == 2);
    CHECK(run_cli("frobnicate x.json", &out) == 2);
    const std::string dir = QHA_DATA_DIR;
    CHECK(run_cli("verify " + dir + "/a2.json --suite nope", &out) == 2);
    CHECK(run_cli("verify " + dir + "/a2.json --field F_6", &out) == 2);
  }
  SECTION("help exits cleanly") {
    CHECK(run_cli("--help", &out) == 0);
    CHECK_THAT(out, ContainsSubstring("verify"));
  }
}
