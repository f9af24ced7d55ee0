// Problem-file schema: parsing, validation diagnostics, canonical emission
// and the parse -> emit -> parse round trip.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "qha/problem.hpp"

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

// A tiny valid file that tests below perturb.
const char* kBase = R"({
  "field": "Q",
  "algebras": {
    "a3rel": {
      "vertices": 3,
      "arrows": [
        {"name": "a", "source": 1, "target": 2},
        {"name": "b", "source": 2, "target": 3}
      ],
      "relations": [[{"coeff": "1", "path": ["a", "b"]}]]
    }
  }
})";

}  // namespace

TEST_CASE("bundled fixtures parse to the expected object graphs") {
  const std::string dir = QHA_DATA_DIR;

  auto a2 = parse_q(slurp(dir + "/a2.json"));
  CHECK(a2.field == FieldSpec::make_rationals());
  CHECK(a2.algebras.size() == 1);
  CHECK(a2.algebras.count("a2") == 1);
  CHECK(a2.modules.size() == 3);
  CHECK(a2.modules.count("s1") == 1);  // the two simples
  CHECK(a2.modules.count("s2") == 1);
  CHECK(a2.modules.at("s1").rep->dims == std::vector<std::size_t>{1, 0});
  CHECK(a2.bimodules.size() == 1);
  CHECK(a2.bimodules.at("reg").handle.comp_dim(1, 1) == 1);
  CHECK(a2.bimodules.at("reg").handle.comp_dim(2, 1) == 0);
  CHECK(a2.endos.size() == 3);
  CHECK(a2.complexes.size() == 1);
  CHECK_FALSE(a2.complexes.at("px").bimodule);
  CHECK(a2.checks.size() == 6);
  CHECK(a2.checks.back().suite == "corollaries");

  CHECK(parse_q(slurp(dir + "/k.json")).algebras.count("k") == 1);
  CHECK(parse_q(slurp(dir + "/a3rel.json")).algebras.count("a3rel") == 1);
  CHECK(parse_q(slurp(dir + "/kron.json")).algebras.at("kron")->num_arrows() == 2);
}

TEST_CASE("parse, canonical emit and re-parse is the identity") {
  const std::string dir = QHA_DATA_DIR;
  for (const char* name : {"/k.json", "/a2.json", "/a3rel.json", "/kron.json"}) {
    INFO("fixture " << name);
    auto p1 = parse_q(slurp(dir + name));
    const std::string text1 = emit_problem_text(p1);
    auto p2 = parse_q(text1);
    CHECK(problem_equal(p1, p2));
    CHECK(emit_problem_text(p2) == text1);
  }
}

TEST_CASE("identity id strings round-trip and reject bad combinations") {
  const Level levels[] = {Level::module_level, Level::bimodule_level, Level::complex_level,
                          Level::bimodule_complex_level};
  const Version versions[] = {Version::cohomological, Version::homological,
                              Version::hochschild_cohomological, Version::hochschild_homological};
  for (Level l : levels)
    for (Version v : versions)
      for (Flavor f : {Flavor::hrr, Flavor::lefschetz}) {
        IdentityId id{l, v, f};
        const bool hochschild =
            v == Version::hochschild_cohomological || v == Version::hochschild_homological;
        const bool valid = !(hochschild && (l == Level::bimodule_level ||
                                            l == Level::bimodule_complex_level));
        if (valid) {
          CHECK(identity_from_string(to_string(id)) == id);
        } else {
          CHECK_THROWS_AS(identity_from_string(to_string(id)), ValidationError);
        }
      }
  CHECK_THROWS_WITH(identity_from_string("module/cohomological"),
                    ContainsSubstring("level/version/flavor"));
  CHECK_THROWS_WITH(identity_from_string("modul/cohomological/HRR"),
                    ContainsSubstring("unknown level 'modul'"));
  CHECK_THROWS_WITH(identity_from_string("module/euler/HRR"),
                    ContainsSubstring("unknown version 'euler'"));
  CHECK_THROWS_WITH(identity_from_string("module/cohomological/hrr"),
                    ContainsSubstring("unknown flavor 'hrr'"));
}

TEST_CASE("field specs parse from files and flags") {
  CHECK(problem_field_spec(Json::parse(R"({"field": "Q"})")) == FieldSpec::make_rationals());
  CHECK(problem_field_spec(Json::parse(R"({"field": {"Fp": 5}})")) == FieldSpec::make_prime(5));
  CHECK_THROWS_WITH(problem_field_spec(Json::parse(R"({"field": "R"})")),
                    ContainsSubstring("/field"));
  CHECK_THROWS_WITH(problem_field_spec(Json::parse(R"({"field": {"Fp": 4}})")),
                    ContainsSubstring("/field/Fp"));
  CHECK(parse_field_string("Q") == FieldSpec::make_rationals());
  CHECK(parse_field_string("F_7") == FieldSpec::make_prime(7));
  CHECK_THROWS_AS(parse_field_string("F7"), ValidationError);
  CHECK_THROWS_AS(parse_field_string("F_4"), ValidationError);
}

TEST_CASE("schema violations carry the JSON path") {
  Json base = Json::parse(kBase);

  SECTION("unknown top-level key") {
    Json j = base;
    j["algebra"] = Json::object();
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("unknown key 'algebra'"));
  }
  SECTION("missing field key") {
    Json j = base;
    j.erase("field");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("missing key 'field'"));
  }
  SECTION("arrow endpoint out of range") {
    Json j = base;
    j["algebras"]["a3rel"]["arrows"][0]["target"] = 9;
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/algebras/a3rel"));
  }
  SECTION("relation path uses an unknown arrow") {
    Json j = base;
    j["algebras"]["a3rel"]["relations"][0][0]["path"][1] = "c";
    CHECK_THROWS_WITH(
        parse_problem<Rational>(j, FieldSpec::make_rationals()),
        ContainsSubstring("/algebras/a3rel/relations[0][0]/path[1]: unknown arrow 'c'"));
  }
  SECTION("malformed rational literal") {
    Json j = base;
    j["algebras"]["a3rel"]["relations"][0][0]["coeff"] = "1/0";
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/algebras/a3rel/relations[0][0]/coeff"));
  }
  SECTION("non-admissible presentations keep their error type") {
    Json j = Json::parse(R"({
      "field": "Q",
      "algebras": {
        "cycle": {
          "vertices": 2,
          "arrows": [
            {"name": "u", "source": 1, "target": 2},
            {"name": "v", "source": 2, "target": 1}
          ],
          "relations": []
        }
      }
    })");
    CHECK_THROWS_AS(parse_problem<Rational>(j, FieldSpec::make_rationals()), NonAdmissibleError);
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/algebras/cycle"));
  }
}

TEST_CASE("module and endomorphism validation names the offender") {
  Json base = Json::parse(kBase);

  SECTION("a module that violates a defining relation") {
    Json j = base;
    j["modules"]["m"] = Json::parse(R"({
      "algebra": "a3rel",
      "dims": [1, 1, 1],
      "actions": {"a": [["1"]], "b": [["1"]]}
    })");
    CHECK_THROWS_WITH(
        parse_problem<Rational>(j, FieldSpec::make_rationals()),
        ContainsSubstring("/modules/m: relation #1 of algebra 'a3rel' does not act by zero"));
  }
  SECTION("a valid module with an action matrix of the wrong shape") {
    Json j = base;
    j["modules"]["m"] = Json::parse(R"({
      "algebra": "a3rel",
      "dims": [2, 1, 0],
      "actions": {"a": [["1"]], "b": []}
    })");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/modules/m/actions/a: expected 2 row(s), got 1"));
  }
  SECTION("missing and unknown arrows in actions") {
    Json j = base;
    j["modules"]["m"] =
        Json::parse(R"({"algebra": "a3rel", "dims": [0, 0, 1], "actions": {"a": []}})");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/modules/m/actions: missing arrow 'b'"));
    j["modules"]["m"]["actions"] = Json::parse(R"({"a": [], "b": [], "c": []})");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/modules/m/actions: unknown arrow 'c'"));
  }
  SECTION("a dangling algebra reference") {
    Json j = base;
    j["modules"]["m"] =
        Json::parse(R"({"algebra": "nope", "dims": [], "actions": {}})");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/modules/m/algebra: unknown algebra 'nope'"));
  }
  SECTION("a non-intertwining endomorphism names the arrow") {
    Json j = base;
    j["modules"]["m"] = Json::parse(R"({
      "algebra": "a3rel",
      "dims": [1, 1, 0],
      "actions": {"a": [["1"]], "b": [[]]}
    })");
    j["endos"]["f"] = Json::parse(R"({"on": "m", "blocks": [[["1"]], [["2"]], []]})");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/endos/f"));
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("does not intertwine arrow 'a'"));
  }
}

TEST_CASE("complex and check validation") {
  const std::string dir = QHA_DATA_DIR;
  Json a2 = Json::parse(slurp(dir + "/a2.json"));

  SECTION("differential count mismatch") {
    Json j = a2;
    j["complexes"]["px"]["differentials"] = Json::array();
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/complexes/px/differentials: expected 1"));
  }
  SECTION("a differential that is not a morphism") {
    Json j = a2;
    // p1 -> s2 with the nonzero block at vertex 2 fails to intertwine 'a'.
    j["complexes"]["px"]["components"][1] = "s2";
    j["complexes"]["px"]["differentials"][0] = Json::parse(R"([[], [["1"]]])");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/complexes/px"));
  }
  SECTION("mixed module and bimodule components") {
    Json j = a2;
    j["complexes"]["px"]["components"][1] = "reg";
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("mixes module and bimodule components"));
  }
  SECTION("checks: wrong operand counts and kinds") {
    Json j = a2;
    j["checks"][0]["operands"] = Json::parse(R"(["s1"])");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("takes 2 operand(s), got 1"));
    j = a2;
    j["checks"][0]["operands"] = Json::parse(R"(["s1", "nope"])");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/checks[0]/operands[1]: unknown module 'nope'"));
    j = a2;
    j["checks"][2]["operands"] = Json::parse(R"(["px"])");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("unknown bimodule 'px'"));
  }
  SECTION("checks: endomorphism must sit on the matching operand") {
    Json j = a2;
    j["checks"][1]["endos"] = Json::parse(R"(["fs1", "fs1"])");
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("is on 's1', expected the operand 'p1'"));
  }
  SECTION("checks: unknown suite and unknown identity") {
    Json j = a2;
    j["checks"][5]["suite"] = "smoke";
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/checks[5]/suite: unknown suite 'smoke'"));
    j = a2;
    j["checks"][0]["identity"] = "bimodule/hochschild-cohomological/HRR";
    CHECK_THROWS_WITH(parse_problem<Rational>(j, FieldSpec::make_rationals()),
                      ContainsSubstring("/checks[0]/identity"));
  }
}

TEST_CASE("prime field problem files parse and round-trip") {
  Json j = Json::parse(R"({
    "field": {"Fp": 5},
    "algebras": {
      "a2": {
        "vertices": 2,
        "arrows": [{"name": "a", "source": 1, "target": 2}],
        "relations": []
      }
    },
    "modules": {
      "m": {"algebra": "a2", "dims": [1, 1], "actions": {"a": [["2/3"]]}}
    }
  })");
  auto p = parse_problem<PrimeField>(j, problem_field_spec(j));
  CHECK(p.field == FieldSpec::make_prime(5));
  // 2/3 = 2 * 3^{-1} = 2 * 2 = 4 in F_5.
  CHECK(p.modules.at("m").rep->act[0](0, 0) == PrimeField(4, 5));
  auto p2 = parse_problem<PrimeField>(emit_problem(p), p.field);
  CHECK(problem_equal(p, p2));
  CHECK(emit_problem_text(p) == emit_problem_text(p2));
}

TEST_CASE("rationals reject prime field specs and vice versa") {
  Json j = Json::parse(kBase);
  CHECK_THROWS_AS(parse_problem<Rational>(j, FieldSpec::make_prime(5)), FieldError);
}

TEST_CASE("JSON syntax errors carry a position") {
  CHECK_THROWS_WITH(parse_problem_text<Rational>("{\"field\": ", FieldSpec::make_rationals()),
                    ContainsSubstring("not valid JSON"));
}
