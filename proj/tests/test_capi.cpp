#include <doctest.h>

#include <logred/logred.h>

#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

const char* kMultipleFibre = R"({
  "schema": 1,
  "p": 2,
  "log_smooth_claimed": true,
  "points": [
    {"id": "eta", "codim": 0, "msharp": 1, "chi_open": 0, "dim_closed": 2},
    {"id": "E", "codim": 1, "msharp": 2, "chi_open": 0, "dim_closed": 1,
     "genus": 1}
  ],
  "specializations": [["eta", "E"]]
})";

const char* kI2Graph = R"({
  "schema": 1,
  "p": 2,
  "strict_fibre": true,
  "vertices": [
    {"id": "v0", "mult": 1, "genus": 0, "self": -2},
    {"id": "v1", "mult": 1, "genus": 0, "self": -2}
  ],
  "edges": [["v0", "v1"], ["v0", "v1"]]
})";

struct Str {
  char* s = nullptr;
  ~Str() { lr_string_free(s); }
};

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::string(lr_version()).find('.') != std::string::npos);
}

TEST_CASE("detect kind") {
  Str kind;
  REQUIRE(lr_detect_kind(kMultipleFibre, &kind.s) == LR_OK);
  CHECK(std::string(kind.s) == "model");
  Str kind2;
  REQUIRE(lr_detect_kind(kI2Graph, &kind2.s) == LR_OK);
  CHECK(std::string(kind2.s) == "graph");
  Str kind3;
  CHECK(lr_detect_kind("{}", &kind3.s) == LR_ERR_SCHEMA);
  CHECK(std::string(lr_last_error()).size() > 0);
}

TEST_CASE("model lifecycle and queries") {
  lr_model* m = nullptr;
  REQUIRE(lr_model_parse(kMultipleFibre, &m) == LR_OK);

  SUBCASE("render round trip") {
    Str out;
    REQUIRE(lr_model_render(m, &out.s) == LR_OK);
    lr_model* m2 = nullptr;
    REQUIRE(lr_model_parse(out.s, &m2) == LR_OK);
    Str out2;
    REQUIRE(lr_model_render(m2, &out2.s) == LR_OK);
    CHECK(std::string(out.s) == out2.s);
    lr_model_free(m2);
  }
  SUBCASE("classify") {
    Str out;
    REQUIRE(lr_model_classify(m, &out.s) == LR_OK);
    json doc = json::parse(out.s);
    CHECK(doc["p_locus"] == json::array({"E"}));
    CHECK(doc["pprime_locus"] == json::array({"eta"}));
  }
  SUBCASE("zeta") {
    Str out;
    REQUIRE(lr_model_zeta(m, &out.s) == LR_OK);
    json doc = json::parse(out.s);
    CHECK(doc["factors"] == json::array());
    CHECK(doc["string"] == "1");
    CHECK(doc["degree"] == 0);
  }
  SUBCASE("euler and tame point") {
    long long e = -1;
    REQUIRE(lr_model_euler(m, &e) == LR_OK);
    CHECK(e == 0);
    int tame = -1;
    REQUIRE(lr_model_tame_point(m, &tame) == LR_OK);
    CHECK(tame == 0);
  }
  SUBCASE("validate, vanishing, restrictions") {
    Str v;
    REQUIRE(lr_model_validate(m, &v.s) == LR_OK);
    json doc = json::parse(v.s);
    CHECK(doc["valid"] == true);
    Str van;
    REQUIRE(lr_model_check_vanishing(m, &van.s) == LR_OK);
    CHECK(json::parse(van.s)["violations"] == json::array());
    Str res;
    REQUIRE(lr_model_restrictions(m, &res.s) == LR_OK);
    CHECK(json::parse(res.s)["violations"] == json::array());
  }
  SUBCASE("check smooth reports per-point verdicts") {
    Str out;
    REQUIRE(lr_model_check_smooth(m, &out.s) == LR_OK);
    json doc = json::parse(out.s);
    CHECK(doc["verdicts"].is_array());
  }
  lr_model_free(m);
}

TEST_CASE("model parse failure reports the status") {
  lr_model* m = nullptr;
  CHECK(lr_model_parse("{ bad", &m) == LR_ERR_PARSE);
  CHECK(m == nullptr);
  CHECK(lr_model_parse(R"({"schema": 2})", &m) == LR_ERR_SCHEMA);
}

TEST_CASE("graph lifecycle, saito, scale, contract") {
  lr_graph* g = nullptr;
  REQUIRE(lr_graph_parse(kI2Graph, &g) == LR_OK);

  SUBCASE("saito") {
    Str out;
    REQUIRE(lr_graph_saito(g, &out.s) == LR_OK);
    CHECK(json::parse(out.s)["pass"] == true);
  }
  SUBCASE("scale") {
    lr_graph* h = nullptr;
    REQUIRE(lr_graph_scale(g, 3, &h) == LR_OK);
    Str out;
    REQUIRE(lr_graph_render(h, &out.s) == LR_OK);
    json doc = json::parse(out.s);
    CHECK(doc["vertices"][0]["mult"] == 3);
    lr_graph_free(h);
  }
  SUBCASE("strata model bridge") {
    lr_model* m = nullptr;
    REQUIRE(lr_graph_strata_model(g, 0, &m) == LR_OK);
    // both I2 components are rational with two boundary points: chi(U) = 0
    long long e = -1;
    REQUIRE(lr_model_euler(m, &e) == LR_OK);
    CHECK(e == 0);
    lr_model_free(m);
  }
  SUBCASE("contract refuses non-contractible vertices") {
    lr_graph* h = nullptr;
    int preserved = -1;
    CHECK(lr_graph_contract(g, "v0", &h, &preserved) ==
          LR_ERR_NOT_CONTRACTIBLE);
  }
  SUBCASE("to_dot") {
    Str out;
    REQUIRE(lr_graph_to_dot(g, &out.s) == LR_OK);
    CHECK(std::string(out.s).find("1:0:-2") != std::string::npos);
  }
  lr_graph_free(g);
}

TEST_CASE("contract_all reaches a fixpoint") {
  // A(-2) E(-1) B(-2) chain: E contracts, then nothing else does
  const char* chain = R"({
    "schema": 1, "p": 2,
    "vertices": [
      {"id": "A", "mult": 1, "genus": 0, "self": -2},
      {"id": "E", "mult": 1, "genus": 0, "self": -1},
      {"id": "B", "mult": 1, "genus": 0, "self": -2}
    ],
    "edges": [["A", "E"], ["E", "B"]]
  })";
  lr_graph* g = nullptr;
  REQUIRE(lr_graph_parse(chain, &g) == LR_OK);
  lr_graph* out = nullptr;
  Str report;
  REQUIRE(lr_graph_contract_all(g, &out, &report.s) == LR_OK);
  Str rendered;
  REQUIRE(lr_graph_render(out, &rendered.s) == LR_OK);
  json doc = json::parse(rendered.s);
  // A(-1) and B(-1) remain, then both become contractible in turn until a
  // single vertex is left
  CHECK(doc["vertices"].size() <= 2);
  json rep = json::parse(report.s);
  CHECK(rep["contracted"].is_array());
  CHECK(rep["contracted"].size() >= 1);
  lr_graph_free(out);
  lr_graph_free(g);
}

TEST_CASE("kodaira constructor") {
  lr_graph* g = nullptr;
  REQUIRE(lr_kodaira("IV*", 0, 3, &g) == LR_OK);
  Str out;
  REQUIRE(lr_graph_render(g, &out.s) == LR_OK);
  json doc = json::parse(out.s);
  CHECK(doc["vertices"].size() == 7);
  CHECK(doc["p"] == 3);
  lr_graph_free(g);
  CHECK(lr_kodaira("bogus", 0, 2, &g) == LR_ERR_UNSUPPORTED_TYPE);
}

TEST_CASE("genus1 decision through the C API") {
  Str out;
  REQUIRE(lr_genus1_decide(
              R"({"p":2,"period":2,"h1_tame":true,"jacobian":"good",
                  "coh_flat":true})",
              &out.s) == LR_OK);
  json doc = json::parse(out.s);
  CHECK(doc["log_good_reduction"] == true);
  CHECK(doc["reason"].is_string());

  Str out2;
  CHECK(lr_genus1_decide(
            R"({"p":2,"period":2,"h1_tame":true,"jacobian":"good"})",
            &out2.s) == LR_ERR_MISSING_DATA);
}
