#include <doctest.h>

#include <logred/io.hpp>

using namespace logred;

namespace {

const char* kGoodReductionModel = R"({
  "schema": 1,
  "p": 3,
  "log_smooth_claimed": true,
  "points": [
    {"id": "eta", "codim": 0, "msharp": 1, "chi_open": 0, "dim_closed": 2},
    {"id": "E", "codim": 1, "msharp": 1, "chi_open": 0, "dim_closed": 1,
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

ErrorCode code_of(const std::string& bytes, bool model) {
  try {
    if (model)
      (void)parse_model(bytes);
    else
      (void)parse_graph(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;  // "no error", never expected in these tests
}

}  // namespace

TEST_CASE("parse_model on a minimal good-reduction file") {
  LogModel m = parse_model(kGoodReductionModel);
  CHECK(m.fan.points.size() == 2);
  CHECK(m.p == 3);
  CHECK(m.log_smooth_claimed);
  CHECK(m.strata.at("E").genus == 1);
  CHECK(tame_point_exists(m));
}

TEST_CASE("parse_graph on the I2 file") {
  GraphInput g = parse_graph(kI2Graph);
  CHECK(g.graph.vertices.size() == 2);
  CHECK(g.graph.edges.size() == 2);
  CHECK(g.graph.strict_fibre);
  CHECK(g.p == 2);
}

TEST_CASE("round trip: render then parse is the identity") {
  SUBCASE("model") {
    LogModel m = parse_model(kGoodReductionModel);
    LogModel m2 = parse_model(render_model(m));
    CHECK(render_model(m2) == render_model(m));
  }
  SUBCASE("graph") {
    GraphInput g = parse_graph(kI2Graph);
    GraphInput g2 = parse_graph(render_graph(g));
    CHECK(render_graph(g2) == render_graph(g));
  }
  SUBCASE("model with a chart") {
    std::string bytes = R"({
      "schema": 1, "p": 2, "points": [
        {"id": "eta", "codim": 0, "msharp": 1, "chi_open": 0, "dim_closed": 2},
        {"id": "E", "codim": 1, "msharp": 2, "chi_open": 0, "dim_closed": 1,
         "chart": {"gens": [[1]], "v1": [2], "face": [], "etale": true}}
      ],
      "specializations": [["eta", "E"]]
    })";
    LogModel m = parse_model(bytes);
    REQUIRE(m.fan.points[1].chart.has_value());
    CHECK(m.fan.points[1].chart->etale_marked);
    LogModel m2 = parse_model(render_model(m));
    CHECK(render_model(m2) == render_model(m));
  }
}

TEST_CASE("parse errors carry the right error codes") {
  SUBCASE("malformed JSON") {
    CHECK(code_of("{ not json", true) == ErrorCode::ParseError);
  }
  SUBCASE("missing schema field") {
    CHECK(code_of(R"({"p": 2, "points": [], "specializations": []})", true) ==
          ErrorCode::SchemaError);
  }
  SUBCASE("wrong schema version") {
    CHECK(code_of(
              R"({"schema": 99, "p": 2, "points": [], "specializations": []})",
              true) == ErrorCode::SchemaError);
  }
  SUBCASE("floating-point literal rejected") {
    std::string bytes = kGoodReductionModel;
    auto pos = bytes.find("\"p\": 3");
    bytes.replace(pos, 6, "\"p\": 3.0");
    CHECK(code_of(bytes, true) == ErrorCode::SchemaError);
  }
  SUBCASE("msharp = 0 is a semantic error") {
    std::string bytes = kGoodReductionModel;
    auto pos = bytes.find("\"msharp\": 1,");
    bytes.replace(pos, 12, "\"msharp\": 0,");
    CHECK(code_of(bytes, true) == ErrorCode::SemanticError);
  }
  SUBCASE("disconnected graph is a semantic error") {
    std::string bytes = R"({
      "schema": 1, "p": 2,
      "vertices": [{"id": "a", "mult": 1, "genus": 0, "self": 0},
                   {"id": "b", "mult": 1, "genus": 0, "self": 0}],
      "edges": []
    })";
    CHECK(code_of(bytes, false) == ErrorCode::SemanticError);
  }
  SUBCASE("non-prime p is a semantic error") {
    std::string bytes = kI2Graph;
    auto pos = bytes.find("\"p\": 2");
    bytes.replace(pos, 6, "\"p\": 4");
    CHECK(code_of(bytes, false) == ErrorCode::SemanticError);
  }
}

TEST_CASE("detect_file_kind") {
  CHECK(detect_file_kind(kGoodReductionModel) == "model");
  CHECK(detect_file_kind(kI2Graph) == "graph");
  CHECK_THROWS_AS((void)detect_file_kind(R"({"schema": 1})"), Error);
  CHECK_THROWS_AS((void)detect_file_kind(
                      R"({"points": [], "vertices": []})"),
                  Error);
}

TEST_CASE("parse_genus1_params") {
  Genus1Input in = parse_genus1_params(
      R"({"p": 2, "period": 2, "h1_tame": true, "jacobian": "good",
          "coh_flat": true})");
  CHECK(in.p == 2);
  CHECK(in.period == 2);
  CHECK(in.h1_tame);
  CHECK(in.jacobian_reduction == JacobianReduction::Good);
  CHECK(in.coh_flat == true);
  CHECK(!in.mu.has_value());

  CHECK_THROWS_AS((void)parse_genus1_params(
                      R"({"p": 2, "period": 1, "jacobian": "weird"})"),
                  Error);
}
