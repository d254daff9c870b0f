#include <doctest.h>

#include <logred/dualgraph.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace logred;

namespace {

DualGraph chain_1_p_1(long long p) {
  DualGraph g;
  g.vertices = {{"a", 1, 0, -static_cast<long long>(p)},
                {"e", p, 0, -2},
                {"b", 1, 0, -static_cast<long long>(p)}};
  g.edges = {{"a", "e"}, {"e", "b"}};
  g.strict_fibre = false;
  return g;
}

long long euler_sum(const DualGraph& g, long long p) {
  LogModel m = strata_model(g, p);
  long long total = 0;
  for (const auto& pt : m.fan.points)
    if (pt.codim >= 1) total += m.strata.at(pt.id).chi_open;
  return total;
}

std::multiset<std::pair<std::string, std::string>> edge_set(
    const DualGraph& g) {
  std::multiset<std::pair<std::string, std::string>> s;
  for (auto [a, b] : g.edges) {
    if (b < a) std::swap(a, b);
    s.insert({a, b});
  }
  return s;
}

bool graphs_equal(const DualGraph& g, const DualGraph& h) {
  if (edge_set(g) != edge_set(h)) return false;
  std::map<std::string, GraphVertex> gv, hv;
  for (const auto& v : g.vertices) gv[v.id] = v;
  for (const auto& v : h.vertices) hv[v.id] = v;
  if (gv.size() != hv.size()) return false;
  for (const auto& [id, v] : gv) {
    auto it = hv.find(id);
    if (it == hv.end()) return false;
    if (v.mult != it->second.mult || v.genus != it->second.genus ||
        v.self_int != it->second.self_int)
      return false;
  }
  return true;
}

std::vector<long long> sorted_mults(const DualGraph& g) {
  std::vector<long long> m;
  for (const auto& v : g.vertices) m.push_back(v.mult);
  std::sort(m.begin(), m.end());
  return m;
}

void check_fibre_consistency(const DualGraph& g) {
  for (const auto& v : g.vertices) {
    long long total = v.mult * v.self_int;
    for (const auto& [a, b] : g.edges) {
      if (a == v.id) total += g.find(b)->mult;
      if (b == v.id) total += g.find(a)->mult;
    }
    CHECK(total == 0);
  }
}

}  // namespace

TEST_CASE("strata_model on the documented examples") {
  SUBCASE("I2 cycle") {
    LogModel m = strata_model(kodaira({"I", 2}), 2);
    std::vector<long long> vertex_chis, edge_chis;
    for (const auto& pt : m.fan.points) {
      if (pt.codim == 1) vertex_chis.push_back(m.strata.at(pt.id).chi_open);
      if (pt.codim == 2) edge_chis.push_back(m.strata.at(pt.id).chi_open);
    }
    CHECK(vertex_chis == std::vector<long long>{0, 0});
    CHECK(edge_chis == std::vector<long long>{1, 1});
    CHECK(euler_sum(kodaira({"I", 2}), 2) == 2);
  }
  SUBCASE("smooth elliptic fibre") {
    DualGraph g;
    g.vertices = {{"E", 1, 1, 0}};
    LogModel m = strata_model(g, 2);
    CHECK(m.strata.at("E").chi_open == 0);
    CHECK(m.strata.at("E").dim_closed == 1);
    CHECK(m.strata.at("E").genus == 1);
  }
  SUBCASE("I0*: central chi -2, tails chi 1") {
    DualGraph g = kodaira({"I*", 0});
    LogModel m = strata_model(g, 2);
    std::multiset<long long> chis;
    for (const auto& pt : m.fan.points)
      if (pt.codim == 1) chis.insert(m.strata.at(pt.id).chi_open);
    CHECK(chis == std::multiset<long long>{-2, 1, 1, 1, 1});
    CHECK(euler_sum(g, 2) == 6);
  }
  SUBCASE("edge strata carry the gcd of the endpoint multiplicities") {
    DualGraph g = chain_1_p_1(6);  // not prime, just a multiplicity
    LogModel m = strata_model(g, 5);
    int edge_points = 0;
    for (const auto& pt : m.fan.points)
      if (pt.codim == 2) {
        ++edge_points;
        CHECK(pt.msharp == 1);  // gcd(1, 6)
      }
    CHECK(edge_points == 2);
  }
}

TEST_CASE("saito_check on the documented examples") {
  SUBCASE("I2 at p = 2 passes vacuously") {
    CHECK(saito_check(kodaira({"I", 2}), 2).pass);
  }
  SUBCASE("I0* at p = 2 fails at the central vertex") {
    auto v = saito_check(kodaira({"I*", 0}), 2);
    CHECK(!v.pass);
    REQUIRE(v.failures.size() == 1);
    CHECK(v.failures[0].vertex_id == "c0");
  }
  SUBCASE("chain 1-p-1 passes") {
    for (long long p : {2, 3, 5}) CHECK(saito_check(chain_1_p_1(p), p).pass);
  }
  SUBCASE("p-divisible vertex with a p-divisible neighbor fails") {
    DualGraph g = chain_1_p_1(2);
    g.vertices[0].mult = 2;
    auto v = saito_check(g, 2);
    CHECK(!v.pass);
  }
}

TEST_CASE("scale on the documented examples") {
  SUBCASE("scale(I2, 3)") {
    DualGraph g = scale(kodaira({"I", 2}), 3);
    CHECK(sorted_mults(g) == std::vector<long long>{3, 3});
    CHECK(g.edges.size() == 2);
  }
  SUBCASE("scale by 1 is the identity") {
    DualGraph g = kodaira({"IV*", 0});
    CHECK(graphs_equal(scale(g, 1), g));
  }
  SUBCASE("scaling a smooth elliptic vertex gives a multiple fibre") {
    DualGraph g;
    g.vertices = {{"E", 1, 1, 0}};
    for (long long p : {2, 3, 5}) {
      DualGraph h = scale(g, p);
      CHECK(h.vertices[0].mult == p);
      LogModel m = strata_model(h, p, true);
      CHECK(!tame_point_exists(m));
      CHECK(tame_euler(m) == 0);
    }
  }
  SUBCASE("scale is multiplicative and scales the gcd") {
    DualGraph g = kodaira({"III", 0});
    CHECK(graphs_equal(scale(scale(g, 2), 3), scale(g, 6)));
    auto gcd_of = [](const DualGraph& gr) {
      long long acc = 0;
      for (const auto& v : gr.vertices) acc = std::gcd(acc, v.mult);
      return acc;
    };
    CHECK(gcd_of(scale(g, 5)) == 5 * gcd_of(g));
  }
  SUBCASE("saito_check is stable under prime-to-p scaling") {
    for (long long p : {2, 3}) {
      DualGraph g = chain_1_p_1(p);
      REQUIRE(saito_check(g, p).pass);
      for (long long m : {3LL, 5LL, 7LL})
        if (m % p != 0) CHECK(saito_check(scale(g, m), p).pass == true);
    }
  }
}

TEST_CASE("contract on the documented examples") {
  SUBCASE("chain A(-2) E(-1) B(-2)") {
    DualGraph g;
    g.vertices = {{"A", 1, 0, -2}, {"E", 1, 0, -1}, {"B", 1, 0, -2}};
    g.edges = {{"A", "E"}, {"E", "B"}};
    auto r = contract(g, "E", 2);
    CHECK(r.smoothness_preserved);
    CHECK(r.graph.vertices.size() == 2);
    CHECK(r.graph.find("A")->self_int == -1);
    CHECK(r.graph.find("B")->self_int == -1);
    CHECK(edge_set(r.graph) ==
          std::multiset<std::pair<std::string, std::string>>{{"A", "B"}});
  }
  SUBCASE("prime-to-p tail contraction preserves smoothness") {
    DualGraph g;
    g.vertices = {{"A", 1, 1, -1}, {"E", 1, 0, -1}};
    g.edges = {{"A", "E"}};
    for (long long p : {2, 3, 5}) {
      auto r = contract(g, "E", p);
      CHECK(r.smoothness_preserved);
      CHECK(r.graph.vertices.size() == 1);
      CHECK(r.graph.find("A")->self_int == 0);
    }
  }
  SUBCASE("p-divisible tail contraction loses smoothness") {
    for (long long p : {2, 3, 5}) {
      DualGraph g;
      g.vertices = {{"A", p, 1, -1}, {"E", p, 0, -1}};
      g.edges = {{"A", "E"}};
      auto r = contract(g, "E", p);
      CHECK(!r.smoothness_preserved);
    }
  }
  SUBCASE("refusals") {
    DualGraph g = kodaira({"I*", 0});
    // central vertex has degree 4 and self -2
    CHECK_THROWS_AS((void)contract(g, "c0", 2), Error);
    CHECK_THROWS_AS((void)contract(g, "missing", 2), Error);
    // genus > 0 refuses
    DualGraph h;
    h.vertices = {{"A", 1, 1, -1}, {"E", 1, 1, -1}};
    h.edges = {{"A", "E"}};
    CHECK_THROWS_AS((void)contract(h, "E", 2), Error);
  }
}

TEST_CASE("kodaira catalog on the documented examples") {
  SUBCASE("I(2)") {
    DualGraph g = kodaira({"I", 2});
    CHECK(g.vertices.size() == 2);
    CHECK(sorted_mults(g) == std::vector<long long>{1, 1});
    CHECK(g.edges.size() == 2);
  }
  SUBCASE("I*(0)") {
    DualGraph g = kodaira({"I*", 0});
    CHECK(g.vertices.size() == 5);
    CHECK(sorted_mults(g) == std::vector<long long>{1, 1, 1, 1, 2});
  }
  SUBCASE("IV*") {
    DualGraph g = kodaira({"IV*", 0});
    CHECK(g.vertices.size() == 7);
    CHECK(sorted_mults(g) == std::vector<long long>{1, 1, 1, 2, 2, 2, 3});
  }
  SUBCASE("unsupported type") {
    CHECK_THROWS_AS((void)kodaira({"V", 0}), Error);
  }
  SUBCASE("all catalog graphs are valid and fibre-consistent") {
    std::vector<KodairaType> all;
    for (long long n = 0; n <= 8; ++n) {
      all.push_back({"I", n});
      all.push_back({"I*", n});
    }
    for (const char* s : {"II", "III", "IV", "IV*", "III*", "II*"})
      all.push_back({s, 0});
    for (const auto& t : all) {
      DualGraph g = kodaira(t);
      require_valid_graph(g);
      if (t.symbol == "I" && t.n == 0) continue;  // no intersections
      check_fibre_consistency(g);
    }
  }
}

TEST_CASE("Euler-number catalog via the strata-sum oracle") {
  // I(1) is excluded: its minimal sncd model is a blow-up of the nodal
  // cubic, and blowing up raises the Euler number of the fibre by one.
  for (long long n = 2; n <= 10; ++n)
    CHECK(euler_sum(kodaira({"I", n}), 7) == n);
  CHECK(euler_sum(kodaira({"I", 0}), 7) == 0);
  CHECK(euler_sum(kodaira({"I", 1}), 7) == 2);
  for (long long n = 0; n <= 10; ++n)
    CHECK(euler_sum(kodaira({"I*", n}), 7) == n + 6);
  CHECK(euler_sum(kodaira({"IV*", 0}), 7) == 8);
  CHECK(euler_sum(kodaira({"III*", 0}), 7) == 9);
  CHECK(euler_sum(kodaira({"II*", 0}), 7) == 10);
  // resolved forms of the non-sncd types: Euler number of the blown-up
  // surface fibre (classical value plus the number of blow-ups)
  CHECK(euler_sum(kodaira({"II", 0}), 7) == 5);
  CHECK(euler_sum(kodaira({"III", 0}), 7) == 5);
  CHECK(euler_sum(kodaira({"IV", 0}), 7) == 5);
}

TEST_CASE("blow-up / contract round trips") {
  std::mt19937_64 rng(90210);
  std::vector<KodairaType> seeds;
  for (long long n = 2; n <= 5; ++n) seeds.push_back({"I", n});
  for (long long n = 0; n <= 3; ++n) seeds.push_back({"I*", n});
  for (const char* s : {"II", "III", "IV", "IV*", "III*", "II*"})
    seeds.push_back({s, 0});

  int preserved_contracts = 0;
  for (int trial = 0; trial < 90; ++trial) {
    const auto& seed = seeds[trial % seeds.size()];
    long long p = std::vector<long long>{2, 3, 5}[trial % 3];
    DualGraph g = kodaira(seed);
    ZetaFunction before = tame_zeta(strata_model(g, p));

    // random blow-up
    std::string fresh = "bl" + std::to_string(trial);
    DualGraph blown;
    if (rng() % 2 == 0 && !g.edges.empty()) {
      std::size_t e = rng() % g.edges.size();
      blown = blow_up_edge(g, e, fresh);
    } else {
      std::size_t vi = rng() % g.vertices.size();
      blown = blow_up_point(g, g.vertices[vi].id, fresh);
    }
    check_fibre_consistency(blown);
    require_valid_graph(blown);

    // blow-up then contract is the identity
    auto r = contract(blown, fresh, p);
    check_fibre_consistency(r.graph);
    CHECK(graphs_equal(r.graph, g));

    // zeta invariance whenever smoothness is preserved
    if (r.smoothness_preserved) {
      ++preserved_contracts;
      CHECK(tame_zeta(strata_model(blown, p)) == before);
      CHECK(tame_zeta(strata_model(r.graph, p)) == before);
    }
  }
  CHECK(preserved_contracts >= 50);
}

TEST_CASE("require_valid_graph rejections") {
  SUBCASE("disconnected") {
    DualGraph g;
    g.vertices = {{"a", 1, 0, 0}, {"b", 1, 0, 0}};
    CHECK_THROWS_AS(require_valid_graph(g), Error);
  }
  SUBCASE("nonpositive multiplicity") {
    DualGraph g;
    g.vertices = {{"a", 0, 0, 0}};
    CHECK_THROWS_AS(require_valid_graph(g), Error);
  }
  SUBCASE("loop without the flag") {
    DualGraph g;
    g.vertices = {{"a", 1, 0, -2}};
    g.edges = {{"a", "a"}};
    CHECK_THROWS_AS(require_valid_graph(g), Error);
  }
  SUBCASE("strict fibre consistency") {
    DualGraph g;
    g.vertices = {{"a", 1, 0, -1}, {"b", 1, 0, -1}};
    g.edges = {{"a", "b"}};
    g.strict_fibre = true;
    require_valid_graph(g);  // -1 + 1 = 0 at both
    g.vertices[0].self_int = -2;
    CHECK_THROWS_AS(require_valid_graph(g), Error);
  }
}

TEST_CASE("to_dot labels vertices as mult:genus:self") {
  DualGraph g = chain_1_p_1(3);
  std::string dot = to_dot(g);
  CHECK(dot.find("3:0:-2") != std::string::npos);
  CHECK(dot.find("graph") != std::string::npos);
}
