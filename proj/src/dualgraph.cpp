#include "logred/dualgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace logred {

const GraphVertex* DualGraph::find(const std::string& id) const {
  for (const auto& v : vertices)
    if (v.id == id) return &v;
  return nullptr;
}

long long DualGraph::degree(const std::string& id) const {
  long long d = 0;
  for (const auto& [a, b] : edges) {
    if (a == id) ++d;
    if (b == id) ++d;
  }
  return d;
}

void require_valid_graph(const DualGraph& g) {
  if (g.vertices.empty())
    fail(ErrorCode::InvalidGraph, "graph has no vertices");
  std::set<std::string> ids;
  for (const auto& v : g.vertices) {
    if (!ids.insert(v.id).second)
      fail(ErrorCode::InvalidGraph, "duplicate vertex id '" + v.id + "'");
    if (v.mult < 1)
      fail(ErrorCode::InvalidGraph, "multiplicity must be >= 1 at '" + v.id + "'");
    if (v.genus < 0)
      fail(ErrorCode::InvalidGraph, "negative genus at '" + v.id + "'");
  }
  for (const auto& [a, b] : g.edges) {
    if (!ids.count(a) || !ids.count(b))
      fail(ErrorCode::InvalidGraph, "edge references unknown vertex");
    if (a == b && !g.allow_loops)
      fail(ErrorCode::InvalidGraph,
           "loop at '" + a + "' but loops are not allowed");
  }

  // connectivity
  std::set<std::string> seen{g.vertices.front().id};
  std::deque<std::string> queue{g.vertices.front().id};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& [a, b] : g.edges) {
      if (a == cur && seen.insert(b).second) queue.push_back(b);
      if (b == cur && seen.insert(a).second) queue.push_back(a);
    }
  }
  if (seen.size() != g.vertices.size())
    fail(ErrorCode::InvalidGraph, "graph is not connected");

  if (g.strict_fibre) {
    for (const auto& v : g.vertices) {
      // self_int is taken on the normalization; a loop contributes its own
      // multiplicity twice
      long long sum = v.mult * v.self_int;
      for (const auto& [a, b] : g.edges) {
        if (a == v.id) sum += g.find(b)->mult;
        if (b == v.id) sum += g.find(a)->mult;
      }
      if (sum != 0)
        fail(ErrorCode::InvalidGraph,
             "fibre consistency fails at '" + v.id + "': mult*self + sum of "
             "neighbor multiplicities = " + std::to_string(sum));
    }
  }
}

namespace {

std::string fresh_id(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace

LogModel strata_model(const DualGraph& g, long long p,
                      bool log_smooth_claimed) {
  require_valid_graph(g);
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");

  std::set<std::string> taken;
  for (const auto& v : g.vertices) taken.insert(v.id);
  std::string generic_id = fresh_id("generic", taken);

  LogModel model;
  model.p = p;
  model.log_smooth_claimed = log_smooth_claimed;
  model.fan.points.push_back({generic_id, 0, 1, std::nullopt});
  model.strata[generic_id] = {generic_id, 0, 2, std::nullopt};

  for (const auto& v : g.vertices) {
    model.fan.points.push_back({v.id, 1, v.mult, std::nullopt});
    long long chi = 2 - 2 * v.genus - g.degree(v.id);
    model.strata[v.id] = {v.id, chi, 1, v.genus};
    model.fan.specializations.emplace_back(generic_id, v.id);
  }

  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& [a, b] = g.edges[i];
    std::string id =
        fresh_id("x" + std::to_string(i) + "_" + a + "_" + b, taken);
    taken.insert(id);
    long long msharp = std::gcd(g.find(a)->mult, g.find(b)->mult);
    model.fan.points.push_back({id, 2, msharp, std::nullopt});
    model.strata[id] = {id, 1, 0, std::nullopt};
    model.fan.specializations.emplace_back(a, id);
    if (b != a) model.fan.specializations.emplace_back(b, id);
  }
  return model;
}

SaitoVerdict saito_check(const DualGraph& g, long long p) {
  require_valid_graph(g);
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");

  SaitoVerdict verdict;
  for (const auto& v : g.vertices) {
    if (v.mult % p != 0) continue;
    std::vector<std::string> reasons;
    if (v.genus != 0) reasons.push_back("component is not rational");
    long long deg = g.degree(v.id);
    if (deg != 2)
      reasons.push_back("meets " + std::to_string(deg) +
                        " edge endpoints instead of 2");
    for (const auto& [a, b] : g.edges) {
      if (a != v.id && b != v.id) continue;
      const std::string& other = (a == v.id) ? b : a;
      if (other == v.id) {
        reasons.push_back("self-crossing on a p-divisible component");
        break;
      }
      if (g.find(other)->mult % p == 0) {
        reasons.push_back("neighbor '" + other +
                          "' has multiplicity divisible by p");
        break;
      }
    }
    if (!reasons.empty()) {
      std::string joined;
      for (const auto& r : reasons)
        joined += (joined.empty() ? "" : "; ") + r;
      verdict.failures.push_back({v.id, false, joined});
      verdict.pass = false;
    }
  }
  return verdict;
}

DualGraph scale(const DualGraph& g, long long m) {
  require_valid_graph(g);
  if (m < 1) fail(ErrorCode::InvalidArg, "scale factor must be >= 1");
  DualGraph out = g;
  for (auto& v : out.vertices) v.mult *= m;
  return out;
}

ContractResult contract(const DualGraph& g, const std::string& vertex_id,
                        long long p) {
  require_valid_graph(g);
  if (!is_prime(p)) fail(ErrorCode::InvalidArg, "p must be prime");
  const GraphVertex* v = g.find(vertex_id);
  if (!v) fail(ErrorCode::InvalidGraph, "unknown vertex '" + vertex_id + "'");
  if (v->genus != 0)
    fail(ErrorCode::NotContractible, "vertex has positive genus");
  if (v->self_int != -1)
    fail(ErrorCode::NotContractible, "self-intersection is not -1");

  std::vector<std::string> neighbors;
  for (const auto& [a, b] : g.edges) {
    if (a == vertex_id && b == vertex_id)
      fail(ErrorCode::NotContractible, "vertex carries a loop");
    if (a == vertex_id) neighbors.push_back(b);
    else if (b == vertex_id) neighbors.push_back(a);
  }
  if (neighbors.size() > 2)
    fail(ErrorCode::NotContractible, "vertex meets more than two components");
  if (neighbors.empty())
    fail(ErrorCode::NotContractible, "isolated vertex cannot be blown down");
  if (neighbors.size() == 2 && neighbors[0] == neighbors[1])
    fail(ErrorCode::NotContractible,
         "vertex meets one component twice; not a simple blow-down");

  ContractResult out;
  out.graph = g;
  auto& verts = out.graph.vertices;
  auto& edges = out.graph.edges;
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [&](const auto& e) {
                               return e.first == vertex_id ||
                                      e.second == vertex_id;
                             }),
              edges.end());
  verts.erase(std::remove_if(verts.begin(), verts.end(),
                             [&](const GraphVertex& w) {
                               return w.id == vertex_id;
                             }),
              verts.end());
  if (verts.empty())
    fail(ErrorCode::NotContractible, "contraction would empty the graph");

  auto bump_self = [&](const std::string& id) {
    for (auto& w : verts)
      if (w.id == id) w.self_int += 1;
  };

  if (neighbors.size() == 2) {
    edges.emplace_back(neighbors[0], neighbors[1]);
    bump_self(neighbors[0]);
    bump_self(neighbors[1]);
    out.smoothness_preserved = true;  // log blow-up
  } else {
    bump_self(neighbors[0]);
    out.smoothness_preserved = (v->mult % p != 0) &&
                               (g.find(neighbors[0])->mult % p != 0);
  }
  require_valid_graph(out.graph);
  return out;
}

DualGraph blow_up_edge(const DualGraph& g, std::size_t edge_index,
                       const std::string& new_id) {
  require_valid_graph(g);
  if (edge_index >= g.edges.size())
    fail(ErrorCode::InvalidArg, "edge index out of range");
  if (g.find(new_id))
    fail(ErrorCode::InvalidArg, "vertex id '" + new_id + "' already taken");

  DualGraph out = g;
  auto [a, b] = out.edges[edge_index];
  out.edges.erase(out.edges.begin() +
                  static_cast<std::ptrdiff_t>(edge_index));
  long long ma = out.find(a)->mult, mb = out.find(b)->mult;
  out.vertices.push_back({new_id, ma + mb, 0, -1});
  out.edges.emplace_back(a, new_id);
  out.edges.emplace_back(new_id, b);
  for (auto& v : out.vertices) {
    if (v.id == a) v.self_int -= 1;
    if (v.id == b) v.self_int -= 1;  // a == b: loop blow-up drops self by 2
  }
  require_valid_graph(out);
  return out;
}

DualGraph blow_up_point(const DualGraph& g, const std::string& vertex_id,
                        const std::string& new_id) {
  require_valid_graph(g);
  const GraphVertex* v = g.find(vertex_id);
  if (!v) fail(ErrorCode::InvalidGraph, "unknown vertex '" + vertex_id + "'");
  if (g.find(new_id))
    fail(ErrorCode::InvalidArg, "vertex id '" + new_id + "' already taken");

  DualGraph out = g;
  out.vertices.push_back({new_id, v->mult, 0, -1});
  out.edges.emplace_back(vertex_id, new_id);
  for (auto& w : out.vertices)
    if (w.id == vertex_id) w.self_int -= 1;
  require_valid_graph(out);
  return out;
}

namespace {

DualGraph chain_with_fork(const std::vector<long long>& chain_mults,
                          std::size_t fork_at, long long fork_mult) {
  DualGraph g;
  g.strict_fibre = true;
  for (std::size_t i = 0; i < chain_mults.size(); ++i)
    g.vertices.push_back({"a" + std::to_string(i + 1), chain_mults[i], 0, -2});
  for (std::size_t i = 0; i + 1 < chain_mults.size(); ++i)
    g.edges.emplace_back("a" + std::to_string(i + 1),
                         "a" + std::to_string(i + 2));
  g.vertices.push_back({"b", fork_mult, 0, -2});
  g.edges.emplace_back("b", "a" + std::to_string(fork_at + 1));
  return g;
}

}  // namespace

DualGraph kodaira(const KodairaType& t) {
  if (t.n < 0) fail(ErrorCode::UnsupportedType, "n must be nonnegative");
  DualGraph g;
  g.strict_fibre = true;

  if (t.symbol == "I") {
    if (t.n == 0) {
      g.vertices.push_back({"v1", 1, 1, 0});
      return g;
    }
    if (t.n == 1) {
      // minimal sncd resolution of the nodal fiber: blow up the node
      DualGraph raw;
      raw.strict_fibre = true;
      raw.allow_loops = true;
      raw.vertices.push_back({"v1", 1, 0, -2});
      raw.edges.emplace_back("v1", "v1");
      DualGraph out = blow_up_edge(raw, 0, "e1");
      out.allow_loops = false;
      return out;
    }
    for (long long i = 1; i <= t.n; ++i)
      g.vertices.push_back({"v" + std::to_string(i), 1, 0, -2});
    for (long long i = 1; i <= t.n; ++i)
      g.edges.emplace_back("v" + std::to_string(i),
                           "v" + std::to_string(i % t.n + 1));
    return g;
  }

  if (t.symbol == "I*") {
    for (long long i = 0; i <= t.n; ++i)
      g.vertices.push_back({"c" + std::to_string(i), 2, 0, -2});
    for (long long i = 0; i < t.n; ++i)
      g.edges.emplace_back("c" + std::to_string(i),
                           "c" + std::to_string(i + 1));
    for (int i = 1; i <= 4; ++i)
      g.vertices.push_back({"t" + std::to_string(i), 1, 0, -2});
    g.edges.emplace_back("t1", "c0");
    g.edges.emplace_back("t2", "c0");
    g.edges.emplace_back("t3", "c" + std::to_string(t.n));
    g.edges.emplace_back("t4", "c" + std::to_string(t.n));
    return g;
  }

  // The additive types below are the minimal sncd resolutions of Kodaira's
  // configurations; each satisfies mult*self + sum of neighbor mults = 0.
  if (t.symbol == "II") {
    g.vertices = {{"c", 1, 0, -6},
                  {"e1", 2, 0, -3},
                  {"e2", 3, 0, -2},
                  {"e3", 6, 0, -1}};
    g.edges = {{"c", "e3"}, {"e1", "e3"}, {"e2", "e3"}};
    return g;
  }
  if (t.symbol == "III") {
    g.vertices = {{"c1", 1, 0, -4},
                  {"c2", 1, 0, -4},
                  {"e1", 2, 0, -2},
                  {"e2", 4, 0, -1}};
    g.edges = {{"c1", "e2"}, {"c2", "e2"}, {"e1", "e2"}};
    return g;
  }
  if (t.symbol == "IV") {
    g.vertices = {{"c1", 1, 0, -3},
                  {"c2", 1, 0, -3},
                  {"c3", 1, 0, -3},
                  {"e", 3, 0, -1}};
    g.edges = {{"c1", "e"}, {"c2", "e"}, {"c3", "e"}};
    return g;
  }

  if (t.symbol == "IV*") {
    g.vertices.push_back({"z", 3, 0, -2});
    for (int i = 1; i <= 3; ++i) {
      g.vertices.push_back({"m" + std::to_string(i), 2, 0, -2});
      g.vertices.push_back({"t" + std::to_string(i), 1, 0, -2});
      g.edges.emplace_back("z", "m" + std::to_string(i));
      g.edges.emplace_back("m" + std::to_string(i), "t" + std::to_string(i));
    }
    return g;
  }
  if (t.symbol == "III*") return chain_with_fork({1, 2, 3, 4, 3, 2, 1}, 3, 2);
  if (t.symbol == "II*") return chain_with_fork({1, 2, 3, 4, 5, 6, 4, 2}, 5, 3);

  fail(ErrorCode::UnsupportedType, "unsupported Kodaira type '" + t.symbol +
                                       "'");
}

std::string to_dot(const DualGraph& g) {
  require_valid_graph(g);
  std::string out = "graph fibre {\n";
  for (const auto& v : g.vertices)
    out += "  \"" + v.id + "\" [label=\"" + std::to_string(v.mult) + ":" +
           std::to_string(v.genus) + ":" + std::to_string(v.self_int) +
           "\"];\n";
  for (const auto& [a, b] : g.edges)
    out += "  \"" + a + "\" -- \"" + b + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace logred
