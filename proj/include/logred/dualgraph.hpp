#pragma once

// Weighted dual graphs of sncd curve fibers: stratum extraction, Saito's
// criterion, multiplicity scaling, the (-1)-curve contraction calculus and
// its inverse blow-ups, and the Kodaira fiber catalog.

#include <string>
#include <vector>

#include "logred/model.hpp"

namespace logred {

struct GraphVertex {
  std::string id;
  long long mult = 1;
  long long genus = 0;
  long long self_int = 0;
};

struct DualGraph {
  std::vector<GraphVertex> vertices;
  // unordered id pairs; parallel edges allowed, loops only with allow_loops
  std::vector<std::pair<std::string, std::string>> edges;
  bool strict_fibre = false;
  bool allow_loops = false;

  const GraphVertex* find(const std::string& id) const;
  // edge endpoints at a vertex; a loop counts twice
  long long degree(const std::string& id) const;
};

struct KodairaType {
  std::string symbol;  // I, I*, II, III, IV, II*, III*, IV*
  long long n = 0;     // for I and I*
};

struct SaitoVertexVerdict {
  std::string vertex_id;
  bool ok = true;
  std::string reason;
};

struct SaitoVerdict {
  bool pass = true;
  std::vector<SaitoVertexVerdict> failures;
};

struct ContractResult {
  DualGraph graph;
  bool smoothness_preserved = true;
};

void require_valid_graph(const DualGraph& g);

// Fan + strata of the sncd fiber: one codim-1 point per vertex, one codim-2
// point per edge (msharp = gcd of the endpoint multiplicities).
LogModel strata_model(const DualGraph& g, long long p,
                      bool log_smooth_claimed = false);

// Every vertex with p | mult must be rational, meet exactly two edge
// endpoints, and have both neighbors prime to p.
SaitoVerdict saito_check(const DualGraph& g, long long p);

// Multiply every multiplicity by m; everything else unchanged.
DualGraph scale(const DualGraph& g, long long m);

// Blow down a (-1)-curve of genus 0 with at most two edge endpoints (two
// distinct neighbors, or one). smoothness_preserved is false only in the
// one-neighbor case when p divides either multiplicity involved.
ContractResult contract(const DualGraph& g, const std::string& vertex_id,
                        long long p);

// Inverse operations, used to generate blown-up fibers.
DualGraph blow_up_edge(const DualGraph& g, std::size_t edge_index,
                       const std::string& new_id);
DualGraph blow_up_point(const DualGraph& g, const std::string& vertex_id,
                        const std::string& new_id);

// Minimal sncd dual graph of the given Kodaira fiber type.
DualGraph kodaira(const KodairaType& t);

// Graphviz export; vertex label is "mult:genus:self".
std::string to_dot(const DualGraph& g);

}  // namespace logred
