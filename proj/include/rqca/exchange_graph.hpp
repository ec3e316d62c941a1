#pragma once

#include "rqca/seeds.hpp"

#include <map>
#include <string>
#include <vector>

namespace rqca {

struct CanonicalForm {
  std::string key;
  std::vector<std::string> rendered;  // frame values in seed position order
};

std::string canonical_key(const Seed& seed);
CanonicalForm canonical_form(const Seed& seed);

struct GraphNode {
  Seed seed;
  std::string key;
  std::vector<std::string> rendered;
  int depth = 0;
  std::vector<int> word;  // mutation word from the root, 0-based directions
};

// Mutating node `from` at `direction` gives a seed whose position i holds
// the variable at position perm[i] of node `to`.
struct GraphEdge {
  int from = 0;
  int direction = 0;
  int to = 0;
  std::vector<int> perm;
};

struct LabelledGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // one record per explored (node, direction)
  std::vector<int> frontier;     // nodes left unexpanded
  bool complete = false;
  bool budget_exceeded = false;

  std::size_t edge_count() const;
  const GraphEdge* find_edge(int from, int direction) const;
};

struct ExploreLimits {
  std::size_t max_nodes = 10000;
  int max_depth = 64;
  DivisionLimits division{};
};

LabelledGraph explore(const Seed& seed, const ExploreLimits& limits = {});

std::string to_dot(const LabelledGraph& graph);

// Initial classical seed (ell = 1) on the same exchange matrix.
Seed make_classical_seed(const ExchangeMatrix& bmat);

struct ShadowWitness {
  int quantum_node = 0;
  int classical_node = 0;
  std::vector<int> word;
};

struct ShadowIsoResult {
  bool isomorphic = false;
  bool powers_match = false;  // ell-th powers agree with classical variables under x -> X^ell
  std::size_t quantum_nodes = 0;
  std::size_t classical_nodes = 0;
  std::size_t quantum_edges = 0;
  std::size_t classical_edges = 0;
  std::vector<ShadowWitness> witness;
  std::string detail;
};

ShadowIsoResult classical_shadow_iso(const Seed& seed, const ExploreLimits& limits = {});

}  // namespace rqca
