#include "rqca/exchange_graph.hpp"

#include "rqca/central.hpp"
#include "rqca/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace rqca {

CanonicalForm canonical_form(const Seed& seed) {
  const std::size_t n = seed.rank();
  CanonicalForm cf;
  for (const auto& v : seed.frame) cf.rendered.push_back(v.to_string());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<long long> full_b(n * n, 0);
  std::vector<bool> mutable_dir(n, false);
  for (std::size_t c = 0; c < seed.bmat.ex().size(); ++c) {
    const int j = seed.bmat.ex()[c];
    mutable_dir[j] = true;
    for (std::size_t i = 0; i < n; ++i) full_b[i * n + j] = seed.bmat.at(i, c);
  }
  std::vector<bool> inverted(n, false);
  for (int j : seed.bmat.inv()) inverted[j] = true;
  auto row_signature = [&](int i) {
    std::vector<long long> sig;
    for (std::size_t j = 0; j < n; ++j) sig.push_back(full_b[i * n + j]);
    for (std::size_t j = 0; j < n; ++j) sig.push_back(seed.form->entry(i, j));
    return sig;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (cf.rendered[a] != cf.rendered[b]) return cf.rendered[a] < cf.rendered[b];
    return row_signature(a) < row_signature(b);
  });
  std::ostringstream os;
  for (int i : order) os << cf.rendered[i] << ';';
  os << "|ex:";
  for (int i : order) os << (mutable_dir[i] ? 'm' : (inverted[i] ? 'i' : 'f'));
  os << "|B:";
  for (int i : order)
    for (int j : order) os << full_b[i * n + j] << ',';
  os << "|L:";
  for (int i : order)
    for (int j : order) os << seed.form->entry(i, j) << ',';
  cf.key = os.str();
  return cf;
}

std::string canonical_key(const Seed& seed) { return canonical_form(seed).key; }

namespace {

std::vector<int> match_positions(const std::vector<std::string>& from, const std::vector<std::string>& to) {
  std::unordered_map<std::string, int> where;
  for (std::size_t i = 0; i < to.size(); ++i) where.emplace(to[i], static_cast<int>(i));
  std::vector<int> perm(from.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto it = where.find(from[i]);
    if (it == where.end()) throw Error("exchange graph: matched seeds have different clusters");
    perm[i] = it->second;
  }
  return perm;
}

}  // namespace

std::size_t LabelledGraph::edge_count() const {
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  for (const auto& e : edges) {
    std::pair<int, int> a{e.from, e.direction}, b{e.to, e.perm[e.direction]};
    if (b < a) std::swap(a, b);
    seen.insert({a, b});
  }
  return seen.size();
}

const GraphEdge* LabelledGraph::find_edge(int from, int direction) const {
  for (const auto& e : edges)
    if (e.from == from && e.direction == direction) return &e;
  return nullptr;
}

LabelledGraph explore(const Seed& seed, const ExploreLimits& limits) {
  LabelledGraph g;
  std::unordered_map<std::string, int> index;
  {
    CanonicalForm cf = canonical_form(seed);
    index.emplace(cf.key, 0);
    g.nodes.push_back(GraphNode{seed, cf.key, cf.rendered, 0, {}});
  }
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    if (g.nodes[u].depth >= limits.max_depth) {
      g.frontier.push_back(static_cast<int>(u));
      continue;
    }
    const Seed current = g.nodes[u].seed;
    bool expanded = true;
    for (int k : current.bmat.ex()) {
      Seed next = mutate_seed(current, k, limits.division);
      CanonicalForm cf = canonical_form(next);
      auto it = index.find(cf.key);
      int v;
      if (it != index.end()) {
        v = it->second;
      } else {
        if (g.nodes.size() >= limits.max_nodes) {
          g.budget_exceeded = true;
          expanded = false;
          continue;
        }
        v = static_cast<int>(g.nodes.size());
        index.emplace(cf.key, v);
        std::vector<int> word = g.nodes[u].word;
        word.push_back(k);
        g.nodes.push_back(GraphNode{std::move(next), cf.key, cf.rendered, g.nodes[u].depth + 1, std::move(word)});
      }
      g.edges.push_back(GraphEdge{static_cast<int>(u), k, v, match_positions(cf.rendered, g.nodes[v].rendered)});
    }
    if (!expanded) g.frontier.push_back(static_cast<int>(u));
  }
  g.complete = g.frontier.empty() && !g.budget_exceeded;
  return g;
}

std::string to_dot(const LabelledGraph& graph) {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    os << "  n" << i << " [label=\"" << i;
    if (std::find(graph.frontier.begin(), graph.frontier.end(), static_cast<int>(i)) != graph.frontier.end())
      os << "*";
    os << "\"];\n";
  }
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  for (const auto& e : graph.edges) {
    std::pair<int, int> a{e.from, e.direction}, b{e.to, e.perm[e.direction]};
    if (b < a) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    os << "  n" << e.from << " -- n" << e.to << " [label=\"" << e.direction + 1 << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Seed make_classical_seed(const ExchangeMatrix& bmat) { return make_initial_seed(SkewForm::zero(1, bmat.rank()), bmat); }

ShadowIsoResult classical_shadow_iso(const Seed& seed, const ExploreLimits& limits) {
  if (!satisfies_coprime(seed.ell(), seed.d))
    throw CoprimeViolated("classical_shadow_iso: ell must be odd and coprime to every symmetrizer entry");
  const LabelledGraph quantum = explore(seed, limits);
  if (!quantum.complete) throw BudgetExceeded("classical_shadow_iso: quantum exploration did not close");
  const Seed root = make_classical_seed(seed.bmat);
  const LabelledGraph classical = explore(root, limits);
  if (!classical.complete) throw BudgetExceeded("classical_shadow_iso: classical exploration did not close");

  ShadowIsoResult out;
  out.quantum_nodes = quantum.nodes.size();
  out.classical_nodes = classical.nodes.size();
  out.quantum_edges = quantum.edge_count();
  out.classical_edges = classical.edge_count();
  std::unordered_map<std::string, int> classical_index;
  for (std::size_t i = 0; i < classical.nodes.size(); ++i) classical_index.emplace(classical.nodes[i].key, static_cast<int>(i));

  bool ok = out.quantum_nodes == out.classical_nodes && out.quantum_edges == out.classical_edges;
  bool powers = true;
  std::ostringstream why;
  if (!ok) why << "node or edge counts differ; ";
  std::vector<Seed> shadow;
  std::vector<CanonicalForm> shadow_form;
  std::set<int> used;
  for (std::size_t u = 0; u < quantum.nodes.size(); ++u) {
    shadow.push_back(mutate_word(root, quantum.nodes[u].word, limits.division));
    shadow_form.push_back(canonical_form(shadow.back()));
    auto it = classical_index.find(shadow_form.back().key);
    if (it == classical_index.end()) {
      ok = false;
      why << "node " << u << " has no classical image; ";
      continue;
    }
    if (!used.insert(it->second).second) {
      ok = false;
      why << "node " << u << " collides in the classical graph; ";
    }
    out.witness.push_back(ShadowWitness{static_cast<int>(u), it->second, quantum.nodes[u].word});
    for (std::size_t j = 0; j < seed.rank(); ++j)
      if (frobenius_substitute(shadow.back().frame[j], seed) != power(quantum.nodes[u].seed.frame[j], seed.ell()))
        powers = false;
  }
  for (const auto& e : quantum.edges) {
    const Seed next = mutate_seed(shadow[e.from], e.direction, limits.division);
    const CanonicalForm cf = canonical_form(next);
    if (cf.key != shadow_form[e.to].key) {
      ok = false;
      why << "edge " << e.from << "-" << e.direction + 1 << " leaves the image; ";
      continue;
    }
    if (match_positions(cf.rendered, shadow_form[e.to].rendered) != e.perm) {
      ok = false;
      why << "edge " << e.from << "-" << e.direction + 1 << " permutes positions differently; ";
    }
  }
  out.isomorphic = ok;
  out.powers_match = powers;
  out.detail = why.str();
  return out;
}

}  // namespace rqca
