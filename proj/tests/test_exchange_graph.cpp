#include "doctest.h"

#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"
#include "rqca/samples.hpp"

#include <map>

using namespace rqca;

TEST_CASE("finite type exchange graphs have the classical sizes") {
  // clusters of A1xA1, A2, B2, G2: 4, 5, 6, 8; every node has one edge per direction
  const std::map<std::string, std::size_t> sizes{{"A1xA1", 4}, {"A2", 5}, {"B2", 6}, {"G2", 8}};
  for (const auto& [name, count] : sizes) {
    CAPTURE(name);
    const Seed s = finite_type_seed(name, 5);
    const LabelledGraph g = explore(s);
    CHECK(g.complete);
    CHECK_FALSE(g.budget_exceeded);
    CHECK(g.nodes.size() == count);
    CHECK(g.edge_count() == count);  // cycles of length count with 2 directions
    CHECK(g.edges.size() == 2 * count);
    for (const auto& e : g.edges) {
      const GraphEdge* back = g.find_edge(e.to, e.perm[e.direction]);
      REQUIRE(back != nullptr);
      CHECK(back->to == e.from);
    }
  }
}

TEST_CASE("node words reproduce their seeds") {
  const Seed s = finite_type_seed("G2", 5);
  const LabelledGraph g = explore(s);
  for (const auto& node : g.nodes) CHECK(canonical_key(mutate_word(s, node.word)) == node.key);
}

TEST_CASE("budgets stop the exploration") {
  const Seed s = finite_type_seed("G2", 5);
  ExploreLimits limits;
  limits.max_nodes = 3;
  const LabelledGraph g = explore(s, limits);
  CHECK(g.budget_exceeded);
  CHECK_FALSE(g.complete);
  CHECK(g.nodes.size() == 3);
  limits.max_nodes = 100;
  limits.max_depth = 1;
  const LabelledGraph h = explore(s, limits);
  CHECK_FALSE(h.complete);
  CHECK(h.nodes.size() == 3);
}

TEST_CASE("classical shadow and DOT output") {
  const Seed s = finite_type_seed("B2", 5);
  const ShadowIsoResult iso = classical_shadow_iso(s);
  CHECK(iso.isomorphic);
  CHECK(iso.powers_match);
  CHECK(iso.classical_nodes == 6);
  CHECK(iso.witness.size() == 6);
  const std::string dot = to_dot(explore(s));
  CHECK(dot.rfind("graph exchange {", 0) == 0);
  CHECK(dot.find("n0 --") != std::string::npos);
  CHECK_THROWS_AS(classical_shadow_iso(counterexample_seed(9)), CoprimeViolated);
}

TEST_CASE("canonical key ignores positions") {
  const Seed s = finite_type_seed("A2", 5);
  Seed swapped = s;
  std::swap(swapped.frame[0], swapped.frame[1]);
  CHECK(canonical_form(s).rendered.size() == 2);
  CHECK(canonical_key(mutate_word(s, {0, 1, 0, 1, 0})) == canonical_key(s));
}
