#include "doctest.h"

#include "rqca/central.hpp"
#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"
#include "rqca/samples.hpp"

using namespace rqca;

TEST_CASE("ell-th powers are central across finite type graphs") {
  for (const auto& name : finite_type_names()) {
    CAPTURE(name);
    const Seed s = finite_type_seed(name, 5);
    const LabelledGraph g = explore(s);
    for (std::size_t u = 0; u < g.nodes.size(); ++u)
      for (std::size_t j = 0; j < s.rank(); ++j) {
        const CentralElement c = ell_power(g.nodes[u].seed, static_cast<int>(j), static_cast<int>(u));
        CHECK(c.central_support);
        CHECK(c.commutes_with_frame);
        CHECK(full_center_membership(s, c.value));
        CHECK_FALSE(c.provenance().empty());
      }
  }
}

TEST_CASE("exchange identity under the coprime condition") {
  for (const auto& name : finite_type_names()) {
    const Seed s = finite_type_seed(name, 7);
    for (const auto& node : explore(s).nodes)
      for (int k : s.bmat.ex()) CHECK(exchange_identity_check(node.seed, k).pass);
  }
}

TEST_CASE("exchange identity residuals on the counterexamples") {
  const Seed s9 = counterexample_seed(9);
  const ExchangeIdentityResult r9 = exchange_identity_check(s9, 0);
  CHECK_FALSE(r9.pass);
  REQUIRE(r9.reduced_residual.has_value());
  CHECK(r9.reduced_residual->to_string() == "(3)*X^[-9,18] + (3)*X^[-9,9]");
  CHECK(r9.residual == r9.lhs - r9.rhs);
  const ExchangeIdentityResult r4 = exchange_identity_check(counterexample_seed(4), 0);
  CHECK_FALSE(r4.pass);
  REQUIRE(r4.reduced_residual.has_value());
  CHECK(r4.reduced_residual->to_string() == "(2)*X^[-4,6]");
  // the second direction has a single-term exchange monomial on one side
  CHECK(exchange_identity_check(s9, 1).pass == exchange_identity_check(s9, 1).residual.is_zero());
}

TEST_CASE("Frobenius substitution matches ell-th powers") {
  const Seed q = finite_type_seed("A2", 5);
  const Seed c = make_classical_seed(q.bmat);
  const Seed qm = mutate_word(q, {0, 1});
  const Seed cm = mutate_word(c, {0, 1});
  for (std::size_t j = 0; j < q.rank(); ++j) CHECK(frobenius_substitute(cm.frame[j], q) == power(qm.frame[j], 5));
  for (const std::vector<int>& w : {std::vector<int>{}, {0}, {1, 0}, {0, 1, 0, 1}}) CHECK(frobenius_check(q, w).pass);
  const Seed bad = counterexample_seed(9);
  CHECK_THROWS_AS(frobenius_check(bad, {0}), CoprimeViolated);
  const Seed classical = mutate_seed(make_classical_seed(bad.bmat), 0);
  CHECK(frobenius_substitute(classical.frame[0], bad) != power(mutate_seed(bad, 0).frame[0], 9));
}
