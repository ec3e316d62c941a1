#include "doctest.h"
#include "oracles.hpp"

#include "rqca/discriminant.hpp"
#include "rqca/errors.hpp"
#include "rqca/samples.hpp"

#include <atomic>

using namespace rqca;

namespace {

TraceMatrix random_central_matrix(std::mt19937_64& rng, const FormPtr& form, std::size_t n) {
  const int ell = form->ell();
  std::uniform_int_distribution<int> e(0, 2), terms(0, 2);
  TraceMatrix m(n, std::vector<TorusElement>(n, TorusElement(form)));
  for (auto& row : m)
    for (auto& x : row) {
      const int t = terms(rng);
      for (int k = 0; k < t; ++k) {
        Exponent f(form->rank());
        for (std::size_t i = 0; i < form->rank(); ++i) f[i] = ell * e(rng);
        x.add_term(f, oracle::random_cyclotomic(rng, form->ring(), 2));
      }
    }
  return m;
}

}  // namespace

TEST_CASE("determinants agree with the Leibniz expansion") {
  std::mt19937_64 rng(oracle::kSeed);
  const FormPtr form = SkewForm::make(3, {{0, 1}, {-1, 0}});
  const TorusElement zero(form), one = TorusElement::one(form);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u}) {
    for (int rep = 0; rep < 6; ++rep) {
      const TraceMatrix m = random_central_matrix(rng, form, n);
      const TorusElement expect = oracle::leibniz_det(m, zero, one);
      CHECK(determinant_cofactor(m) == expect);
      CHECK(determinant_central(m) == expect);
      DeterminantOptions plain;
      plain.split_blocks = false;
      CHECK(determinant_central(m, plain) == expect);
    }
  }
}

TEST_CASE("regular trace on the torus is ell^N on the central lattice") {
  const FormPtr form = SkewForm::make(3, {{0, 1}, {-1, 0}});
  const auto p = torus_presentation(form);
  CHECK(p.basis.size() == 9);
  for (int a = -3; a <= 4; ++a)
    for (int b = -2; b <= 3; ++b) {
      const auto x = TorusElement::monomial(form, {a, b});
      const bool central = a % 3 == 0 && b % 3 == 0;
      const TorusElement expect = central ? x.scaled(CyclotomicInteger(form->ring(), 9)) : TorusElement(form);
      CHECK(regular_trace(p, x) == expect);
    }
}

TEST_CASE("trace matrix determinant in rank one") {
  const FormPtr form = SkewForm::make(3, {{0}});
  const auto p = torus_presentation(form);
  const TraceMatrix m = trace_matrix(p);
  // tr(X^i X^j) = 3 X^{i+j} when 3 | i + j
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const bool hit = (i + j) % 3 == 0;
      CHECK(m[i][j] == (hit ? TorusElement::monomial(form, {i + j}, CyclotomicInteger(form->ring(), 3)) : TorusElement(form)));
    }
  CHECK(determinant_central(m) == oracle::leibniz_det(m, TorusElement(form), TorusElement::one(form)));
  CHECK(determinant_central(m).to_string() == "(-27)*X^[6]");
}

TEST_CASE("decomposition over the center round trips") {
  std::mt19937_64 rng(oracle::kSeed + 1);
  const FormPtr form = SkewForm::make(5, {{0, 1}, {-1, 0}});
  const auto p = torus_presentation(form);
  for (int rep = 0; rep < 10; ++rep) {
    const TorusElement a = oracle::random_torus(rng, form, 4, 6);
    const auto coeffs = p.decompose(a);
    CHECK(recompose(p, coeffs) == a);
    for (const auto& c : coeffs) CHECK(is_central_support(c));
  }
  CHECK(kernel_lattice(form)(Exponent{5, 10}));
  CHECK_FALSE(kernel_lattice(form)(Exponent{1, 0}));
  CHECK(ell_lattice(5)(Exponent{5, -5}));
}

TEST_CASE("unit comparison and frozen factors") {
  const FormPtr form = SkewForm::make(5, {{0, 0}, {0, 0}});
  const RootContext& ring = form->ring();
  const auto x = TorusElement::monomial(form, {1, 0}), y = TorusElement::monomial(form, {0, 1});
  const auto d = (x + y) * power(x, 3);
  CHECK(compare_up_to_unit(d.scaled(zeta_pow(ring, 2)), d, {}).pass);
  CHECK(compare_up_to_unit(d.scaled(CyclotomicInteger(ring, 1) + zeta_pow(ring, 1)), d, {}).pass);
  CHECK_FALSE(compare_up_to_unit(d.scaled(CyclotomicInteger(ring, 2)), d, {}).pass);
  CHECK_FALSE(compare_up_to_unit(d * x, d, {}).pass);
  CHECK_FALSE(compare_up_to_unit(d * x, d, {0}).pass);
  CHECK(compare_up_to_unit(d * power(x, -5), d, {0}).pass);
  const FrozenFactorization f = factor_frozen_powers(d * y * y, {x, y}, {});
  CHECK(f.counts == std::vector<long long>{3, 2});
  CHECK(f.remainder == x + y);
}

TEST_CASE("skew polynomial discriminants follow the closed form") {
  for (auto [n, ell] : std::vector<std::pair<std::size_t, int>>{{1, 3}, {1, 5}, {2, 3}, {2, 5}, {3, 3}}) {
    CAPTURE(n);
    CAPTURE(ell);
    IntMatrix lambda(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i + 1 < n; ++i) lambda[i][i + 1] = 1, lambda[i + 1][i] = -1;
    const Seed s = make_initial_seed(SkewForm::make(ell, lambda), ExchangeMatrix(n, {}, {}, IntMatrix(n)));
    const ClusterDiscriminantResult r = cluster_discriminant({s});
    long long ln = 1;
    for (std::size_t i = 0; i < n; ++i) ln *= ell;
    CHECK(r.verdict);
    CHECK(r.exponents == std::vector<long long>(n, ln * (ell - 1)));
    CHECK(r.constant == integer_power(ell, static_cast<long long>(n) * ln));
  }
}

TEST_CASE("nerve checks and pipeline errors") {
  const Seed a2 = finite_type_seed("A2", 5);
  CHECK(check_nerve({a2}).missing_directions == std::vector<int>{0, 1});
  const NerveReport both = check_nerve({a2, mutate_seed(a2, 0)});
  CHECK(both.connected);
  CHECK(both.missing_directions == std::vector<int>{1});
  CHECK_THROWS_AS(cluster_discriminant({a2}), NotANerve);
  CHECK(integer_power(3, 4) == 81);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}
