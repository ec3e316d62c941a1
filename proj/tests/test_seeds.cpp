#include "doctest.h"
#include "oracles.hpp"

#include "rqca/errors.hpp"
#include "rqca/samples.hpp"
#include "rqca/seeds.hpp"

using namespace rqca;

TEST_CASE("symmetrizer and compatibility on hand examples") {
  const FormPtr form = SkewForm::make(9, {{0, 1}, {-1, 0}});
  const ExchangeMatrix b(2, {0, 1}, {}, {{0, 1}, {-3, 0}});
  CHECK(skew_symmetrizer(b) == std::vector<long long>{3, 1});
  CHECK(check_compatible(*form, b) == std::vector<long long>{3, 1});
  CHECK_FALSE(satisfies_coprime(9, {3, 1}));
  CHECK(satisfies_coprime(5, {3, 1}));
  CHECK_FALSE(satisfies_coprime(4, {1, 1}));

  // D^T scaled: Lambda = [[0,1],[-1,0]] with B = [[0,1],[-1,0]] gives D = I
  CHECK(check_compatible(*SkewForm::make(5, {{0, 1}, {-1, 0}}), ExchangeMatrix(2, {0, 1}, {}, {{0, 1}, {-1, 0}})) ==
        std::vector<long long>{1, 1});
  int bi = -1, bj = -1;
  CHECK_FALSE(compatible_with(*form, b, {1, 1}, &bi, &bj));
  CHECK(bi >= 0);
  // frozen row of Lambda^T B is nonzero
  CHECK_THROWS_AS(check_compatible(*SkewForm::make(5, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}),
                                   ExchangeMatrix(3, {0, 1}, {}, {{0, 1}, {-1, 0}, {0, 0}})),
                  NotEllCompatible);
  CHECK_THROWS_AS(skew_symmetrizer(ExchangeMatrix(2, {0, 1}, {}, {{0, 1}, {1, 0}})), NotSkewSymmetrizable);
}

TEST_CASE("matrix mutation agrees with the Fomin-Zelevinsky rule") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int rep = 0; rep < 60; ++rep) {
    const int ell = std::vector<int>{1, 3, 5, 7}[rep % 4];
    const RandomPair p = random_compatible_pair(rng, ell, 1 + rep % 3);
    for (int k : p.bmat.ex()) {
      const MutatedPair m = mutate_pair(*p.form, p.bmat, k, &p.d);
      CHECK(m.bmat.cols() == oracle::fz_mutate(p.bmat.cols(), p.bmat.ex(), k));
      CHECK(compatible_with(*m.form, m.bmat, p.d));
      const MutatedPair back = mutate_pair(*m.form, m.bmat, k, &p.d);
      CHECK(*back.form == *p.form);
      CHECK(back.bmat == p.bmat);
    }
  }
}

TEST_CASE("E and F matrices") {
  const ExchangeMatrix b(3, {0, 1}, {}, {{0, 2}, {-1, 0}, {1, -1}});
  const IntMatrix e = e_matrix(b, 0, 1);
  CHECK(e[0][0] == -1);
  CHECK(e[1][0] == 1);  // max(0, -b_{10})
  CHECK(e[2][0] == 0);
  CHECK(e[1][1] == 1);
  const IntMatrix f = f_matrix(b, 0, 1);
  CHECK(f[0][0] == -1);
  CHECK(f[0][1] == 2);  // max(0, b_{01})
}

TEST_CASE("A2 mutation produces the pentagon variables") {
  const Seed s = finite_type_seed("A2", 5);
  const FormPtr t = s.torus();
  const Seed m1 = mutate_seed(s, 0);
  // x1' = X^{-e1} (1 + x2) up to the frame normalization
  CHECK(m1.frame[0] == TorusElement::monomial(t, {-1, 1}) + TorusElement::monomial(t, {-1, 0}));
  CHECK(m1.frame[1] == s.frame[1]);
  // five alternating mutations return the initial variables with positions swapped
  const Seed p = mutate_word(s, {0, 1, 0, 1, 0});
  CHECK(p.frame[0] == s.frame[1]);
  CHECK(p.frame[1] == s.frame[0]);
  for (const auto& v : mutate_word(s, {0, 1, 0}).frame) CHECK(in_mixed_torus(v, {0, 1}, {}));
}

TEST_CASE("mutation is involutive on cluster variables") {
  for (const auto& name : finite_type_names()) {
    const Seed s = finite_type_seed(name, 5);
    for (int k : s.bmat.ex()) {
      const Seed back = mutate_word(s, {k, k});
      CHECK(back.frame == s.frame);
      CHECK(*back.form == *s.form);
    }
  }
}

TEST_CASE("seed validation and t constants") {
  const Seed s = finite_type_seed("B2", 5);
  const SeedReport r = validate_seed(s);
  CHECK(r.ok);
  CHECK(r.checks.size() >= 2);
  for (int j : s.bmat.ex()) CHECK(t_constant(s, j) >= 0);
  CHECK(positive_part({1, -2, 0}) == std::vector<long long>{1, 0, 0});
  CHECK(negative_part({1, -2, 0}) == std::vector<long long>{0, -2, 0});
  CHECK_THROWS_AS(ExchangeMatrix(2, {0, 5}, {}, {{0, 1}, {-1, 0}}), UsageError);
}
