#include "doctest.h"
#include "oracles.hpp"

#include "rqca/errors.hpp"
#include "rqca/torus.hpp"

using namespace rqca;

TEST_CASE("monomial product follows the twisted rule") {
  const FormPtr form = SkewForm::make(5, {{0, 1}, {-1, 0}});
  const auto x = TorusElement::monomial(form, {1, 0}), y = TorusElement::monomial(form, {0, 1});
  // X^{e1} X^{e2} = zeta^{Lambda(e1,e2)} X^{e1+e2}
  CHECK(x * y == TorusElement::monomial(form, {1, 1}, zeta_pow(form->ring(), 1)));
  CHECK(y * x == TorusElement::monomial(form, {1, 1}, zeta_pow(form->ring(), -1)));
  // commutation exponent eps = zeta^2
  CHECK(y * x == (x * y).scaled(zeta_pow(form->ring(), -2)));
  CHECK(form->pairing({1, 0}, {0, 1}) == 1);
  CHECK(form->pairing({0, 1}, {1, 0}) == 4);
}

TEST_CASE("multiplication is associative and distributive") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int ell : {1, 3, 4, 7}) {
    const FormPtr form = SkewForm::make(ell, {{0, 2, -1}, {-2, 0, 3}, {1, -3, 0}});
    for (int rep = 0; rep < 15; ++rep) {
      const auto a = oracle::random_torus(rng, form, 3), b = oracle::random_torus(rng, form, 3),
                 c = oracle::random_torus(rng, form, 2);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
    }
  }
}

TEST_CASE("commutation of monomials matches the form numerically") {
  std::mt19937_64 rng(oracle::kSeed + 2);
  const FormPtr form = SkewForm::make(7, {{0, 3, 1}, {-3, 0, 2}, {-1, -2, 0}});
  std::uniform_int_distribution<int> e(-3, 3);
  for (int rep = 0; rep < 30; ++rep) {
    Exponent f(3), g(3);
    for (int i = 0; i < 3; ++i) f[i] = e(rng), g[i] = e(rng);
    const auto a = TorusElement::monomial(form, f), b = TorusElement::monomial(form, g);
    long long lam = 0;
    const auto m = form->matrix();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lam += f[i] * m[i][j] * g[j];
    const auto ab = (a * b).leading_term().second, ba = (b * a).leading_term().second;
    const long double pi = std::acos(-1.0L);
    const oracle::Complex expect = std::polar(1.0L, 2 * pi * 2 * lam / 7);
    CHECK(std::abs(oracle::embed(ab) - expect * oracle::embed(ba)) < 1e-9L);
    CHECK(commutes(a, b) == (((2 * lam) % 7 + 7) % 7 == 0));
  }
}

TEST_CASE("exact left division recovers the factor") {
  std::mt19937_64 rng(oracle::kSeed + 3);
  const FormPtr form = SkewForm::make(5, {{0, 1}, {-1, 0}});
  for (int rep = 0; rep < 20; ++rep) {
    const auto d = oracle::random_torus(rng, form, 2), q = oracle::random_torus(rng, form, 3);
    if (d.is_zero() || q.is_zero()) continue;
    CHECK(exact_left_divide(d * q, d) == q);
  }
  const auto x = TorusElement::monomial(form, {1, 0});
  const auto one = TorusElement::one(form);
  CHECK_THROWS_AS(exact_left_divide(one, x + one), NotExactlyDivisible);
}

TEST_CASE("powers and inverses") {
  const FormPtr form = SkewForm::make(3, {{0, 1}, {-1, 0}});
  const auto x = TorusElement::monomial(form, {1, 2});
  CHECK(power(x, 3) * power(x, -3) == TorusElement::one(form));
  CHECK(is_central_support(power(x, 3)));
  CHECK_FALSE(is_central_support(x));
  const auto s = x + TorusElement::one(form);
  CHECK_THROWS(power(s, -1));
  CHECK(power(s, 2) == s * s);
}

TEST_CASE("mixed torus membership and rendering") {
  const FormPtr form = SkewForm::make(3, {{0, 1}, {-1, 0}});
  const auto a = TorusElement::monomial(form, {-1, 2}) + TorusElement::monomial(form, {0, 1});
  CHECK(in_mixed_torus(a, {0}, {}));
  CHECK_FALSE(in_mixed_torus(a, {1}, {}));
  CHECK(a.to_string() == "(1)*X^[0,1] + (1)*X^[-1,2]");
}
