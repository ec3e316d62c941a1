#include "doctest.h"

#include "rqca/errors.hpp"
#include "rqca/kacmoody.hpp"

using namespace rqca;

namespace {

// s_i on simple-root coordinates: alpha_j -> alpha_j - a_ij alpha_i.
std::vector<long long> reflect_root(const CartanDatum& c, int i, std::vector<long long> v) {
  long long pairing = 0;
  for (std::size_t j = 0; j < v.size(); ++j) pairing += c.a[i][j] * v[j];
  v[i] -= pairing;
  return v;
}

std::size_t count_reduced(const CartanDatum& c, std::size_t len) {
  std::size_t count = 0;
  std::vector<int> w(len, 0);
  const int r = static_cast<int>(c.rank());
  while (true) {
    try {
      analyze_word(c, w);
      ++count;
    } catch (const NotReduced&) {
    }
    std::size_t k = 0;
    while (k < len && ++w[k] == r) w[k++] = 0;
    if (k == len) break;
  }
  return count;
}

}  // namespace

TEST_CASE("Cartan presets and symmetrizers") {
  const CartanDatum b2 = CartanDatum::preset("B2");
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(b2.d[i] * b2.a[i][j] == b2.d[j] * b2.a[j][i]);
  CHECK(CartanDatum::preset("G2").rank() == 2);
  CHECK(CartanDatum::preset("A1^(1)").a[0][1] == -2);
  CHECK_THROWS(CartanDatum::make({{2, -1}, {0, 2}}));
  CHECK_THROWS(CartanDatum::make({{2, -1}, {-1, 2}}, {1, 2}));
  CHECK_THROWS(CartanDatum::preset("E9"));
}

TEST_CASE("Weyl group action agrees with the reflection matrices") {
  for (const char* name : {"A2", "B2", "G2", "A1^(1)"}) {
    const CartanDatum c = CartanDatum::preset(name);
    const std::vector<int> word{0, 1, 0, 1, 1, 0};
    for (std::size_t j = 0; j < c.rank(); ++j) {
      std::vector<long long> v(c.rank(), 0);
      v[j] = 1;
      for (std::size_t k = word.size(); k-- > 0;) v = reflect_root(c, word[k], v);
      CHECK(root_coordinates(c, apply_word(c, word, 0, word.size(), simple_root(c, static_cast<int>(j)))) == v);
    }
    for (int i = 0; i < static_cast<int>(c.rank()); ++i) {
      CHECK(reflect(c, reflect(c, fundamental_weight(c, 0), i), i) == fundamental_weight(c, 0));
      CHECK(coroot_pairing(c, fundamental_weight(c, i), i) == 1);
      for (int j = 0; j < static_cast<int>(c.rank()); ++j)
        CHECK(pair_with_root_lattice(c, simple_root(c, i), simple_root(c, j)) == c.d[i] * c.a[i][j]);
    }
  }
  CHECK_THROWS_AS(root_coordinates(CartanDatum::preset("A2"), fundamental_weight(CartanDatum::preset("A2"), 0)),
                  NotInRootLattice);
}

TEST_CASE("reduced words and roots") {
  const CartanDatum a2 = CartanDatum::preset("A2");
  const ReducedWordData d = analyze_word(a2, {0, 1, 0});
  CHECK(root_coordinates(a2, d.beta[0]) == std::vector<long long>{1, 0});
  CHECK(root_coordinates(a2, d.beta[1]) == std::vector<long long>{1, 1});
  CHECK(root_coordinates(a2, d.beta[2]) == std::vector<long long>{0, 1});
  CHECK(d.p == std::vector<int>{-1, -1, 0});
  CHECK(d.s == std::vector<int>{2, 3, 3});
  CHECK(d.ex == std::vector<int>{0});
  CHECK(d.last == std::vector<int>{2, 1});
  CHECK_THROWS_AS(analyze_word(a2, {0, 0}), NotReduced);
  CHECK_THROWS_AS(analyze_word(a2, {0, 1, 0, 1}), NotReduced);
  // reduced words of the longest element: two in each rank-2 finite type
  CHECK(count_reduced(a2, 3) == 2);
  CHECK(count_reduced(a2, 4) == 0);
  CHECK(count_reduced(CartanDatum::preset("B2"), 4) == 2);
  CHECK(count_reduced(CartanDatum::preset("B2"), 5) == 0);
  CHECK(count_reduced(CartanDatum::preset("G2"), 6) == 2);
  CHECK(count_reduced(CartanDatum::preset("A1^(1)"), 7) == 2);
}

TEST_CASE("unipotent seed data is integer-compatible") {
  const CartanDatum a2 = CartanDatum::preset("A2");
  const UnipotentSeedData u = build_unipotent_seed_data(a2, {0, 1, 0});
  CHECK(u.bmat.cols() == IntMatrix{{0}, {1}, {-1}});
  CHECK(u.d == std::vector<long long>{1});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(u.lambda[i][j] == -u.lambda[j][i]);
  for (const auto& [name, word] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"B2", {0, 1, 0, 1}}, {"B2", {1, 0, 1, 0}}, {"G2", {0, 1, 0, 1, 0, 1}}, {"A1^(1)", {0, 1, 0, 1}}}) {
    CAPTURE(name);
    const CartanDatum c = CartanDatum::preset(name);
    const UnipotentSeedData data = build_unipotent_seed_data(c, word);
    const auto& ex = data.bmat.ex();
    for (std::size_t i = 0; i < word.size(); ++i)
      for (std::size_t col = 0; col < ex.size(); ++col) {
        long long s = 0;
        for (std::size_t m = 0; m < word.size(); ++m) s += data.lambda[m][i] * data.bmat.at(m, col);
        CHECK(s == (static_cast<int>(i) == ex[col] ? data.compat_scale * data.d[col] : 0));
      }
    CHECK(data.compat_scale == -2);
    CHECK(degree_identity_check(c, word).pass);
  }
}

TEST_CASE("discriminants of unipotent cells") {
  const TheoremCResult a1 = theorem_c_check(CartanDatum::preset("A1"), {0}, 3);
  CHECK(a1.family == "distinct");
  CHECK(a1.verdict);
  CHECK(a1.expected_exponent == 6);
  CHECK(a1.pipeline.constant == 27);
  const TheoremCResult a2 = theorem_c_check(CartanDatum::preset("A2"), {0, 1}, 3);
  CHECK(a2.verdict);
  CHECK(a2.pipeline.exponents == std::vector<long long>{18, 18});
  const TheoremCResult b2 = theorem_c_check(CartanDatum::preset("B2"), {1, 0}, 5);
  CHECK(b2.verdict);
  CHECK(b2.expected_exponent == 100);

  const TheoremCResult skipped = theorem_c_check(CartanDatum::preset("A2"), {0, 1, 0}, 3);
  CHECK_FALSE(skipped.ran);
  TheoremCOptions full;
  full.full_disc = true;
  const TheoremCResult rep = theorem_c_check(CartanDatum::preset("A2"), {0, 1, 0}, 3, full);
  CHECK(rep.ran);
  CHECK(rep.verdict);
  CHECK(rep.central_powers);
  CHECK(rep.pipeline.exponents == std::vector<long long>{54, 54});
  CHECK(rep.spot_agreed == rep.spot_checked);

  CHECK_THROWS_AS(theorem_c_check(CartanDatum::preset("A1"), {0}, 4), CoprimeViolated);
  CHECK_THROWS_AS(theorem_c_check(CartanDatum::preset("B2"), {0, 1}, 2), CoprimeViolated);
  CHECK_THROWS_AS(theorem_c_check(CartanDatum::preset("B2"), {0, 1, 0, 1}, 3), UnsupportedWord);
}
