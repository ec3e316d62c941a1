#include "doctest.h"
#include "oracles.hpp"

#include "rqca/discriminant.hpp"
#include "rqca/weyl.hpp"

using namespace rqca;

namespace {

// Polynomial representation of the n = 1 algebra: x t^m = t^{m+1}, w t^m = (eps^{-m} - 1) t^{m-1}.
using Vec = std::vector<CyclotomicInteger>;

Vec apply_x(const Vec& v) {
  Vec out(v.size(), CyclotomicInteger(v[0].context()));
  for (std::size_t m = 0; m + 1 < v.size(); ++m) out[m + 1] = v[m];
  return out;
}

Vec apply_w(const Vec& v) {
  const RootContext& ring = v[0].context();
  Vec out(v.size(), CyclotomicInteger(ring));
  for (std::size_t m = 1; m < v.size(); ++m)
    out[m - 1] = v[m] * (zeta_pow(ring, -2 * static_cast<long long>(m)) - CyclotomicInteger(ring, 1));
  return out;
}

Vec act(const WeylElement& a, const Vec& v) {
  const RootContext& ring = v[0].context();
  Vec total(v.size(), CyclotomicInteger(ring));
  for (const auto& [e, c] : a.terms()) {
    Vec cur = v;
    for (int k = 0; k < e[1]; ++k) cur = apply_w(cur);
    for (int k = 0; k < e[0]; ++k) cur = apply_x(cur);
    for (std::size_t m = 0; m < v.size(); ++m) total[m] += cur[m] * c;
  }
  return total;
}

WeylElement random_weyl(std::mt19937_64& rng, const WeylPtr& p, int terms, int degree) {
  std::uniform_int_distribution<int> e(0, degree);
  WeylElement out(p);
  for (int t = 0; t < terms; ++t) {
    Exponent f(2 * p->n());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = e(rng);
    out.add_term(f, oracle::random_cyclotomic(rng, p->ring(), 2));
  }
  return out;
}

}  // namespace

TEST_CASE("n = 1 defining relation") {
  const WeylPtr p = WeylPresentation::make(1, {}, 5);
  const RootContext& ring = p->ring();
  const WeylElement x = p->generator(0), w = p->generator(1);
  const CyclotomicInteger eps = zeta_pow(ring, 2), one(ring, 1);
  // x w - eps w x = eps - 1
  CHECK(x * w - (w * x).scaled(eps) == WeylElement::constant(p, eps - one));
}

TEST_CASE("products match the polynomial representation") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int ell : {3, 5}) {
    const WeylPtr p = WeylPresentation::make(1, {}, ell);
    const RootContext& ring = p->ring();
    for (int rep = 0; rep < 12; ++rep) {
      const WeylElement a = random_weyl(rng, p, 3, 3), b = random_weyl(rng, p, 3, 3);
      for (int m = 0; m < 8; ++m) {
        Vec v(24, CyclotomicInteger(ring));
        v[m] = CyclotomicInteger(ring, 1);
        const Vec lhs = act(a * b, v), rhs = act(a, act(b, v));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("multiplication is associative for n = 2") {
  std::mt19937_64 rng(oracle::kSeed + 1);
  const WeylPtr p = WeylPresentation::make(2, {{0, 1}, {-1, 0}}, 3);
  for (int rep = 0; rep < 8; ++rep) {
    const WeylElement a = random_weyl(rng, p, 2, 2), b = random_weyl(rng, p, 2, 2), c = random_weyl(rng, p, 2, 2);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("z_i is normal and ell-th powers are central") {
  for (std::size_t n : {1u, 2u}) {
    const WeylPtr p = WeylPresentation::make(n, {}, 3);
    const RootContext& ring = p->ring();
    for (std::size_t i = 0; i < n; ++i) {
      const WeylElement z = weyl_central_z(p, i);
      const WeylElement zl = weyl_power(z, 3);
      for (std::size_t g = 0; g < 2 * n; ++g) {
        const WeylElement gen = p->generator(g);
        CHECK(zl * gen == gen * zl);
        bool normal = false;
        for (int k = 0; k < 6 && !normal; ++k) normal = z * gen == (gen * z).scaled(zeta_pow(ring, k));
        CHECK(normal);
      }
    }
    for (std::size_t g = 0; g < 2 * n; ++g) {
      const WeylElement gl = weyl_power(p->generator(g), 3);
      for (std::size_t h = 0; h < 2 * n; ++h) CHECK(gl * p->generator(h) == p->generator(h) * gl);
    }
  }
}

TEST_CASE("Weyl seed data") {
  for (std::size_t n : {1u, 2u})
    for (int ell : {3, 5}) {
      CAPTURE(n);
      CAPTURE(ell);
      const WeylSeedResult r = weyl_seed(WeylPresentation::make(n, {}, ell));
      CHECK(r.q_commuting);
      CHECK(r.compatible);
      CHECK(r.mutation_matches_w);
      CHECK(r.d == std::vector<long long>(n, ell - 1));
      CHECK(r.frame.size() == 2 * n);
      CHECK(validate_seed(r.seed).ok);
    }
}

TEST_CASE("Weyl discriminant and the graded cross-check") {
  const WeylPtr p = WeylPresentation::make(1, {}, 3);
  const FreeModulePresentation<WeylElement> pres = weyl_module_presentation(p);
  CHECK(pres.basis.size() == 9);
  const WeylDiscriminantResult r = weyl_discriminant(p);
  CHECK(r.rank == 9);
  CHECK(r.pipeline.verdict);
  CHECK(r.pipeline.constant == integer_power(3, 18));
  CHECK(r.pipeline.exponents == std::vector<long long>{18});
  // graded pieces: skew polynomial ring x w = eps w x
  const Seed gr = make_initial_seed(SkewForm::make(3, {{0, 1}, {-1, 0}}), ExchangeMatrix(2, {}, {}, IntMatrix(2)));
  const ClusterDiscriminantResult g = cluster_discriminant({gr});
  const auto& [e, c] = r.pipeline.discriminant.leading_term();
  CHECK(e.scaled(3) == g.discriminant.leading_term().first);
  const auto ratio = exact_divide(c, g.discriminant.leading_term().second);
  REQUIRE(ratio.has_value());
  CHECK(is_unit(*ratio));
  // z^3 in central coordinates is 1 + (unit) X W up to the sign convention
  CHECK(r.z_ell.size() == 1);
  CHECK(r.z_ell[0].size() == 2);
}
