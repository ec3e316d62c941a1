#include "doctest.h"
#include "oracles.hpp"

#include "rqca/cyclotomic.hpp"
#include "rqca/errors.hpp"

using namespace rqca;

namespace {

std::vector<long long> as_ll(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials match hand values") {
  CHECK(as_ll(cyclotomic_polynomial(1)) == std::vector<long long>{-1, 1});
  CHECK(as_ll(cyclotomic_polynomial(4)) == std::vector<long long>{1, 0, 1});
  CHECK(as_ll(cyclotomic_polynomial(5)) == std::vector<long long>{1, 1, 1, 1, 1});
  CHECK(as_ll(cyclotomic_polynomial(9)) == std::vector<long long>{1, 0, 0, 1, 0, 0, 1});
  CHECK(as_ll(cyclotomic_polynomial(12)) == std::vector<long long>{1, 0, -1, 0, 1});
  CHECK(RootContext::of(15).degree() == 8);
  CHECK(&RootContext::of(7) == &RootContext::of(7));
}

TEST_CASE("ring operations agree with the complex embedding") {
  std::mt19937_64 rng(oracle::kSeed);
  for (int ell : {1, 2, 3, 4, 5, 6, 9, 12}) {
    const RootContext& ctx = RootContext::of(ell);
    for (int rep = 0; rep < 25; ++rep) {
      const auto a = oracle::random_cyclotomic(rng, ctx), b = oracle::random_cyclotomic(rng, ctx);
      CHECK(std::abs(oracle::embed(a * b) - oracle::embed(a) * oracle::embed(b)) < 1e-9L);
      CHECK(std::abs(oracle::embed(a + b) - oracle::embed(a) - oracle::embed(b)) < 1e-9L);
      CHECK(std::abs(oracle::embed(a.times_zeta(rep)) - oracle::embed(a) * oracle::embed(zeta_pow(ctx, rep))) <
            1e-9L);
      const long double n = oracle::numeric_norm(a);
      CHECK(std::abs(n - field_norm(a).convert_to<long double>()) < 1e-6L * (1 + std::abs(n)));
      if (!b.is_zero()) {
        const auto q = exact_divide(a * b, b);
        REQUIRE(q.has_value());
        CHECK(*q == a);
      }
    }
  }
}

TEST_CASE("roots of unity and units") {
  const RootContext& ctx = RootContext::of(5);
  const auto z = zeta_pow(ctx, 1);
  CHECK(zeta_pow(ctx, 5).is_one());
  CHECK(zeta_pow(ctx, -1) * z == CyclotomicInteger(ctx, 1));
  CHECK(is_unit(z));
  CHECK(is_unit(CyclotomicInteger(ctx, 1) + z));  // (1 - z^2) / (1 - z)
  CHECK_FALSE(is_unit(CyclotomicInteger(ctx, 1) - z));  // norm 5
  CHECK(field_norm(CyclotomicInteger(ctx, 1) - z) == 5);
  CHECK_FALSE(is_unit(CyclotomicInteger(ctx, 3)));
  const auto sr = (-z.times_zeta(2)).as_signed_root_of_unity();
  REQUIRE(sr.has_value());
  CHECK(sr->first == -1);
  CHECK(sr->second == 3);
  CHECK(z.conjugate(2) == zeta_pow(ctx, 2));
  CHECK_FALSE(exact_divide(CyclotomicInteger(ctx, 1), CyclotomicInteger(ctx, 2)).has_value());
}

TEST_CASE("parse and print round trip") {
  std::mt19937_64 rng(oracle::kSeed + 1);
  for (int ell : {3, 4, 9}) {
    const RootContext& ctx = RootContext::of(ell);
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = oracle::random_cyclotomic(rng, ctx);
      CHECK(CyclotomicInteger::parse(ctx, a.to_string()) == a);
    }
  }
  CHECK_THROWS_AS(CyclotomicInteger::parse(RootContext::of(3), "1 + + z"), UsageError);
}

TEST_CASE("big integer coefficients stay exact") {
  const RootContext& ctx = RootContext::of(3);
  CyclotomicInteger a(ctx, Integer(3));
  for (int i = 0; i < 80; ++i) a *= Integer(3);
  CHECK(a.as_integer().value() == boost::multiprecision::pow(Integer(3), 81));
}
