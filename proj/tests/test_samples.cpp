#include "doctest.h"
#include "oracles.hpp"

#include "rqca/samples.hpp"

using namespace rqca;

TEST_CASE("finite type samples carry the expected symmetrizers") {
  CHECK(finite_type_seed("A2", 5).d == std::vector<long long>{1, 1});
  CHECK(finite_type_seed("B2", 5).d == std::vector<long long>{1, 2});
  CHECK(finite_type_seed("G2", 5).d == std::vector<long long>{1, 3});
  CHECK(finite_type_seed("A1xA1", 5).rank() == 4);
  CHECK(counterexample_seed(9).d == std::vector<long long>{3, 1});
  CHECK_THROWS(finite_type_seed("E8", 5));
}

TEST_CASE("random pairs are compatible and reproducible") {
  std::mt19937_64 a(oracle::kSeed), b(oracle::kSeed);
  for (int rep = 0; rep < 30; ++rep) {
    const int ell = 1 + 2 * (rep % 4);
    const RandomPair p = random_compatible_pair(a, ell, 1 + rep % 3);
    const RandomPair q = random_compatible_pair(b, ell, 1 + rep % 3);
    CHECK(*p.form == *q.form);
    CHECK(p.bmat == q.bmat);
    CHECK(compatible_with(*p.form, p.bmat, p.d));
    CHECK(p.bmat.rank() <= 6);
  }
}
