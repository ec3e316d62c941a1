#include "rqca/samples.hpp"

#include "rqca/errors.hpp"

#include <numeric>

namespace rqca {

namespace {

Seed rank_two(int ell, long long c) {
  return make_initial_seed(SkewForm::make(ell, {{0, 1}, {-1, 0}}, true), ExchangeMatrix(2, {0, 1}, {}, {{0, c}, {-1, 0}}));
}

}  // namespace

std::vector<std::string> finite_type_names() { return {"A1xA1", "A2", "B2", "G2"}; }

Seed finite_type_seed(const std::string& name, int ell) {
  if (name == "A2") return rank_two(ell, 1);
  if (name == "B2") return rank_two(ell, 2);
  if (name == "G2") return rank_two(ell, 3);
  if (name == "A1xA1")
    return make_initial_seed(SkewForm::make(ell, {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}, true),
                             ExchangeMatrix(4, {0, 1}, {}, {{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
  throw UsageError("unknown finite type " + name);
}

Seed counterexample_seed(int ell) {
  return make_initial_seed(SkewForm::make(ell, {{0, 1}, {-1, 0}}, true), ExchangeMatrix(2, {0, 1}, {}, {{0, 1}, {-3, 0}}));
}

RandomPair random_compatible_pair(std::mt19937_64& rng, int ell, std::size_t n) {
  if (n == 0) throw UsageError("random_compatible_pair: n must be positive");
  std::uniform_int_distribution<int> small(1, 3), coin(0, 1), entry(-2, 2);
  std::vector<long long> d(n);
  for (auto& v : d) {
    v = small(rng);
    // keep the coprime condition when ell > 1
    while (ell > 1 && std::gcd(v, static_cast<long long>(ell)) != 1) v = small(rng);
  }
  IntMatrix b(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const long long t = entry(rng);
      const long long g = std::gcd(d[i], d[j]);
      b[i][j] = t * d[j] / g;
      b[j][i] = -t * d[i] / g;
    }
  const std::size_t big = 2 * n;
  IntMatrix cols(big, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cols[i][j] = b[i][j];
    cols[n + i][i] = 1;
  }
  IntMatrix lambda(big, std::vector<long long>(big, 0));
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i][n + i] = -d[i];
    lambda[n + i][i] = d[i];
    for (std::size_t j = 0; j < n; ++j) lambda[n + i][n + j] = -d[i] * b[i][j];
  }
  std::uniform_int_distribution<int> shift(-1, 1);
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = i + 1; j < big; ++j) {
      const long long s = shift(rng) * ell;
      lambda[i][j] += s;
      lambda[j][i] -= s;
    }
  std::vector<int> ex(n);
  std::iota(ex.begin(), ex.end(), 0);
  RandomPair out{SkewForm::make(ell, lambda), ExchangeMatrix(big, ex, {}, cols), d};
  std::uniform_int_distribution<std::size_t> dir(0, n - 1);
  const int steps = coin(rng) + coin(rng) + coin(rng);
  for (int s = 0; s < steps; ++s) {
    MutatedPair m = mutate_pair(*out.form, out.bmat, static_cast<int>(dir(rng)), &out.d);
    out.form = m.form;
    out.bmat = m.bmat;
  }
  return out;
}

}  // namespace rqca
