#pragma once

#include "rqca/cyclotomic.hpp"
#include "rqca/torus.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<long double>;
inline constexpr std::uint64_t kSeed = 0x5eed2024;

inline Complex embed(const rqca::CyclotomicInteger& a, long long galois = 1) {
  const long double pi = std::acos(-1.0L);
  Complex z = 0, w = std::polar(1.0L, 2 * pi * galois / a.ell()), p = 1;
  for (const auto& c : a.coeffs()) {
    z += p * c.convert_to<long double>();
    p *= w;
  }
  return z;
}

inline long double numeric_norm(const rqca::CyclotomicInteger& a) {
  Complex prod = 1;
  for (int k = 1; k <= a.ell(); ++k)
    if (std::gcd(k, a.ell()) == 1) prod *= embed(a, k);
  return prod.real();
}

inline rqca::CyclotomicInteger random_cyclotomic(std::mt19937_64& rng, const rqca::RootContext& ctx, int span = 3) {
  std::uniform_int_distribution<int> d(-span, span);
  std::vector<rqca::Integer> raw(ctx.ell());
  for (auto& c : raw) c = d(rng);
  return rqca::CyclotomicInteger(ctx, raw);
}

inline rqca::TorusElement random_torus(std::mt19937_64& rng, const rqca::FormPtr& form, int terms, int range = 2) {
  std::uniform_int_distribution<int> e(-range, range);
  rqca::TorusElement out(form);
  for (int t = 0; t < terms; ++t) {
    rqca::Exponent f(form->rank());
    for (std::size_t i = 0; i < form->rank(); ++i) f[i] = e(rng);
    out.add_term(f, random_cyclotomic(rng, form->ring(), 2));
  }
  return out;
}

// Leibniz expansion over all permutations.
template <class T>
T leibniz_det(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total = zero;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    T term = one;
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]];
    if (inversions % 2) total = total - term;
    else total = total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Fomin-Zelevinsky matrix mutation on an N x |ex| extended matrix, with the principal square given by ex.
inline std::vector<std::vector<long long>> fz_mutate(const std::vector<std::vector<long long>>& b,
                                                     const std::vector<int>& ex, int k) {
  int kc = -1;
  for (std::size_t c = 0; c < ex.size(); ++c)
    if (ex[c] == k) kc = static_cast<int>(c);
  auto out = b;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t c = 0; c < ex.size(); ++c) {
      if (static_cast<int>(i) == k || static_cast<int>(c) == kc) {
        out[i][c] = -b[i][c];
        continue;
      }
      const long long bik = b[i][kc], bkj = b[k][c];
      if (bik > 0 && bkj > 0) out[i][c] += bik * bkj;
      if (bik < 0 && bkj < 0) out[i][c] -= bik * bkj;
    }
  return out;
}

}  // namespace oracle
