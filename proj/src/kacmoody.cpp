#include "rqca/kacmoody.hpp"

#include "rqca/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

namespace rqca {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void check_letter(const CartanDatum& datum, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= datum.rank())
    throw UsageError("kacmoody: letter " + std::to_string(i + 1) + " is out of range");
}

std::vector<std::vector<std::size_t>> components(const IntMatrix& a) {
  const std::size_t r = a.size();
  std::vector<int> seen(r, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < r; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s}, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < r; ++j)
        if (!seen[j] && a[i][j] != 0) {
          seen[j] = 1;
          comp.push_back(j);
          stack.push_back(j);
        }
    }
    out.push_back(comp);
  }
  return out;
}

}  // namespace

CartanDatum CartanDatum::make(IntMatrix a, std::vector<long long> d) {
  const std::size_t r = a.size();
  if (r == 0) throw UsageError("cartan: empty matrix");
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i].size() != r) throw UsageError("cartan: matrix must be square");
    if (a[i][i] != 2) throw UsageError("cartan: diagonal entries must be 2");
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw UsageError("cartan: off-diagonal entries must be nonpositive");
      if ((a[i][j] == 0) != (a[j][i] == 0)) throw UsageError("cartan: a_ij = 0 must match a_ji = 0");
    }
  const auto comps = components(a);
  if (d.empty()) {
    std::vector<Rational> q(r, Rational(0));
    for (const auto& comp : comps) {
      q[comp[0]] = 1;
      std::vector<std::size_t> stack{comp[0]};
      while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < r; ++j) {
          if (j == i || a[i][j] == 0) continue;
          const Rational v = q[i] * a[i][j] / a[j][i];
          if (q[j] == 0) {
            q[j] = v;
            stack.push_back(j);
          } else if (q[j] != v) {
            throw NotSkewSymmetrizable("cartan: matrix is not symmetrizable");
          }
        }
      }
      boost::multiprecision::cpp_int lcm = 1;
      for (std::size_t i : comp) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(q[i]));
      boost::multiprecision::cpp_int g = 0;
      std::vector<boost::multiprecision::cpp_int> ints;
      for (std::size_t i : comp) {
        ints.push_back(boost::multiprecision::numerator(Rational(q[i] * lcm)));
        g = boost::multiprecision::gcd(g, ints.back());
      }
      d.resize(r, 0);
      for (std::size_t t = 0; t < comp.size(); ++t) d[comp[t]] = static_cast<long long>(ints[t] / g);
    }
  }
  if (d.size() != r) throw UsageError("cartan: symmetrizer has the wrong length");
  for (long long v : d)
    if (v <= 0) throw UsageError("cartan: symmetrizer entries must be positive");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (d[i] * a[i][j] != d[j] * a[j][i])
        throw NotSkewSymmetrizable("cartan: D A is not symmetric at (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")");
  for (const auto& comp : comps) {
    long long g = 0;
    for (std::size_t i : comp) g = std::gcd(g, d[i]);
    if (g != 1) throw UsageError("cartan: symmetrizer entries must be relatively prime on each component");
  }
  return CartanDatum{std::move(a), std::move(d)};
}

CartanDatum CartanDatum::preset(const std::string& name) {
  if (name == "A1") return make({{2}});
  if (name == "A2") return make({{2, -1}, {-1, 2}});
  if (name == "B2") return make({{2, -2}, {-1, 2}});
  if (name == "G2") return make({{2, -3}, {-1, 2}});
  if (name == "A1^(1)") return make({{2, -2}, {-2, 2}});
  throw UsageError("cartan: unknown preset " + name);
}

bool Weight::in_root_lattice() const {
  return std::all_of(base.begin(), base.end(), [](long long v) { return v == 0; });
}

Weight zero_weight(const CartanDatum& datum) {
  return Weight{std::vector<long long>(datum.rank(), 0), std::vector<long long>(datum.rank(), 0)};
}

Weight fundamental_weight(const CartanDatum& datum, int i) {
  check_letter(datum, i);
  Weight w = zero_weight(datum);
  w.base[i] = 1;
  return w;
}

Weight simple_root(const CartanDatum& datum, int i) {
  check_letter(datum, i);
  Weight w = zero_weight(datum);
  w.root[i] = 1;
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r = a;
  for (std::size_t i = 0; i < r.base.size(); ++i) {
    r.base[i] += b.base[i];
    r.root[i] += b.root[i];
  }
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r = a;
  for (std::size_t i = 0; i < r.base.size(); ++i) {
    r.base[i] -= b.base[i];
    r.root[i] -= b.root[i];
  }
  return r;
}

long long coroot_pairing(const CartanDatum& datum, const Weight& mu, int i) {
  check_letter(datum, i);
  long long v = mu.base[i];
  for (std::size_t j = 0; j < datum.rank(); ++j) v += datum.a[i][j] * mu.root[j];
  return v;
}

Weight reflect(const CartanDatum& datum, const Weight& mu, int i) {
  Weight r = mu;
  r.root[i] -= coroot_pairing(datum, mu, i);
  return r;
}

Weight apply_word(const CartanDatum& datum, const std::vector<int>& word, std::size_t first, std::size_t last,
                  Weight mu) {
  for (std::size_t k = last; k-- > first;) mu = reflect(datum, mu, word[k]);
  return mu;
}

std::vector<long long> root_coordinates(const CartanDatum& datum, const Weight& gamma) {
  if (gamma.in_root_lattice()) return gamma.root;
  // base = A c; solvable only for nonsingular A
  const std::size_t r = datum.rank();
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) m[i][j] = datum.a[i][j];
    m[i][r] = gamma.base[i];
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t p = c;
    while (p < r && m[p][c] == 0) ++p;
    if (p == r) throw NotInRootLattice("pairing: the fundamental-weight part cannot be resolved in a singular Cartan matrix");
    std::swap(m[p], m[c]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j <= r; ++j) m[i][j] -= f * m[c][j];
    }
  }
  std::vector<long long> out = gamma.root;
  for (std::size_t i = 0; i < r; ++i) {
    const Rational v = m[i][r] / m[i][i];
    if (boost::multiprecision::denominator(v) != 1) throw NotInRootLattice("pairing: argument is not in the root lattice");
    out[i] += static_cast<long long>(boost::multiprecision::numerator(v));
  }
  return out;
}

long long pair_with_root_lattice(const CartanDatum& datum, const Weight& mu, const Weight& gamma) {
  const std::vector<long long> c = root_coordinates(datum, gamma);
  long long v = 0;
  for (std::size_t j = 0; j < datum.rank(); ++j) v += c[j] * datum.d[j] * coroot_pairing(datum, mu, static_cast<int>(j));
  return v;
}

ReducedWordData analyze_word(const CartanDatum& datum, const std::vector<int>& word) {
  ReducedWordData out;
  out.word = word;
  const int n = static_cast<int>(word.size());
  for (int letter : word) check_letter(datum, letter);
  for (int k = 0; k < n; ++k) {
    const Weight b = apply_word(datum, word, 0, k, simple_root(datum, word[k]));
    const bool positive = b.in_root_lattice() && std::all_of(b.root.begin(), b.root.end(), [](long long v) { return v >= 0; });
    if (!positive) throw NotReduced("word is not reduced: beta_" + std::to_string(k + 1) + " is not a positive root");
    out.beta.push_back(b);
  }
  out.p.assign(n, -1);
  out.s.assign(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = k - 1; j >= 0; --j)
      if (word[j] == word[k]) {
        out.p[k] = j;
        break;
      }
    for (int j = k + 1; j < n; ++j)
      if (word[j] == word[k]) {
        out.s[k] = j;
        break;
      }
    if (out.s[k] < n) out.ex.push_back(k);
  }
  std::set<int> support(word.begin(), word.end());
  out.support.assign(support.begin(), support.end());
  for (int i : out.support)
    for (int k = n - 1; k >= 0; --k)
      if (word[k] == i) {
        out.last.push_back(k);
        break;
      }
  return out;
}

UnipotentSeedData build_unipotent_seed_data(const CartanDatum& datum, const std::vector<int>& word) {
  UnipotentSeedData out;
  out.word = analyze_word(datum, word);
  const ReducedWordData& w = out.word;
  const std::size_t n = word.size();
  std::vector<Weight> plus(n), minus(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Weight fw = fundamental_weight(datum, word[k]);
    const Weight moved = apply_word(datum, word, 0, k + 1, fw);
    plus[k] = moved + fw;
    minus[k] = moved - fw;
    if (!minus[k].in_root_lattice()) throw CompatibilityFailed("(w - 1) varpi left the root lattice");
  }
  out.lambda.assign(n, std::vector<long long>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      // commutation of the later minor with the earlier one
      out.lambda[j][k] = pair_with_root_lattice(datum, plus[k], minus[j]);
      out.lambda[k][j] = -out.lambda[j][k];
    }
  out.a_doubled.assign(n, std::vector<long long>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      const Weight fw = fundamental_weight(datum, word[k]);
      const Weight g = apply_word(datum, word, j, k + 1, fw) - fw;
      const long long norm = pair_with_root_lattice(datum, g, g);
      if (norm % 2 != 0) throw CompatibilityFailed("a[j,k] is not a half-integer");
      out.a_doubled[j][k] = norm / 2;
    }
  const int big = static_cast<int>(n);
  IntMatrix cols(n, std::vector<long long>(w.ex.size(), 0));
  for (std::size_t c = 0; c < w.ex.size(); ++c) {
    const int k = w.ex[c];
    for (int j = 0; j < big; ++j) {
      long long v = 0;
      if (j == w.p[k])
        v = 1;
      else if (j == w.s[k])
        v = -1;
      else if (j < k && k < w.s[j] && w.s[j] < w.s[k])
        v = datum.a[word[j]][word[k]];
      else if (k < j && j < w.s[k] && w.s[k] < w.s[j])
        v = -datum.a[word[j]][word[k]];
      cols[j][c] = v;
    }
    out.d.push_back(datum.d[word[k]]);
  }
  out.bmat = ExchangeMatrix(n, w.ex, {}, cols);
  for (std::size_t c = 0; c < w.ex.size(); ++c)
    for (std::size_t j = 0; j < n; ++j) {
      long long v = 0;
      for (std::size_t m = 0; m < n; ++m) v += out.lambda[m][j] * cols[m][c];
      if (static_cast<int>(j) == w.ex[c] && out.compat_scale == 0 && v % out.d[c] == 0) out.compat_scale = v / out.d[c];
      const long long want = static_cast<int>(j) == w.ex[c] ? out.compat_scale * out.d[c] : 0;
      if (v != want || (static_cast<int>(j) == w.ex[c] && want == 0))
        throw CompatibilityFailed("Lambda_w^T B^w is not a multiple of [D; 0] at (" + std::to_string(j + 1) + "," +
                                  std::to_string(w.ex[c] + 1) + ")");
    }
  return out;
}

DegreeIdentity degree_identity_check(const CartanDatum& datum, const std::vector<int>& word) {
  const ReducedWordData w = analyze_word(datum, word);
  DegreeIdentity out;
  out.beta_sum.assign(datum.rank(), 0);
  out.weight_side.assign(datum.rank(), 0);
  for (const Weight& b : w.beta)
    for (std::size_t i = 0; i < datum.rank(); ++i) out.beta_sum[i] += b.root[i];
  for (int i : w.support) {
    const Weight fw = fundamental_weight(datum, i);
    const std::vector<long long> c = root_coordinates(datum, fw - apply_word(datum, word, 0, word.size(), fw));
    for (std::size_t j = 0; j < datum.rank(); ++j) out.weight_side[j] += c[j];
  }
  out.pass = out.beta_sum == out.weight_side;
  return out;
}

namespace {

TorusElement lattice_part(const TorusElement& a, int ell) {
  TorusElement out(a.form());
  for (const auto& [f, c] : a.terms()) {
    bool in = true;
    for (auto v : f)
      if (v % ell != 0) in = false;
    if (in) out.add_term(f, c);
  }
  return out;
}

}  // namespace

TheoremCResult theorem_c_check(const CartanDatum& datum, const std::vector<int>& word, int ell,
                               const TheoremCOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const UnipotentSeedData data = build_unipotent_seed_data(datum, word);
  const ReducedWordData& w = data.word;
  const std::size_t n = word.size();
  TheoremCResult out;
  if (w.ex.empty())
    out.family = "distinct";
  else if (n == 3 && word[0] == word[2] && word[0] != word[1])
    out.family = "repeat";
  else
    throw UnsupportedWord("theorem_c_check: only words with distinct letters or the pattern (i, j, i) are supported");
  if (ell < 3 || ell % 2 == 0) throw CoprimeViolated("theorem_c_check: ell must be odd and greater than 2");
  for (int i : w.support)
    if (std::gcd(static_cast<long long>(ell), datum.d[i]) != 1)
      throw CoprimeViolated("theorem_c_check: ell must be coprime to d_i on the support");
  long long box = 1;
  for (std::size_t i = 0; i < n; ++i) box *= ell;
  out.expected_exponent = box * (ell - 1);

  const Seed seed = make_initial_seed(SkewForm::make(ell, data.lambda, true), data.bmat);
  std::vector<int> frozen = w.last;
  std::sort(frozen.begin(), frozen.end());
  std::vector<TorusElement> frozen_powers;
  for (int k : frozen) frozen_powers.push_back(power(seed.frame[k], ell));

  auto central_check = [ell](const std::vector<Seed>& theta) {
    for (const Seed& s : theta)
      for (const TorusElement& v : s.frame)
        if (!is_central_support(power(v, ell))) return false;
    return true;
  };

  if (out.family == "distinct") {
    out.nerve_size = 1;
    out.central_powers = central_check({seed});
    out.pipeline = cluster_discriminant({seed}, nullptr, options.threads);
    out.ran = true;
  } else {
    if (!options.full_disc) {
      out.detail = "repeated-letter case skipped; pass full_disc to run it";
      return out;
    }
    // Xi_N seeds along the transposition chains reaching sigma = [k, k-1, ..., 1, k+1, ..., N].
    std::vector<Seed> theta{seed};
    std::vector<TorusElement> fpp(n);
    for (std::size_t target = 0; target < n; ++target) {
      Seed cur = seed;
      std::vector<int> sigma(n), pos(n);
      std::iota(sigma.begin(), sigma.end(), 0);
      std::iota(pos.begin(), pos.end(), 0);
      for (std::size_t t = 0; t < target; ++t) {
        for (std::size_t l = 0; l + 1 + t <= target; ++l) {
          if (word[sigma[l]] != word[sigma[l + 1]]) {
            std::swap(pos[l], pos[l + 1]);
          } else {
            if (!cur.bmat.is_mutable(pos[l])) throw UnsupportedWord("theorem_c_check: chain mutation at a frozen position");
            cur = mutate_seed(cur, pos[l]);
            bool known = false;
            for (const Seed& s : theta)
              if (s.frame == cur.frame) known = true;
            if (!known) theta.push_back(cur);
          }
          std::swap(sigma[l], sigma[l + 1]);
        }
      }
      if (static_cast<std::size_t>(sigma[0]) != target) throw Error("theorem_c_check: chain did not reach sigma(1) = k");
      fpp[target] = cur.frame[pos[0]];
    }
    out.nerve_size = theta.size();
    out.central_powers = central_check(theta);
    const NerveReport nerve = check_nerve(theta);
    if (!nerve.connected || !nerve.missing_directions.empty()) throw NotANerve("theorem_c_check: chain seeds do not form a nerve");

    std::vector<TorusElement> basis;
    std::vector<int> m(n, 0);
    for (;;) {
      TorusElement b = TorusElement::one(seed.torus());
      for (std::size_t k = 0; k < n; ++k) b = b * power(fpp[k], m[k]);
      basis.push_back(b);
      std::size_t i = n;
      while (i-- > 0) {
        if (++m[i] < ell) break;
        m[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    // Regular trace through the localization: ell^N times the part supported on ell Z^N.
    const std::size_t r = basis.size();
    const CyclotomicInteger scale(seed.torus()->ring(), Integer(box));
    TraceMatrix t(r, std::vector<TorusElement>(r, TorusElement(seed.torus())));
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) cells.emplace_back(i, j);
    parallel_for(cells.size(), options.threads, [&](std::size_t c) {
      const auto [i, j] = cells[c];
      t[i][j] = lattice_part(basis[i] * basis[j], ell).scaled(scale);
    });
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < i; ++j) t[i][j] = t[j][i];
    // spot checks through explicit decomposition over the central lattice
    for (std::size_t s = 0; s < options.spot_checks && s < r; ++s) {
      const std::size_t i = (s * 7) % r, j = (s * 11 + 3) % r;
      try {
        TorusElement tr(seed.torus());
        const TorusElement prod = basis[i] * basis[j];
        for (std::size_t mm = 0; mm < r; ++mm) tr += decompose_over_center(basis, prod * basis[mm], ell_lattice(ell))[mm];
        ++out.spot_checked;
        if (tr == t[i][j]) ++out.spot_agreed;
      } catch (const DecompositionFailed&) {
      }
    }
    const TorusElement d = determinant_central(t);
    out.pipeline = judge_discriminant(d, ell, n, frozen_powers, frozen, w.ex, {});
    out.ran = true;
  }
  out.pipeline.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.exponents_match = out.pipeline.exponents.size() == frozen.size();
  for (long long e : out.pipeline.exponents)
    if (e != out.expected_exponent) out.exponents_match = false;
  out.verdict = out.pipeline.verdict && out.exponents_match && out.central_powers &&
                out.spot_agreed == out.spot_checked;
  std::ostringstream why;
  why << out.pipeline.detail;
  if (!out.exponents_match) why << "; exponents differ from ell^N (ell - 1)";
  if (!out.central_powers) why << "; some ell-th power is not central";
  if (out.spot_agreed != out.spot_checked) why << "; decomposition spot check disagrees";
  out.detail = why.str();
  return out;
}

}  // namespace rqca
