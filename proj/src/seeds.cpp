#include "rqca/seeds.hpp"

#include "rqca/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace rqca {

using Rational = boost::multiprecision::cpp_rational;

ExchangeMatrix::ExchangeMatrix(std::size_t n, std::vector<int> ex, std::vector<int> inv, IntMatrix cols)
    : n_(n), ex_(std::move(ex)), inv_(std::move(inv)), b_(std::move(cols)) {
  if (b_.size() != n_) throw UsageError("ExchangeMatrix: expected N rows");
  for (const auto& row : b_)
    if (row.size() != ex_.size()) throw UsageError("ExchangeMatrix: expected one column per mutable index");
  std::vector<int> seen(n_, 0);
  for (int k : ex_) {
    if (k < 0 || static_cast<std::size_t>(k) >= n_) throw UsageError("ExchangeMatrix: mutable index out of range");
    if (seen[k]++) throw UsageError("ExchangeMatrix: repeated mutable index");
  }
  for (int k : inv_) {
    if (k < 0 || static_cast<std::size_t>(k) >= n_) throw UsageError("ExchangeMatrix: inverted index out of range");
    if (seen[k]++) throw UsageError("ExchangeMatrix: inverted index must be frozen and distinct");
  }
}

int ExchangeMatrix::column_of(int k) const {
  for (std::size_t c = 0; c < ex_.size(); ++c)
    if (ex_[c] == k) return static_cast<int>(c);
  return -1;
}

std::vector<long long> ExchangeMatrix::column(int k) const {
  const int c = column_of(k);
  if (c < 0) throw UsageError("ExchangeMatrix: index " + std::to_string(k + 1) + " is not mutable");
  std::vector<long long> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = b_[i][c];
  return out;
}

namespace {

// Connected components of the principal part, as lists of column positions.
std::vector<std::vector<int>> components(const ExchangeMatrix& bmat) {
  const std::size_t m = bmat.ex().size();
  std::vector<int> comp(m, -1);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] >= 0) continue;
    out.emplace_back();
    std::queue<int> q;
    q.push(static_cast<int>(s));
    comp[s] = static_cast<int>(out.size() - 1);
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      out.back().push_back(a);
      for (std::size_t c = 0; c < m; ++c) {
        if (comp[c] >= 0) continue;
        if (bmat.at(bmat.ex()[a], c) != 0 || bmat.at(bmat.ex()[c], a) != 0) {
          comp[c] = comp[s];
          q.push(static_cast<int>(c));
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

long long principal(const ExchangeMatrix& bmat, int a, int c) { return bmat.at(bmat.ex()[a], c); }

}  // namespace

std::vector<long long> skew_symmetrizer(const ExchangeMatrix& bmat) {
  const std::size_t m = bmat.ex().size();
  for (std::size_t a = 0; a < m; ++a) {
    if (principal(bmat, a, a) != 0)
      throw NotSkewSymmetrizable("principal part has a nonzero diagonal entry at " + std::to_string(bmat.ex()[a] + 1));
    for (std::size_t c = 0; c < m; ++c) {
      const long long x = principal(bmat, a, c), y = principal(bmat, c, a);
      if ((x == 0) != (y == 0) || (x != 0 && (x > 0) == (y > 0)))
        throw NotSkewSymmetrizable("principal part is not sign-skew-symmetric");
    }
  }
  std::vector<long long> d(m, 0);
  for (const auto& comp : components(bmat)) {
    std::vector<Rational> r(m, 0);
    std::vector<bool> set(m, false);
    r[comp[0]] = 1;
    set[comp[0]] = true;
    std::queue<int> q;
    q.push(comp[0]);
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int c : comp) {
        const long long bac = principal(bmat, a, c);
        if (bac == 0 || set[c]) continue;
        r[c] = -r[a] * bac / Rational(principal(bmat, c, a));
        set[c] = true;
        q.push(c);
      }
    }
    Integer den = 1, num = 0;
    for (int c : comp) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(r[c]));
    for (int c : comp) num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(r[c]) * (den / boost::multiprecision::denominator(r[c])));
    for (int c : comp) {
      Integer v = boost::multiprecision::numerator(r[c]) * (den / boost::multiprecision::denominator(r[c])) / num;
      d[c] = static_cast<long long>(v);
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < m; ++c)
      if (d[a] * principal(bmat, a, c) != -d[c] * principal(bmat, c, a))
        throw NotSkewSymmetrizable("no positive diagonal D makes D*B skew-symmetric");
  return d;
}

namespace {

// Sum_k b_{k,c} lambda_{k,i} mod ell.
long long compat_value(const SkewForm& form, const ExchangeMatrix& bmat, std::size_t i, std::size_t c) {
  long long s = 0;
  for (std::size_t k = 0; k < bmat.rank(); ++k) s += bmat.at(k, c) * form.entry(k, i);
  return mod_floor(s, form.ell());
}

void check_shapes(const SkewForm& form, const ExchangeMatrix& bmat) {
  if (form.rank() != bmat.rank()) throw UsageError("form and exchange matrix have different ranks");
}

}  // namespace

bool compatible_with(const SkewForm& form, const ExchangeMatrix& bmat, const std::vector<long long>& d, int* bad_i,
                     int* bad_j) {
  check_shapes(form, bmat);
  if (d.size() != bmat.ex().size()) return false;
  for (std::size_t c = 0; c < bmat.ex().size(); ++c) {
    const int j = bmat.ex()[c];
    for (std::size_t i = 0; i < bmat.rank(); ++i) {
      const long long want = static_cast<int>(i) == j ? mod_floor(d[c], form.ell()) : 0;
      if (compat_value(form, bmat, i, c) != want) {
        if (bad_i) *bad_i = static_cast<int>(i);
        if (bad_j) *bad_j = j;
        return false;
      }
    }
  }
  return true;
}

std::vector<long long> check_compatible(const SkewForm& form, const ExchangeMatrix& bmat) {
  check_shapes(form, bmat);
  std::vector<long long> d = skew_symmetrizer(bmat);
  const int ell = form.ell();
  for (std::size_t c = 0; c < bmat.ex().size(); ++c) {
    const int j = bmat.ex()[c];
    for (std::size_t i = 0; i < bmat.rank(); ++i)
      if (static_cast<int>(i) != j && compat_value(form, bmat, i, c) != 0)
        throw NotEllCompatible("Lambda^T B is not [D; 0] mod ell at (" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + ")",
                               static_cast<int>(i), j);
  }
  for (const auto& comp : components(bmat)) {
    long long found = 0;
    for (long long scale = 1; scale <= ell && !found; ++scale) {
      bool ok = true;
      for (int c : comp)
        ok = ok && compat_value(form, bmat, bmat.ex()[c], c) == mod_floor(scale * d[c], ell);
      if (ok) found = scale;
    }
    if (!found) {
      const int j = bmat.ex()[comp[0]];
      throw NotEllCompatible("diagonal of Lambda^T B is not a multiple of the symmetrizer at (" +
                                 std::to_string(j + 1) + "," + std::to_string(j + 1) + ")",
                             j, j);
    }
    for (int c : comp) d[c] *= found;
  }
  return d;
}

bool satisfies_coprime(int ell, const std::vector<long long>& d) {
  if (ell % 2 == 0) return false;
  for (long long x : d)
    if (std::gcd(x, static_cast<long long>(ell)) != 1) return false;
  return true;
}

IntMatrix e_matrix(const ExchangeMatrix& bmat, int k, int s) {
  const int col = bmat.column_of(k);
  if (col < 0) throw UsageError("e_matrix: index " + std::to_string(k + 1) + " is not mutable");
  const std::size_t n = bmat.rank();
  IntMatrix e(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  e[k][k] = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (static_cast<int>(i) != k) e[i][k] = std::max(0LL, -s * bmat.at(i, col));
  return e;
}

IntMatrix f_matrix(const ExchangeMatrix& bmat, int k, int s) {
  const int col = bmat.column_of(k);
  if (col < 0) throw UsageError("f_matrix: index " + std::to_string(k + 1) + " is not mutable");
  const std::size_t m = bmat.ex().size();
  IntMatrix f(m, std::vector<long long>(m, 0));
  for (std::size_t a = 0; a < m; ++a) f[a][a] = 1;
  f[col][col] = -1;
  for (std::size_t c = 0; c < m; ++c)
    if (static_cast<int>(c) != col) f[col][c] = std::max(0LL, s * bmat.at(k, c));
  return f;
}

namespace {

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b, std::size_t inner, std::size_t cols) {
  IntMatrix r(a.size(), std::vector<long long>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

IntMatrix transpose(const IntMatrix& a, std::size_t rows, std::size_t cols) {
  IntMatrix t(cols, std::vector<long long>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

struct PairCandidate {
  IntMatrix lambda;
  std::optional<IntMatrix> lift;
  IntMatrix b;
};

PairCandidate mutate_with_sign(const SkewForm& form, const ExchangeMatrix& bmat, int k, int s) {
  const std::size_t n = bmat.rank(), m = bmat.ex().size();
  const IntMatrix e = e_matrix(bmat, k, s);
  const IntMatrix f = f_matrix(bmat, k, s);
  const IntMatrix et = transpose(e, n, n);
  PairCandidate out;
  out.b = matmul(matmul(e, bmat.cols(), n, m), f, m, m);
  out.lambda = matmul(matmul(et, form.matrix(), n, n), e, n, n);
  for (auto& row : out.lambda)
    for (auto& x : row) x = mod_floor(x, form.ell());
  if (form.has_lift()) {
    IntMatrix l(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l[i][j] = form.lift(i, j);
    out.lift = matmul(matmul(et, l, n, n), e, n, n);
  }
  return out;
}

}  // namespace

MutatedPair mutate_pair(const SkewForm& form, const ExchangeMatrix& bmat, int k, const std::vector<long long>* d) {
  check_shapes(form, bmat);
  const PairCandidate plus = mutate_with_sign(form, bmat, k, +1);
  const PairCandidate minus = mutate_with_sign(form, bmat, k, -1);
  if (plus.b != minus.b || plus.lambda != minus.lambda || plus.lift != minus.lift)
    throw CompatibilityFailed("mutate_pair: the two sign choices disagree at direction " + std::to_string(k + 1));
  const std::size_t n = bmat.rank();
  std::vector<long long> flat;
  for (const auto& row : plus.lambda) flat.insert(flat.end(), row.begin(), row.end());
  std::optional<std::vector<long long>> lift;
  if (plus.lift) {
    lift.emplace();
    for (const auto& row : *plus.lift) lift->insert(lift->end(), row.begin(), row.end());
  }
  MutatedPair out{std::make_shared<const SkewForm>(form.ell(), n, flat, lift),
                  ExchangeMatrix(n, bmat.ex(), bmat.inv(), plus.b)};
  if (d && !compatible_with(*out.form, out.bmat, *d))
    throw CompatibilityFailed("mutate_pair: mutated pair is not compatible with the same D");
  return out;
}

std::vector<long long> positive_part(const std::vector<long long>& b) {
  std::vector<long long> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::max(0LL, b[i]);
  return out;
}

std::vector<long long> negative_part(const std::vector<long long>& b) {
  std::vector<long long> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::min(0LL, b[i]);
  return out;
}

Seed make_initial_seed(FormPtr form, ExchangeMatrix bmat) {
  Seed seed;
  seed.d = check_compatible(*form, bmat);
  seed.form = form;
  seed.bmat = std::move(bmat);
  for (std::size_t j = 0; j < form->rank(); ++j)
    seed.frame.push_back(TorusElement::monomial(form, Exponent::unit(form->rank(), j)));
  return seed;
}

TorusElement frame_monomial(const Seed& seed, const Exponent& g) {
  const std::size_t n = seed.rank();
  if (g.size() != n) throw UsageError("frame_monomial: exponent length differs from rank");
  long long twist = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) twist += static_cast<long long>(g[i]) * g[j] * seed.form->entry(i, j);
  TorusElement result = TorusElement::one(seed.torus());
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] == 0) continue;
    if (g[i] < 0 && !seed.frame[i].is_monomial())
      throw NegativePowerOfPolynomialVariable("frame_monomial: negative power of non-monomial variable " +
                                              std::to_string(i + 1));
    result = result * power(seed.frame[i], g[i]);
  }
  return result.scaled(zeta_pow(seed.torus()->ring(), -twist));
}

Seed mutate_seed(const Seed& seed, int k, const DivisionLimits& limits) {
  const std::vector<long long> b = seed.bmat.column(k);
  const std::vector<long long> bp = positive_part(b), bm = negative_part(b);
  const std::size_t n = seed.rank();
  const Exponent ek = Exponent::unit(n, k);
  const Exponent plus(bp), minus(bm);
  const RootContext& ring = seed.torus()->ring();
  TorusElement rhs = frame_monomial(seed, plus).scaled(zeta_pow(ring, seed.form->pairing(ek, plus)));
  rhs += frame_monomial(seed, -minus).scaled(zeta_pow(ring, -seed.form->pairing(ek, minus)));
  Seed out;
  MutatedPair pair = mutate_pair(*seed.form, seed.bmat, k, &seed.d);
  out.form = pair.form;
  out.bmat = std::move(pair.bmat);
  out.d = seed.d;
  out.frame = seed.frame;
  out.frame[k] = exact_left_divide(rhs, seed.frame[k], limits);
  return out;
}

Seed mutate_word(const Seed& seed, const std::vector<int>& word, const DivisionLimits& limits) {
  Seed s = seed;
  for (int k : word) s = mutate_seed(s, k, limits);
  return s;
}

int t_constant(const Seed& seed, int j) {
  const std::vector<long long> b = seed.bmat.column(j);
  const std::size_t n = seed.rank();
  Exponent ej = Exponent::unit(n, j);
  const Exponent f = -ej - Exponent(negative_part(b));
  const Exponent g = -ej + Exponent(positive_part(b));
  return seed.form->pairing(f, g);
}

SeedReport validate_seed(const Seed& seed) {
  SeedReport report;
  auto add = [&](CheckResult c) {
    report.ok = report.ok && c.pass;
    report.checks.push_back(std::move(c));
  };
  {
    CheckResult c{"symmetrizer", true, ""};
    try {
      const std::vector<long long> dmin = skew_symmetrizer(seed.bmat);
      for (std::size_t a = 0; a < seed.d.size(); ++a)
        for (std::size_t b = 0; b < seed.d.size(); ++b)
          if (seed.d[a] <= 0 || seed.d[a] * seed.bmat.at(seed.bmat.ex()[a], b) !=
                                    -seed.d[b] * seed.bmat.at(seed.bmat.ex()[b], a))
            c.pass = false;
      if (seed.d.size() != dmin.size()) c.pass = false;
      if (!c.pass) c.detail = "D does not skew-symmetrize the principal part";
    } catch (const Error& e) {
      c.pass = false;
      c.detail = e.what();
    }
    add(c);
  }
  {
    CheckResult c{"ell-compatibility", true, ""};
    int bi = -1, bj = -1;
    if (!compatible_with(*seed.form, seed.bmat, seed.d, &bi, &bj)) {
      c.pass = false;
      c.detail = "congruence fails at (" + std::to_string(bi + 1) + "," + std::to_string(bj + 1) + ")";
    }
    add(c);
  }
  {
    CheckResult c{"frame-commutation", true, ""};
    const RootContext& ring = seed.torus()->ring();
    std::ostringstream bad;
    for (std::size_t i = 0; i < seed.rank(); ++i)
      for (std::size_t j = i + 1; j < seed.rank(); ++j) {
        const TorusElement lhs = seed.frame[i] * seed.frame[j];
        const TorusElement rhs = (seed.frame[j] * seed.frame[i]).scaled(zeta_pow(ring, 2LL * seed.form->entry(i, j)));
        if (lhs != rhs) {
          c.pass = false;
          bad << " (" << i + 1 << "," << j + 1 << ")";
        }
      }
    if (!c.pass) c.detail = "pairs violating the form:" + bad.str();
    add(c);
  }
  if (seed.form->has_lift()) {
    CheckResult c{"lift-reduction", true, ""};
    for (std::size_t i = 0; i < seed.rank(); ++i)
      for (std::size_t j = 0; j < seed.rank(); ++j)
        if (mod_floor(seed.form->lift(i, j), seed.ell()) != seed.form->entry(i, j)) c.pass = false;
    if (!c.pass) c.detail = "integer lift does not reduce to the form";
    add(c);
  }
  return report;
}

}  // namespace rqca
