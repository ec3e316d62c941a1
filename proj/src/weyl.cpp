#include "rqca/weyl.hpp"

#include "rqca/errors.hpp"

#include <chrono>
#include <sstream>

namespace rqca {

namespace {

using TermMap = WeylElement::TermMap;

void add_into(TermMap& acc, const Exponent& e, const CyclotomicInteger& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::vector<std::size_t> letters(const Exponent& word) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < word.size(); ++g)
    for (int r = 0; r < word[g]; ++r) out.push_back(g);
  return out;
}

}  // namespace

WeylElement::WeylElement(WeylPtr p) : p_(std::move(p)) {}

WeylElement WeylElement::word(WeylPtr p, const Exponent& e, const CyclotomicInteger& c) {
  if (e.size() != 2 * p->n()) throw UsageError("WeylElement: word length must be 2n");
  WeylElement r(std::move(p));
  r.add_term(e, c);
  return r;
}

WeylElement WeylElement::constant(WeylPtr p, const CyclotomicInteger& c) {
  const std::size_t len = 2 * p->n();
  return word(std::move(p), Exponent(len), c);
}

void WeylElement::add_term(const Exponent& e, const CyclotomicInteger& c) { add_into(terms_, e, c); }

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  if (!p_) p_ = o.p_;
  for (const auto& [e, c] : o.terms_) add_into(terms_, e, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  if (!p_) p_ = o.p_;
  for (const auto& [e, c] : o.terms_) add_into(terms_, e, -c);
  return *this;
}

WeylElement WeylElement::scaled(const CyclotomicInteger& c) const {
  WeylElement r(p_);
  for (const auto& [e, a] : terms_) r.add_term(e, a * c);
  return r;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  if (!a.p_ || a.p_ != b.p_) throw UsageError("weyl_multiply: presentation mismatch");
  const WeylPresentation& p = *a.p_;
  WeylElement out(a.p_);
  for (const auto& [eb, cb] : b.terms_) {
    TermMap cur = a.terms_;
    for (std::size_t g : letters(eb)) {
      TermMap next;
      for (const auto& [e, c] : cur)
        for (const auto& [e2, c2] : p.times_generator(e, g)) add_into(next, e2, c * c2);
      cur = std::move(next);
    }
    for (const auto& [e, c] : cur) out.add_term(e, c * cb);
  }
  return out;
}

std::string WeylElement::to_string() const {
  if (terms_.empty()) return "0";
  const std::size_t n = p_->n();
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '(' << it->second.to_string() << ')';
    for (std::size_t g = 0; g < 2 * n; ++g) {
      const int k = it->first[g];
      if (k == 0) continue;
      os << '*' << (g < n ? 'x' : 'w') << (g % n) + 1;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

WeylPresentation::WeylPresentation(std::size_t n, IntMatrix q, int ell)
    : n_(n), q_(std::move(q)), ring_(&RootContext::of(ell)) {}

WeylPtr WeylPresentation::make(std::size_t n, const IntMatrix& q, int ell) {
  if (n == 0 || 2 * n > kMaxRank) throw UsageError("weyl: unsupported number of generators");
  IntMatrix qq = q.empty() ? IntMatrix(n, std::vector<long long>(n, 0)) : q;
  if (qq.size() != n) throw UsageError("weyl: Q must be n x n");
  for (std::size_t i = 0; i < n; ++i) {
    if (qq[i].size() != n) throw UsageError("weyl: Q must be n x n");
    for (std::size_t j = 0; j < n; ++j)
      if (qq[i][j] != -qq[j][i]) throw UsageError("weyl: Q must be skew-symmetric");
  }
  return WeylPtr(new WeylPresentation(n, std::move(qq), ell));
}

WeylElement WeylPresentation::generator(std::size_t index) const {
  if (index >= 2 * n_) throw UsageError("weyl: generator index out of range");
  return WeylElement::word(shared_from_this(), Exponent::unit(2 * n_, index), CyclotomicInteger(*ring_, 1));
}

TermMap WeylPresentation::straighten(std::size_t h, std::size_t g) const {
  const std::size_t n = n_;
  TermMap out;
  Exponent w = Exponent::unit(2 * n, g) + Exponent::unit(2 * n, h);
  if (h < n) {  // x_j x_i, i < j
    const std::size_t i = g, j = h;
    add_into(out, w, eps_pow(-(1 + q_[i][j])));
  } else if (g >= n) {  // w_j w_i, i < j
    const std::size_t i = g - n, j = h - n;
    add_into(out, w, eps_pow(q_[j][i]));
  } else {  // w_j x_i
    const std::size_t i = g, j = h - n;
    if (i < j) {
      add_into(out, w, eps_pow(q_[i][j]));
    } else if (i > j) {
      add_into(out, w, eps_pow(q_[i][j] - 1));
    } else {
      // w_j x_j = eps^{-1} (x_j w_j - (eps - 1)(1 + sum_{r<j} w_r x_r))
      const CyclotomicInteger inv_eps = eps_pow(-1);
      const CyclotomicInteger shift = inv_eps * (eps_pow(1) - CyclotomicInteger(*ring_, 1));
      add_into(out, w, inv_eps);
      add_into(out, Exponent(2 * n), -shift);
      for (std::size_t r = 0; r < j; ++r)
        for (const auto& [e, c] : straighten(n + r, r)) add_into(out, e, -(shift * c));
    }
  }
  return out;
}

TermMap WeylPresentation::times_generator(const Exponent& word, std::size_t g) const {
  auto key = std::make_pair(word.to_vector(), g);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::size_t h = 2 * n_;
  for (std::size_t k = 2 * n_; k-- > 0;)
    if (word[k] > 0) {
      h = k;
      break;
    }
  TermMap result;
  if (h == 2 * n_ || g >= h) {
    add_into(result, word + Exponent::unit(2 * n_, g), CyclotomicInteger(*ring_, 1));
  } else {
    const Exponent rest = word - Exponent::unit(2 * n_, h);
    for (const auto& [sw, sc] : straighten(h, g)) {
      TermMap cur;
      add_into(cur, rest, sc);
      for (std::size_t letter : letters(sw)) {
        TermMap next;
        for (const auto& [e, c] : cur)
          for (const auto& [e2, c2] : times_generator(e, letter)) add_into(next, e2, c * c2);
        cur = std::move(next);
      }
      for (const auto& [e, c] : cur) add_into(result, e, c);
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(std::move(key), result);
  return result;
}

WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b) { return a * b; }

WeylElement weyl_power(const WeylElement& a, long long k) {
  if (k < 0) throw UsageError("weyl_power: negative exponent");
  WeylElement result = WeylElement::constant(a.presentation(), CyclotomicInteger(a.presentation()->ring(), 1));
  WeylElement base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

WeylElement weyl_central_z(const WeylPtr& p, std::size_t i) {
  if (i >= p->n()) throw UsageError("weyl_central_z: index out of range");
  const WeylElement x = p->generator(i), w = p->generator(p->n() + i);
  const WeylElement comm = x * w - w * x;
  const CyclotomicInteger eps_minus_one = zeta_pow(p->ring(), 2) - CyclotomicInteger(p->ring(), 1);
  const CyclotomicInteger sign(p->ring(), (i + 1) % 2 ? -1 : 1);
  WeylElement z(p);
  for (const auto& [e, c] : comm.terms()) {
    auto q = exact_divide(c, eps_minus_one);
    if (!q) throw Error("weyl_central_z: commutator is not divisible by eps - 1");
    z.add_term(e, *q * sign);
  }
  return z;
}

namespace {

// M(g) for g >= 0 on an explicit frame, with the toric normalization from `lambda`.
WeylElement weyl_frame_monomial(const std::vector<WeylElement>& frame, const IntMatrix& lambda,
                                const std::vector<long long>& g) {
  const WeylPtr& p = frame.front().presentation();
  long long twist = 0;
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = a + 1; b < g.size(); ++b) twist += g[a] * g[b] * lambda[a][b];
  WeylElement out = WeylElement::constant(p, zeta_pow(p->ring(), -twist));
  for (std::size_t a = 0; a < g.size(); ++a)
    if (g[a] > 0) out = out * weyl_power(frame[a], g[a]);
  return out;
}

std::optional<CyclotomicInteger> unit_ratio(const WeylElement& target, const WeylElement& base) {
  const RootContext& ring = base.presentation()->ring();
  for (int m = 0; m < ring.ell(); ++m)
    for (int sign : {1, -1}) {
      CyclotomicInteger u = zeta_pow(ring, m) * Integer(sign);
      if (base.scaled(u) == target) return u;
    }
  return std::nullopt;
}

}  // namespace

WeylSeedResult weyl_seed(const WeylPtr& p) {
  const std::size_t n = p->n(), big = 2 * n;
  const int ell = p->ell();
  const RootContext& ring = p->ring();
  WeylSeedResult out;
  for (std::size_t i = 0; i < n; ++i)
    out.frame.push_back(p->generator(i).scaled(zeta_pow(ring, 1) * Integer((i + 1) % 2 ? -1 : 1)));
  for (std::size_t i = 0; i < n; ++i) out.frame.push_back(weyl_central_z(p, i));

  out.lambda_observed.assign(big, std::vector<long long>(big, 0));
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = i + 1; j < big; ++j) {
      const WeylElement lhs = out.frame[i] * out.frame[j];
      const WeylElement rhs = out.frame[j] * out.frame[i];
      bool found = false;
      for (int m = 0; m < ell && !found; ++m)
        if (rhs.scaled(zeta_pow(ring, 2 * m)) == lhs) {
          out.lambda_observed[i][j] = m;
          out.lambda_observed[j][i] = mod_floor(-m, ell);
          found = true;
        }
      if (!found) out.q_commuting = false;
    }

  const IntMatrix& q = p->q();
  out.lambda_nominal.assign(big, std::vector<long long>(big, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      long long qp = 0, r = 0;
      if (i < j) {
        qp = q[i][j] + 1;
        r = 1;
      } else if (i > j) {
        qp = -q[j][i] - 1;
        r = q[j][i];
      }
      out.lambda_nominal[i][j] = qp;
      out.lambda_nominal[i][n + j] = -r;
      out.lambda_nominal[n + i][j] = r;
    }
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t j = 0; j < big; ++j)
      if (mod_floor(out.lambda_nominal[i][j], ell) != out.lambda_observed[i][j])
        out.delta.push_back(LambdaDelta{static_cast<int>(i), static_cast<int>(j), out.lambda_observed[i][j],
                                        mod_floor(out.lambda_nominal[i][j], ell)});

  IntMatrix nominal_cols(big, std::vector<long long>(n, 0)), derived_cols = nominal_cols;
  for (std::size_t a = 1; a <= n; ++a) {
    nominal_cols[n + a - 1][n - a] = 1;
    if (n >= a + 1) nominal_cols[n + a - 1][n - a - 1] = -1;
  }
  // w_i x_i = (-1)^i (z_i + z_{i-1}) with z_0 = 1
  for (std::size_t i = 0; i < n; ++i) {
    derived_cols[n + i][i] = 1;
    if (i > 0) derived_cols[n + i - 1][i] = -1;
  }
  std::vector<int> ex(n);
  for (std::size_t i = 0; i < n; ++i) ex[i] = static_cast<int>(i);
  out.bmat_nominal = ExchangeMatrix(big, ex, {}, nominal_cols);

  {
    CheckResult comm{"frame-commutation", true, ""};
    std::ostringstream bad;
    for (std::size_t i = 0; i < big; ++i)
      for (std::size_t j = i + 1; j < big; ++j)
        if (out.frame[i] * out.frame[j] !=
            (out.frame[j] * out.frame[i]).scaled(zeta_pow(ring, 2 * out.lambda_nominal[i][j]))) {
          comm.pass = false;
          bad << " (" << i + 1 << "," << j + 1 << ")";
        }
    if (!comm.pass) comm.detail = "pairs violating the nominal form:" + bad.str();
    CheckResult compat{"ell-compatibility", true, ""};
    try {
      check_compatible(*SkewForm::make(ell, out.lambda_nominal), out.bmat_nominal);
    } catch (const Error& e) {
      compat.pass = false;
      compat.detail = e.what();
    }
    out.nominal_report.ok = comm.pass && compat.pass;
    out.nominal_report.checks = {comm, compat};
  }

  // smallest frozen rescaling zeta^{c_i} z_i making every mu_i land on a unit multiple of w_i
  auto twist_for = [&](const IntMatrix& cols) -> std::optional<std::vector<int>> {
    std::vector<int> twist(n, 0);
    for (;;) {
      std::vector<WeylElement> frame = out.frame;
      for (std::size_t i = 0; i < n; ++i) frame[n + i] = frame[n + i].scaled(zeta_pow(ring, twist[i]));
      bool all = true;
      for (std::size_t c = 0; c < n && all; ++c) {
        std::vector<long long> b(big);
        for (std::size_t r = 0; r < big; ++r) b[r] = cols[r][c];
        const std::vector<long long> bp = positive_part(b), bm = negative_part(b);
        std::vector<long long> minus(big);
        long long lp = 0, lm = 0;
        for (std::size_t r = 0; r < big; ++r) {
          minus[r] = -bm[r];
          lp += out.lambda_observed[c][r] * bp[r];
          lm += out.lambda_observed[c][r] * bm[r];
        }
        const WeylElement rhs = weyl_frame_monomial(frame, out.lambda_observed, bp).scaled(zeta_pow(ring, lp)) +
                                weyl_frame_monomial(frame, out.lambda_observed, minus).scaled(zeta_pow(ring, -lm));
        all = unit_ratio(rhs, frame[c] * p->generator(n + c)).has_value();
      }
      if (all) return twist;
      std::size_t k = 0;
      while (k < n && ++twist[k] == ell) twist[k++] = 0;
      if (k == n) return std::nullopt;
    }
  };

  const FormPtr observed = SkewForm::make(ell, out.lambda_observed);
  out.bmat = out.bmat_nominal;
  out.frozen_twist.assign(n, 0);
  for (const auto& [source, cols] : {std::pair<std::string, const IntMatrix*>{"nominal", &nominal_cols},
                                     std::pair<std::string, const IntMatrix*>{"derived", &derived_cols}}) {
    ExchangeMatrix candidate(big, ex, {}, *cols);
    std::vector<long long> d;
    try {
      d = check_compatible(*observed, candidate);
    } catch (const Error& e) {
      if (out.compat_error.empty()) out.compat_error = source + ": " + e.what();
      continue;
    }
    const auto twist = twist_for(*cols);
    if (!twist) {
      if (out.compat_error.empty()) out.compat_error = source + ": mutation does not reach w_i";
      continue;
    }
    out.bmat = candidate;
    out.bmat_source = source;
    out.d = d;
    out.compatible = true;
    out.mutation_matches_w = true;
    out.frozen_twist = *twist;
    break;
  }
  for (std::size_t i = 0; i < n; ++i)
    out.frame[n + i] = out.frame[n + i].scaled(zeta_pow(ring, out.frozen_twist[i]));
  if (out.compatible) out.seed = make_initial_seed(observed, out.bmat);
  return out;
}

FreeModulePresentation<WeylElement> weyl_module_presentation(const WeylPtr& p) {
  const std::size_t n = p->n(), big = 2 * n;
  const int ell = p->ell();
  FreeModulePresentation<WeylElement> out;
  out.central_form = SkewForm::zero(ell, big);
  Exponent r(big);
  for (;;) {
    out.basis.push_back(WeylElement::word(p, r, CyclotomicInteger(p->ring(), 1)));
    std::size_t i = 0;
    while (i < big && ++r[i] == ell) r[i++] = 0;
    if (i == big) break;
  }
  out.mult = [](const WeylElement& a, const WeylElement& b) { return a * b; };
  out.add = [](const WeylElement& a, const WeylElement& b) { return a + b; };
  const FormPtr cf = out.central_form;
  const std::size_t count = out.basis.size();
  out.decompose = [cf, ell, big, count](const WeylElement& a) {
    std::vector<TorusElement> coeffs(count, TorusElement(cf));
    for (const auto& [e, c] : a.terms()) {
      Exponent hi(big);
      std::size_t idx = 0, stride = 1;
      for (std::size_t i = 0; i < big; ++i) {
        idx += stride * (e[i] % ell);
        stride *= ell;
        hi[i] = e[i] / ell;
      }
      coeffs[idx].add_term(hi, c);
    }
    return coeffs;
  };
  out.act = [p, ell](const TorusElement& c, const WeylElement& b) {
    WeylElement lifted(p);
    for (const auto& [f, a] : c.terms()) {
      if (!in_mixed_torus(TorusElement::monomial(c.form(), f), {}, {}))
        throw UsageError("weyl: central coefficient must be a polynomial");
      lifted.add_term(f.scaled(ell), a);
    }
    return lifted * b;
  };
  return out;
}

TorusElement weyl_to_central(const WeylElement& a, const FormPtr& central_form) {
  const int ell = central_form->ell();
  TorusElement out(central_form);
  for (const auto& [e, c] : a.terms()) {
    Exponent hi(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % ell != 0) throw DecompositionFailed("weyl_to_central: element is not in the central subalgebra");
      hi[i] = e[i] / ell;
    }
    out.add_term(hi, c);
  }
  return out;
}

WeylDiscriminantResult weyl_discriminant(const WeylPtr& p, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const int ell = p->ell();
  if (ell < 3 || ell % 2 == 0) throw UsageError("weyl_discriminant: ell must be odd and greater than 1");
  const std::size_t n = p->n();
  const FreeModulePresentation<WeylElement> pres = weyl_module_presentation(p);
  WeylDiscriminantResult out;
  out.rank = pres.basis.size();
  const TorusElement d = determinant_central(trace_matrix(pres, threads));
  std::vector<int> frozen;
  for (std::size_t i = 0; i < n; ++i) {
    out.z_ell.push_back(weyl_to_central(weyl_power(weyl_central_z(p, i), ell), pres.central_form));
    frozen.push_back(static_cast<int>(n + i));
  }
  out.pipeline = judge_discriminant(d, ell, 2 * n, out.z_ell, frozen, {}, {});
  out.pipeline.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace rqca
