#include "rqca/cyclotomic.hpp"

#include "rqca/errors.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace rqca {

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

namespace {

using Poly = std::vector<Integer>;

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Quotient of a by a monic b; throws if the remainder is nonzero.
Poly poly_div_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw Error("cyclotomic: degree underflow");
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (const auto& r : a)
    if (r != 0) throw Error("cyclotomic: inexact division");
  trim(q);
  return q;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int ell) {
  if (ell < 1) throw UsageError("cyclotomic_polynomial: ell must be positive");
  static std::map<int, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache.find(ell);
    if (it != cache.end()) return it->second;
  }
  Poly num(ell + 1, 0);
  num[0] = -1;
  num[ell] = 1;
  Poly den{1};
  for (int d = 1; d < ell; ++d)
    if (ell % d == 0) den = poly_mul(den, cyclotomic_polynomial(d));
  Poly phi = poly_div_monic(num, den);
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache.emplace(ell, phi);
  return phi;
}

RootContext::RootContext(int ell) : ell_(ell) {
  phi_ = cyclotomic_polynomial(ell);
  degree_ = static_cast<int>(phi_.size()) - 1;
  zeta_table_.assign(ell, std::vector<std::int64_t>(degree_, 0));
  std::vector<std::int64_t> cur(degree_, 0);
  cur[0] = 1;
  for (int k = 0; k < ell; ++k) {
    zeta_table_[k] = cur;
    // multiply by t and reduce with the monic phi
    std::int64_t top = cur[degree_ - 1];
    for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < degree_; ++i) cur[i] -= top * static_cast<std::int64_t>(phi_[i]);
  }
}

const RootContext& RootContext::of(int ell) {
  if (ell < 1) throw UsageError("RootContext: ell must be positive");
  static std::mutex m;
  static std::map<int, std::unique_ptr<RootContext>> interned;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = interned[ell];
  if (!slot) slot.reset(new RootContext(ell));
  return *slot;
}

CyclotomicInteger::CyclotomicInteger() : CyclotomicInteger(RootContext::of(1)) {}

CyclotomicInteger::CyclotomicInteger(const RootContext& ctx) : ctx_(&ctx), c_(ctx.degree(), 0) {}

CyclotomicInteger::CyclotomicInteger(const RootContext& ctx, const Integer& value)
    : ctx_(&ctx), c_(ctx.degree(), 0) {
  c_[0] = value;
}

CyclotomicInteger::CyclotomicInteger(const RootContext& ctx, long long value)
    : CyclotomicInteger(ctx, Integer(value)) {}

CyclotomicInteger::CyclotomicInteger(const RootContext& ctx, const std::vector<Integer>& raw)
    : ctx_(&ctx), c_(reduce(ctx, raw, 0)) {}

std::vector<Integer> CyclotomicInteger::reduce(const RootContext& ctx, const std::vector<Integer>& raw,
                                               long long shift) {
  const int deg = ctx.degree();
  const int ell = ctx.ell();
  std::vector<Integer> out(deg, 0);
  const long long s = mod_floor(shift, ell);
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (raw[j] == 0) continue;
    const int k = static_cast<int>((static_cast<long long>(j % ell) + s) % ell);
    if (k < deg) {
      out[k] += raw[j];
      continue;
    }
    const auto& row = ctx.zeta_power_coords(k);
    for (int i = 0; i < deg; ++i)
      if (row[i] != 0) out[i] += raw[j] * row[i];
  }
  return out;
}

void CyclotomicInteger::check_same(const CyclotomicInteger& o) const {
  if (ctx_ != o.ctx_) throw UsageError("cyclotomic: mixed root-of-unity contexts");
}

CyclotomicInteger CyclotomicInteger::zeta_power(const RootContext& ctx, long long k) {
  CyclotomicInteger r(ctx);
  const auto& row = ctx.zeta_power_coords(static_cast<int>(mod_floor(k, ctx.ell())));
  for (int i = 0; i < ctx.degree(); ++i) r.c_[i] = row[i];
  return r;
}

CyclotomicInteger zeta_pow(const RootContext& ctx, long long k) { return CyclotomicInteger::zeta_power(ctx, k); }

bool CyclotomicInteger::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CyclotomicInteger::is_one() const {
  if (c_[0] != 1) return false;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<Integer> CyclotomicInteger::as_integer() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_[0];
}

std::optional<std::pair<int, int>> CyclotomicInteger::as_signed_root_of_unity() const {
  for (int k = 0; k < ell(); ++k) {
    const auto& row = ctx_->zeta_power_coords(k);
    for (int sign : {1, -1}) {
      bool match = true;
      for (int i = 0; i < ctx_->degree() && match; ++i) match = (c_[i] == sign * row[i]);
      if (match) return std::make_pair(sign, k);
    }
  }
  return std::nullopt;
}

CyclotomicInteger CyclotomicInteger::operator-() const {
  CyclotomicInteger r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicInteger& CyclotomicInteger::operator+=(const CyclotomicInteger& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicInteger& CyclotomicInteger::operator-=(const CyclotomicInteger& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicInteger CyclotomicInteger::mul_shift(const CyclotomicInteger& a, const CyclotomicInteger& b,
                                               long long k) {
  a.check_same(b);
  const std::size_t n = a.c_.size();
  if (n == 1) {
    CyclotomicInteger r(*a.ctx_);
    r.c_[0] = a.c_[0] * b.c_[0];
    return r;
  }
  std::vector<Integer> raw(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
  }
  CyclotomicInteger r(*a.ctx_);
  r.c_ = reduce(*a.ctx_, raw, k);
  return r;
}

CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  return CyclotomicInteger::mul_shift(a, b, 0);
}

CyclotomicInteger& CyclotomicInteger::operator*=(const CyclotomicInteger& o) { return *this = mul_shift(*this, o, 0); }

CyclotomicInteger& CyclotomicInteger::operator*=(const Integer& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

CyclotomicInteger CyclotomicInteger::times_zeta(long long k) const {
  if (mod_floor(k, ell()) == 0) return *this;
  CyclotomicInteger r(*ctx_);
  r.c_ = reduce(*ctx_, c_, k);
  return r;
}

CyclotomicInteger CyclotomicInteger::conjugate(long long k) const {
  const int ell = this->ell();
  if (std::gcd(mod_floor(k, ell), static_cast<long long>(ell)) != 1 && ell > 1)
    throw UsageError("conjugate: exponent not coprime to ell");
  std::vector<Integer> raw(ell, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) raw[mod_floor(static_cast<long long>(i) * k, ell)] += c_[i];
  return CyclotomicInteger(*ctx_, raw);
}

std::optional<CyclotomicInteger> CyclotomicInteger::divide_integer(const Integer& s) const {
  if (s == 0) return std::nullopt;
  CyclotomicInteger r(*this);
  for (auto& x : r.c_) {
    Integer q, rem;
    boost::multiprecision::divide_qr(x, s, q, rem);
    if (rem != 0) return std::nullopt;
    x = q;
  }
  return r;
}

namespace {

std::vector<long long> unit_exponents(int ell) {
  std::vector<long long> ks;
  for (long long k = 1; k < std::max(ell, 2); ++k)
    if (std::gcd(k, static_cast<long long>(ell)) == 1) ks.push_back(k);
  return ks;
}

}  // namespace

Integer field_norm(const CyclotomicInteger& a) {
  CyclotomicInteger prod = a;
  for (long long k : unit_exponents(a.ell()))
    if (k != 1) prod *= a.conjugate(k);
  auto v = prod.as_integer();
  if (!v) throw Error("field_norm: product of conjugates is not rational");
  return *v;
}

bool is_unit(const CyclotomicInteger& a) {
  const Integer n = field_norm(a);
  return n == 1 || n == -1;
}

std::optional<CyclotomicInteger> exact_divide(const CyclotomicInteger& a, const CyclotomicInteger& b) {
  if (b.is_zero()) return std::nullopt;
  CyclotomicInteger others(b.context(), 1);
  for (long long k : unit_exponents(b.ell()))
    if (k != 1) others *= b.conjugate(k);
  const auto n = (b * others).as_integer();
  if (!n) throw Error("exact_divide: norm is not rational");
  return (a * others).divide_integer(*n);
}

std::string CyclotomicInteger::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Integer mag = c_[i] < 0 ? Integer(-c_[i]) : c_[i];
    if (first) {
      if (c_[i] < 0) os << '-';
    } else {
      os << (c_[i] < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << '*';
    os << 'z';
    if (i > 1) os << '^' << i;
  }
  if (first) return "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CyclotomicInteger& a) { return os << a.to_string(); }

CyclotomicInteger CyclotomicInteger::parse(const RootContext& ctx, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw UsageError("cyclotomic parse: empty input");
  std::vector<Integer> raw(std::max(ctx.ell(), 1), 0);
  std::size_t pos = 0;
  auto fail = [&](const char* why) { throw UsageError(std::string("cyclotomic parse: ") + why + " in '" + s + "'"); };
  auto read_digits = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  };
  bool first = true;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    Integer coef = 1;
    std::string digits = read_digits();
    bool have_coef = !digits.empty();
    if (have_coef) coef = Integer(digits);
    long long power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!have_coef) fail("dangling '*'");
      ++pos;
      if (pos >= s.size() || s[pos] != 'z') fail("expected z after '*'");
    }
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::string e = read_digits();
        if (e.empty()) fail("missing exponent");
        power = std::stoll(e);
      }
    } else if (!have_coef) {
      fail("expected a term");
    }
    raw[mod_floor(power, std::max(ctx.ell(), 1))] += sign * coef;
  }
  return CyclotomicInteger(ctx, raw);
}

}  // namespace rqca
