#include "rqca/torus.hpp"

#include "rqca/errors.hpp"

#include <ostream>
#include <sstream>

namespace rqca {

SkewForm::SkewForm(int ell, std::size_t n, const std::vector<long long>& entries,
                   std::optional<std::vector<long long>> lift)
    : ell_(ell), n_(n), ring_(&RootContext::of(ell)), entries_(n * n, 0), lift_(std::move(lift)) {
  if (entries.size() != n * n) throw UsageError("SkewForm: expected an N x N matrix");
  if (n > kMaxRank) throw UsageError("SkewForm: rank too large");
  for (std::size_t i = 0; i < n * n; ++i) entries_[i] = static_cast<int>(mod_floor(entries[i], ell));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((entries_[i * n + j] + entries_[j * n + i]) % ell != 0)
        throw UsageError("SkewForm: matrix is not skew-symmetric mod ell at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
  if (lift_) {
    if (lift_->size() != n * n) throw UsageError("SkewForm: lift has wrong shape");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if ((*lift_)[i * n + j] != -(*lift_)[j * n + i])
          throw UsageError("SkewForm: integer lift is not skew-symmetric");
        if (mod_floor((*lift_)[i * n + j], ell) != entries_[i * n + j])
          throw UsageError("SkewForm: lift does not reduce to the residues");
      }
  }
}

FormPtr SkewForm::make(int ell, const std::vector<std::vector<long long>>& rows, bool keep_lift) {
  const std::size_t n = rows.size();
  std::vector<long long> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw UsageError("SkewForm: matrix is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  std::optional<std::vector<long long>> lift;
  if (keep_lift) lift = flat;
  return std::make_shared<const SkewForm>(ell, n, flat, lift);
}

FormPtr SkewForm::zero(int ell, std::size_t n) {
  return std::make_shared<const SkewForm>(ell, n, std::vector<long long>(n * n, 0));
}

int SkewForm::pairing(const Exponent& f, const Exponent& g) const {
  long long s = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (f[i] == 0) continue;
    long long row = 0;
    for (std::size_t j = 0; j < n_; ++j) row += static_cast<long long>(entries_[i * n_ + j]) * g[j];
    s += f[i] * (row % ell_);
  }
  return static_cast<int>(mod_floor(s, ell_));
}

std::vector<int> SkewForm::left_row(const Exponent& f) const {
  std::vector<int> out(n_, 0);
  for (std::size_t j = 0; j < n_; ++j) {
    long long s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += static_cast<long long>(f[i]) * entries_[i * n_ + j];
    out[j] = static_cast<int>(mod_floor(s, ell_));
  }
  return out;
}

std::vector<std::vector<long long>> SkewForm::matrix() const {
  std::vector<std::vector<long long>> m(n_, std::vector<long long>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m[i][j] = entries_[i * n_ + j];
  return m;
}

bool operator==(const SkewForm& a, const SkewForm& b) {
  return a.ell_ == b.ell_ && a.n_ == b.n_ && a.entries_ == b.entries_;
}

TorusElement::TorusElement(FormPtr form) : form_(std::move(form)) {
  if (!form_) throw UsageError("TorusElement: null form");
}

TorusElement TorusElement::monomial(FormPtr form, const Exponent& f) {
  const RootContext& ring = form->ring();
  return monomial(std::move(form), f, CyclotomicInteger(ring, 1));
}

TorusElement TorusElement::monomial(FormPtr form, const Exponent& f, const CyclotomicInteger& c) {
  if (f.size() != form->rank()) throw UsageError("monomial: exponent length differs from rank");
  TorusElement r(std::move(form));
  r.add_term(f, c);
  return r;
}

TorusElement TorusElement::constant(FormPtr form, const CyclotomicInteger& c) {
  const std::size_t n = form->rank();
  return monomial(std::move(form), Exponent(n), c);
}

TorusElement TorusElement::one(FormPtr form) {
  const RootContext& ring = form->ring();
  return constant(std::move(form), CyclotomicInteger(ring, 1));
}

const std::pair<const Exponent, CyclotomicInteger>& TorusElement::leading_term() const {
  if (terms_.empty()) throw UsageError("leading_term of zero");
  return *terms_.rbegin();
}

CyclotomicInteger TorusElement::coefficient(const Exponent& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? CyclotomicInteger(ring()) : it->second;
}

void TorusElement::add_term(const Exponent& f, const CyclotomicInteger& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(f, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TorusElement::check_same(const TorusElement& o) const {
  if (!form_ || !o.form_) throw UsageError("TorusElement: uninitialized element");
  if (form_ != o.form_ && !(*form_ == *o.form_)) throw UsageError("TorusElement: form mismatch");
}

TorusElement TorusElement::operator-() const {
  TorusElement r(*this);
  for (auto& [f, c] : r.terms_) c = -c;
  return r;
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  check_same(o);
  for (const auto& [f, c] : o.terms_) add_term(f, c);
  return *this;
}

TorusElement& TorusElement::operator-=(const TorusElement& o) {
  check_same(o);
  for (const auto& [f, c] : o.terms_) add_term(f, -c);
  return *this;
}

TorusElement TorusElement::scaled(const CyclotomicInteger& c) const {
  TorusElement r(form_);
  if (c.is_zero()) return r;
  for (const auto& [f, a] : terms_) r.add_term(f, a * c);
  return r;
}

TorusElement operator*(const TorusElement& a, const TorusElement& b) {
  a.check_same(b);
  TorusElement r(a.form_);
  const SkewForm& form = *a.form_;
  const int ell = form.ell();
  const std::size_t n = form.rank();
  for (const auto& [f, ca] : a.terms_) {
    const std::vector<int> row = form.left_row(f);
    for (const auto& [g, cb] : b.terms_) {
      long long k = 0;
      for (std::size_t j = 0; j < n; ++j) k += static_cast<long long>(row[j]) * g[j];
      r.add_term(f + g, CyclotomicInteger::mul_shift(ca, cb, mod_floor(k, ell)));
    }
  }
  return r;
}

bool operator==(const TorusElement& a, const TorusElement& b) {
  a.check_same(b);
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [f, c] : a.terms_) {
    if (!(f == it->first) || c != it->second) return false;
    ++it;
  }
  return true;
}

TorusElement TorusElement::with_form(FormPtr form) const {
  if (form->rank() != rank() || form->ell() != form_->ell()) throw UsageError("with_form: incompatible form");
  TorusElement r(*this);
  r.form_ = std::move(form);
  return r;
}

std::string TorusElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '(' << it->second.to_string() << ")*X^" << it->first.to_string();
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const TorusElement& a) { return os << a.to_string(); }

TorusElement multiply(const TorusElement& a, const TorusElement& b) { return a * b; }

namespace {

CyclotomicInteger cyclotomic_power(CyclotomicInteger base, long long k) {
  CyclotomicInteger r(base.context(), 1);
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

}  // namespace

TorusElement power(const TorusElement& a, long long k) {
  if (a.is_monomial()) {
    const auto& [f, c] = *a.terms().begin();
    CyclotomicInteger coef = c;
    if (k < 0) {
      auto inv = exact_divide(CyclotomicInteger(a.ring(), 1), c);
      if (!inv) throw NotExactlyDivisible("power: monomial coefficient is not a unit");
      coef = *inv;
    }
    const long long m = k < 0 ? -k : k;
    return TorusElement::monomial(a.form(), f.scaled(k), cyclotomic_power(coef, m));
  }
  if (k < 0) throw NegativePowerOfPolynomialVariable("power: negative exponent of a non-monomial");
  TorusElement result = TorusElement::one(a.form());
  TorusElement base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TorusElement exact_left_divide(const TorusElement& numerator, const TorusElement& divisor,
                               const DivisionLimits& limits) {
  if (divisor.is_zero()) throw UsageError("exact_left_divide: zero divisor");
  if (numerator.form() != divisor.form() && !(*numerator.form() == *divisor.form()))
    throw UsageError("exact_left_divide: form mismatch");
  TorusElement quotient(numerator.form());
  if (numerator.is_zero()) return quotient;
  const SkewForm& form = *divisor.form();
  const auto& [g, d] = divisor.leading_term();
  const long long budget =
      static_cast<long long>(numerator.size()) * (1 + static_cast<long long>(divisor.size())) * limits.safety_factor;
  const long long growth_cap = static_cast<long long>(numerator.size()) * limits.growth_factor;
  TorusElement rem = numerator;
  long long steps = 0;
  while (!rem.is_zero()) {
    if (++steps > budget) throw NotExactlyDivisible("exact_left_divide: iteration budget exhausted");
    if (static_cast<long long>(rem.size()) > growth_cap)
      throw NotExactlyDivisible("exact_left_divide: remainder grew beyond the cap");
    const auto& [h, c] = rem.leading_term();
    const Exponent shift = h - g;
    for (std::size_t i = 0; i < limits.nonnegative.size(); ++i)
      if (limits.nonnegative[i] && shift[i] < 0)
        throw NotExactlyDivisible("exact_left_divide: quotient leaves the polynomial directions");
    auto a = exact_divide(c, d);
    if (!a) throw NotExactlyDivisible("exact_left_divide: leading coefficient not divisible");
    const CyclotomicInteger coef = a->times_zeta(-form.pairing(g, shift));
    const TorusElement term = TorusElement::monomial(numerator.form(), shift, coef);
    quotient.add_term(shift, coef);
    rem -= divisor * term;
  }
  return quotient;
}

bool commutes(const TorusElement& a, const TorusElement& b) { return a * b == b * a; }

bool is_central_support(const TorusElement& a) {
  for (const auto& [f, c] : a.terms()) {
    for (int v : a.form()->left_row(f))
      if (v != 0) return false;
  }
  return true;
}

bool in_mixed_torus(const TorusElement& a, const std::vector<int>& ex, const std::vector<int>& inv) {
  std::vector<bool> free_dir(a.rank(), false);
  for (int k : ex) free_dir.at(k) = true;
  for (int k : inv) free_dir.at(k) = true;
  for (const auto& [f, c] : a.terms())
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!free_dir[i] && f[i] < 0) return false;
  return true;
}

}  // namespace rqca
