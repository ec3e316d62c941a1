#include "rqca/exponent.hpp"

#include "rqca/errors.hpp"

#include <sstream>

namespace rqca {

Exponent::Exponent(std::size_t n) : n_(static_cast<std::uint8_t>(n)) {
  if (n > kMaxRank) throw UsageError("Exponent: rank exceeds " + std::to_string(kMaxRank));
}

Exponent::Exponent(std::initializer_list<int> values) : Exponent(values.size()) {
  std::size_t i = 0;
  for (int v : values) v_[i++] = v;
}

Exponent::Exponent(const std::vector<long long>& values) : Exponent(values.size()) {
  for (std::size_t i = 0; i < values.size(); ++i) v_[i] = static_cast<std::int32_t>(values[i]);
}

Exponent Exponent::unit(std::size_t n, std::size_t i) {
  Exponent e(n);
  e[i] = 1;
  return e;
}

long long Exponent::degree() const {
  long long s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += v_[i];
  return s;
}

bool Exponent::is_zero() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (v_[i] != 0) return false;
  return true;
}

std::vector<long long> Exponent::to_vector() const { return std::vector<long long>(begin(), end()); }

std::string Exponent::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) os << (i ? "," : "") << v_[i];
  os << ']';
  return os.str();
}

Exponent& Exponent::operator+=(const Exponent& o) {
  if (n_ != o.n_) throw UsageError("Exponent: rank mismatch");
  for (std::size_t i = 0; i < n_; ++i) v_[i] += o.v_[i];
  return *this;
}

Exponent& Exponent::operator-=(const Exponent& o) {
  if (n_ != o.n_) throw UsageError("Exponent: rank mismatch");
  for (std::size_t i = 0; i < n_; ++i) v_[i] -= o.v_[i];
  return *this;
}

Exponent Exponent::operator-() const {
  Exponent r(*this);
  for (std::size_t i = 0; i < n_; ++i) r.v_[i] = -r.v_[i];
  return r;
}

Exponent Exponent::scaled(long long k) const {
  Exponent r(*this);
  for (std::size_t i = 0; i < n_; ++i) r.v_[i] = static_cast<std::int32_t>(k * r.v_[i]);
  return r;
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.n_ != b.n_) return false;
  for (std::size_t i = 0; i < a.n_; ++i)
    if (a.v_[i] != b.v_[i]) return false;
  return true;
}

bool DegLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const long long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

}  // namespace rqca
