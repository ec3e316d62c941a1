#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rqca {

using Integer = boost::multiprecision::cpp_int;

// Coefficients of the ell-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(int ell);

long long mod_floor(long long a, long long m);

// Interned per ell; references stay valid for the life of the process.
class RootContext {
 public:
  static const RootContext& of(int ell);

  int ell() const { return ell_; }
  int degree() const { return degree_; }
  const std::vector<Integer>& phi() const { return phi_; }
  // Power-basis coordinates of zeta^k, k in [0, ell).
  const std::vector<std::int64_t>& zeta_power_coords(int k) const { return zeta_table_[k]; }

  RootContext(const RootContext&) = delete;
  RootContext& operator=(const RootContext&) = delete;

 private:
  explicit RootContext(int ell);
  int ell_;
  int degree_;
  std::vector<Integer> phi_;
  std::vector<std::vector<std::int64_t>> zeta_table_;
};

// Element of Z[zeta] in the power basis 1, zeta, ..., zeta^{deg-1}.
class CyclotomicInteger {
 public:
  CyclotomicInteger();  // zero in the ell = 1 context
  explicit CyclotomicInteger(const RootContext& ctx);
  CyclotomicInteger(const RootContext& ctx, const Integer& value);
  CyclotomicInteger(const RootContext& ctx, long long value);
  // Any-length coefficient list in zeta; reduced on construction.
  CyclotomicInteger(const RootContext& ctx, const std::vector<Integer>& raw);

  static CyclotomicInteger zeta_power(const RootContext& ctx, long long k);
  static CyclotomicInteger parse(const RootContext& ctx, std::string_view text);

  const RootContext& context() const { return *ctx_; }
  int ell() const { return ctx_->ell(); }
  std::span<const Integer> coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  // Integer value when the element lies in Z.
  std::optional<Integer> as_integer() const;
  // (sign, k) with value = sign * zeta^k, if it has that shape.
  std::optional<std::pair<int, int>> as_signed_root_of_unity() const;

  CyclotomicInteger operator-() const;
  CyclotomicInteger& operator+=(const CyclotomicInteger& o);
  CyclotomicInteger& operator-=(const CyclotomicInteger& o);
  CyclotomicInteger& operator*=(const CyclotomicInteger& o);
  CyclotomicInteger& operator*=(const Integer& s);
  friend CyclotomicInteger operator+(CyclotomicInteger a, const CyclotomicInteger& b) { return a += b; }
  friend CyclotomicInteger operator-(CyclotomicInteger a, const CyclotomicInteger& b) { return a -= b; }
  friend CyclotomicInteger operator*(const CyclotomicInteger& a, const CyclotomicInteger& b);
  friend CyclotomicInteger operator*(CyclotomicInteger a, const Integer& s) { return a *= s; }
  friend bool operator==(const CyclotomicInteger& a, const CyclotomicInteger& b);
  friend bool operator!=(const CyclotomicInteger& a, const CyclotomicInteger& b) { return !(a == b); }

  CyclotomicInteger times_zeta(long long k) const;
  // Galois conjugate zeta -> zeta^k, gcd(k, ell) = 1.
  CyclotomicInteger conjugate(long long k) const;
  // a * b * zeta^k in one pass.
  static CyclotomicInteger mul_shift(const CyclotomicInteger& a, const CyclotomicInteger& b, long long k);
  // Exact division of every coefficient by s; nullopt if some coefficient is not divisible.
  std::optional<CyclotomicInteger> divide_integer(const Integer& s) const;

  std::string to_string() const;

 private:
  void check_same(const CyclotomicInteger& o) const;
  static std::vector<Integer> reduce(const RootContext& ctx, const std::vector<Integer>& raw, long long shift);

  const RootContext* ctx_;
  std::vector<Integer> c_;
};

CyclotomicInteger zeta_pow(const RootContext& ctx, long long k);
Integer field_norm(const CyclotomicInteger& a);
bool is_unit(const CyclotomicInteger& a);
// q with a = b * q, if q exists in Z[zeta].
std::optional<CyclotomicInteger> exact_divide(const CyclotomicInteger& a, const CyclotomicInteger& b);

std::ostream& operator<<(std::ostream& os, const CyclotomicInteger& a);

}  // namespace rqca
