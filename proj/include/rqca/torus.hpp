#pragma once

#include "rqca/cyclotomic.hpp"
#include "rqca/exponent.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rqca {

// Skew-symmetric form Lambda on Z^N with values in Z/ell, optionally with an integer lift.
class SkewForm {
 public:
  SkewForm(int ell, std::size_t n, const std::vector<long long>& entries,
           std::optional<std::vector<long long>> lift = std::nullopt);
  static std::shared_ptr<const SkewForm> make(int ell, const std::vector<std::vector<long long>>& rows,
                                              bool keep_lift = false);
  static std::shared_ptr<const SkewForm> zero(int ell, std::size_t n);

  int ell() const { return ell_; }
  std::size_t rank() const { return n_; }
  const RootContext& ring() const { return *ring_; }
  int entry(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  bool has_lift() const { return lift_.has_value(); }
  long long lift(std::size_t i, std::size_t j) const { return (*lift_)[i * n_ + j]; }
  const std::vector<long long>& lift_entries() const { return *lift_; }
  // Lambda(f, g) reduced to [0, ell).
  int pairing(const Exponent& f, const Exponent& g) const;
  // Row vector f^T Lambda reduced mod ell.
  std::vector<int> left_row(const Exponent& f) const;
  std::vector<std::vector<long long>> matrix() const;

  friend bool operator==(const SkewForm& a, const SkewForm& b);

 private:
  int ell_;
  std::size_t n_;
  const RootContext* ring_;
  std::vector<int> entries_;
  std::optional<std::vector<long long>> lift_;
};

using FormPtr = std::shared_ptr<const SkewForm>;

struct DivisionLimits {
  long long safety_factor = 4;
  long long growth_factor = 64;
  // Directions where a quotient term may not go negative; empty means none.
  std::vector<bool> nonnegative;
};

// Twisted Laurent polynomial sum c_f X^f with X^f X^g = zeta^{Lambda(f,g)} X^{f+g}.
class TorusElement {
 public:
  using TermMap = std::map<Exponent, CyclotomicInteger, DegLexLess>;

  TorusElement() = default;
  explicit TorusElement(FormPtr form);

  static TorusElement monomial(FormPtr form, const Exponent& f);
  static TorusElement monomial(FormPtr form, const Exponent& f, const CyclotomicInteger& c);
  static TorusElement constant(FormPtr form, const CyclotomicInteger& c);
  static TorusElement one(FormPtr form);

  const FormPtr& form() const { return form_; }
  std::size_t rank() const { return form_->rank(); }
  const RootContext& ring() const { return form_->ring(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  // Largest term in the degree-lex order.
  const std::pair<const Exponent, CyclotomicInteger>& leading_term() const;
  CyclotomicInteger coefficient(const Exponent& f) const;

  // Adds c X^f in place.
  void add_term(const Exponent& f, const CyclotomicInteger& c);

  TorusElement operator-() const;
  TorusElement& operator+=(const TorusElement& o);
  TorusElement& operator-=(const TorusElement& o);
  friend TorusElement operator+(TorusElement a, const TorusElement& b) { return a += b; }
  friend TorusElement operator-(TorusElement a, const TorusElement& b) { return a -= b; }
  friend TorusElement operator*(const TorusElement& a, const TorusElement& b);
  TorusElement scaled(const CyclotomicInteger& c) const;
  friend bool operator==(const TorusElement& a, const TorusElement& b);
  friend bool operator!=(const TorusElement& a, const TorusElement& b) { return !(a == b); }

  // Same terms over another form of the same rank and ell.
  TorusElement with_form(FormPtr form) const;

  std::string to_string() const;

 private:
  void check_same(const TorusElement& o) const;
  FormPtr form_;
  TermMap terms_;
};

TorusElement multiply(const TorusElement& a, const TorusElement& b);
// a^k; negative k only for a single monomial with unit coefficient.
TorusElement power(const TorusElement& a, long long k);
// q with divisor * q = numerator; throws NotExactlyDivisible.
TorusElement exact_left_divide(const TorusElement& numerator, const TorusElement& divisor,
                               const DivisionLimits& limits = {});
bool commutes(const TorusElement& a, const TorusElement& b);
bool is_central_support(const TorusElement& a);
bool in_mixed_torus(const TorusElement& a, const std::vector<int>& ex, const std::vector<int>& inv);

std::ostream& operator<<(std::ostream& os, const TorusElement& a);

}  // namespace rqca
