#pragma once

#include "rqca/discriminant.hpp"
#include "rqca/seeds.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace rqca {

class WeylPresentation;
using WeylPtr = std::shared_ptr<const WeylPresentation>;

// Linear combination of PBW words x^a w^b; the exponent holds (a_1..a_n, b_1..b_n).
class WeylElement {
 public:
  using TermMap = std::map<Exponent, CyclotomicInteger, DegLexLess>;

  WeylElement() = default;
  explicit WeylElement(WeylPtr p);
  static WeylElement word(WeylPtr p, const Exponent& e, const CyclotomicInteger& c);
  static WeylElement constant(WeylPtr p, const CyclotomicInteger& c);

  const WeylPtr& presentation() const { return p_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponent& e, const CyclotomicInteger& c);

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);
  WeylElement scaled(const CyclotomicInteger& c) const;
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }

  std::string to_string() const;

 private:
  WeylPtr p_;
  TermMap terms_;
};

// Quantized Weyl algebra on x_1..x_n, w_1..w_n with w_i = (eps - 1) y_i.
class WeylPresentation : public std::enable_shared_from_this<WeylPresentation> {
 public:
  static WeylPtr make(std::size_t n, const IntMatrix& q, int ell);

  std::size_t n() const { return n_; }
  const IntMatrix& q() const { return q_; }
  const RootContext& ring() const { return *ring_; }
  int ell() const { return ring_->ell(); }

  // Generator index: x_i -> i, w_i -> n + i (0-based).
  WeylElement generator(std::size_t index) const;
  // Normal form of (word) * generator, memoized.
  WeylElement::TermMap times_generator(const Exponent& word, std::size_t g) const;

 private:
  WeylPresentation(std::size_t n, IntMatrix q, int ell);
  // Normal form of the length-two word h g with h > g.
  WeylElement::TermMap straighten(std::size_t h, std::size_t g) const;
  CyclotomicInteger eps_pow(long long k) const { return zeta_pow(*ring_, 2 * k); }

  std::size_t n_;
  IntMatrix q_;
  const RootContext* ring_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::vector<long long>, std::size_t>, WeylElement::TermMap> cache_;
};

WeylElement weyl_multiply(const WeylElement& a, const WeylElement& b);
WeylElement weyl_power(const WeylElement& a, long long k);
// z_i = (-1)^i [x_i, y_i], i 1-based in the formula, 0-based argument.
WeylElement weyl_central_z(const WeylPtr& p, std::size_t i);

struct LambdaDelta {
  int i = 0;
  int j = 0;
  long long observed = 0;
  long long nominal = 0;
};

struct WeylSeedResult {
  std::vector<WeylElement> frame;
  IntMatrix lambda_observed;  // residues mod ell
  IntMatrix lambda_nominal;
  std::vector<LambdaDelta> delta;
  bool q_commuting = true;
  ExchangeMatrix bmat_nominal;       // from the S index formula
  ExchangeMatrix bmat;               // the one actually used
  std::string bmat_source;           // "nominal" or "derived"
  bool compatible = false;
  std::string compat_error;
  std::vector<long long> d;
  std::vector<int> frozen_twist;     // frozen value is zeta^{c_i} z_i
  bool mutation_matches_w = false;   // mu_i(M(e_i)) = unit * w_i for all i
  Seed seed;                         // torus model on Lambda_obs (valid when compatible)
  SeedReport nominal_report;         // nominal block form checked against the Weyl frame
};

WeylSeedResult weyl_seed(const WeylPtr& p);

struct WeylDiscriminantResult {
  ClusterDiscriminantResult pipeline;
  std::vector<TorusElement> z_ell;  // z_i^ell in central coordinates
  std::size_t rank = 0;
};

FreeModulePresentation<WeylElement> weyl_module_presentation(const WeylPtr& p);
// Converts a central element (all exponents divisible by ell) to central coordinates.
TorusElement weyl_to_central(const WeylElement& a, const FormPtr& central_form);
WeylDiscriminantResult weyl_discriminant(const WeylPtr& p, unsigned threads = 1);

}  // namespace rqca
