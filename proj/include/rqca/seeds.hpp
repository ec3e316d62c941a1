#pragma once

#include "rqca/torus.hpp"

#include <string>
#include <vector>

namespace rqca {

using IntMatrix = std::vector<std::vector<long long>>;

// Extended exchange matrix: N rows, one column per mutable index. Indices are 0-based.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  ExchangeMatrix(std::size_t n, std::vector<int> ex, std::vector<int> inv, IntMatrix cols);

  std::size_t rank() const { return n_; }
  const std::vector<int>& ex() const { return ex_; }
  const std::vector<int>& inv() const { return inv_; }
  const IntMatrix& cols() const { return b_; }  // N x |ex|
  long long at(std::size_t i, std::size_t col) const { return b_[i][col]; }
  // Column position of mutable index k, or -1.
  int column_of(int k) const;
  bool is_mutable(int k) const { return column_of(k) >= 0; }
  // Column b^k as a vector of length N.
  std::vector<long long> column(int k) const;

  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    return a.n_ == b.n_ && a.ex_ == b.ex_ && a.inv_ == b.inv_ && a.b_ == b.b_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<int> ex_;
  std::vector<int> inv_;
  IntMatrix b_;
};

// Minimal positive symmetrizer of the principal part, one entry per mutable index.
std::vector<long long> skew_symmetrizer(const ExchangeMatrix& bmat);

// Smallest D (minimal symmetrizer rescaled per connected component) making the pair ell-compatible.
std::vector<long long> check_compatible(const SkewForm& form, const ExchangeMatrix& bmat);
// Verifies the congruences for a given D; returns false and the failing (i, j) through out-params.
bool compatible_with(const SkewForm& form, const ExchangeMatrix& bmat, const std::vector<long long>& d,
                     int* bad_i = nullptr, int* bad_j = nullptr);

bool satisfies_coprime(int ell, const std::vector<long long>& d);

IntMatrix e_matrix(const ExchangeMatrix& bmat, int k, int s);
IntMatrix f_matrix(const ExchangeMatrix& bmat, int k, int s);

struct MutatedPair {
  FormPtr form;
  ExchangeMatrix bmat;
};
MutatedPair mutate_pair(const SkewForm& form, const ExchangeMatrix& bmat, int k,
                        const std::vector<long long>* d = nullptr);

struct Seed {
  FormPtr form;   // Lambda of this seed
  ExchangeMatrix bmat;
  std::vector<TorusElement> frame;  // cluster variables in initial-torus coordinates
  std::vector<long long> d;

  std::size_t rank() const { return frame.size(); }
  int ell() const { return form->ell(); }
  const FormPtr& torus() const { return frame.front().form(); }
};

// Initial seed with frame X^{e_j}; the form is the ambient torus form.
Seed make_initial_seed(FormPtr form, ExchangeMatrix bmat);

TorusElement frame_monomial(const Seed& seed, const Exponent& g);
Seed mutate_seed(const Seed& seed, int k, const DivisionLimits& limits = {});
Seed mutate_word(const Seed& seed, const std::vector<int>& word, const DivisionLimits& limits = {});

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct SeedReport {
  bool ok = true;
  std::vector<CheckResult> checks;
};

SeedReport validate_seed(const Seed& seed);

// t_j = Lambda(-e_j - [b^j]_-, -e_j + [b^j]_+) mod ell.
int t_constant(const Seed& seed, int j);

// Splits of a column: positive part and nonpositive part.
std::vector<long long> positive_part(const std::vector<long long>& b);
std::vector<long long> negative_part(const std::vector<long long>& b);

}  // namespace rqca
