#pragma once

#include "rqca/discriminant.hpp"
#include "rqca/seeds.hpp"

#include <string>
#include <vector>

namespace rqca {

// Symmetrizable generalized Cartan matrix with symmetrizer d (D A symmetric).
struct CartanDatum {
  IntMatrix a;
  std::vector<long long> d;

  // Validates; an empty d is replaced by the minimal symmetrizer.
  static CartanDatum make(IntMatrix a, std::vector<long long> d = {});
  // "A1", "A2", "B2", "G2", "A1^(1)"
  static CartanDatum preset(const std::string& name);
  std::size_t rank() const { return a.size(); }
};

// base in fundamental-weight coordinates plus a root-lattice offset in simple-root coordinates.
struct Weight {
  std::vector<long long> base;
  std::vector<long long> root;

  bool in_root_lattice() const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

Weight fundamental_weight(const CartanDatum& datum, int i);
Weight simple_root(const CartanDatum& datum, int i);
Weight zero_weight(const CartanDatum& datum);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
// <h_i, mu>
long long coroot_pairing(const CartanDatum& datum, const Weight& mu, int i);
Weight reflect(const CartanDatum& datum, const Weight& mu, int i);
// s_{word[first]} ... s_{word[last-1]} (mu)
Weight apply_word(const CartanDatum& datum, const std::vector<int>& word, std::size_t first, std::size_t last,
                  Weight mu);
// Simple-root coordinates of gamma; throws NotInRootLattice.
std::vector<long long> root_coordinates(const CartanDatum& datum, const Weight& gamma);
// (mu, gamma) with (alpha_i, alpha_i) = 2 d_i.
long long pair_with_root_lattice(const CartanDatum& datum, const Weight& mu, const Weight& gamma);

struct ReducedWordData {
  std::vector<int> word;            // 0-based letters
  std::vector<Weight> beta;         // beta_k = w_{<=k-1}(alpha_{i_k})
  std::vector<int> p;               // predecessor, -1 if none
  std::vector<int> s;               // successor, N if none
  std::vector<int> ex;              // positions with a later repeat
  std::vector<int> support;         // sorted letters
  std::vector<int> last;            // last position of each support letter
};

// Throws NotReduced when some beta_k leaves Q_+.
ReducedWordData analyze_word(const CartanDatum& datum, const std::vector<int>& word);

struct UnipotentSeedData {
  ReducedWordData word;
  IntMatrix lambda;                 // Lambda_w over the integers
  ExchangeMatrix bmat;              // B^w, N x |ex(w)|
  std::vector<long long> d;         // d_{i_k}, k in ex(w)
  long long compat_scale = 0;       // Lambda_w^T B^w = compat_scale * [D; 0]
  IntMatrix a_doubled;              // 2 a[j,k] for j <= k, same letter pattern not required
};

// Lambda_w(j, k) = ((w_{<=k} + 1) varpi_{i_k}, (w_{<=j} - 1) varpi_{i_j}) for j < k.
// Throws NotReduced, CompatibilityFailed.
UnipotentSeedData build_unipotent_seed_data(const CartanDatum& datum, const std::vector<int>& word);

struct DegreeIdentity {
  bool pass = false;
  std::vector<long long> beta_sum;   // simple-root coordinates
  std::vector<long long> weight_side;
};

DegreeIdentity degree_identity_check(const CartanDatum& datum, const std::vector<int>& word);

struct TheoremCOptions {
  bool full_disc = false;           // run the repeated-letter case
  unsigned threads = 1;
  std::size_t spot_checks = 4;      // trace entries recomputed through decompose_over_center
};

struct TheoremCResult {
  std::string family;               // "distinct" or "repeat"
  bool ran = false;
  bool verdict = false;
  ClusterDiscriminantResult pipeline;
  long long expected_exponent = 0;  // ell^N (ell - 1) on each frozen variable
  bool exponents_match = false;
  bool central_powers = false;      // ell-th powers of all nerve variables central
  std::size_t nerve_size = 0;
  std::size_t spot_checked = 0;
  std::size_t spot_agreed = 0;
  std::string detail;
};

// Supported words: all letters distinct, or the pattern (i, j, i).  Throws UnsupportedWord, CoprimeViolated.
TheoremCResult theorem_c_check(const CartanDatum& datum, const std::vector<int>& word, int ell,
                               const TheoremCOptions& options = {});

}  // namespace rqca
