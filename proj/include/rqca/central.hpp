#pragma once

#include "rqca/seeds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rqca {

struct CentralElement {
  TorusElement value;
  int seed_id = -1;
  int variable = -1;  // 0-based position of the powered cluster variable
  bool central_support = false;
  bool commutes_with_frame = false;
  std::string provenance() const;
};

CentralElement ell_power(const Seed& seed, int j, int seed_id = -1);

struct ExchangeIdentityResult {
  bool pass = false;
  TorusElement lhs;
  TorusElement rhs;
  TorusElement residual;  // lhs - rhs
  // residual with M(e_k)^ell divided out on the left, when that division is exact
  std::optional<TorusElement> reduced_residual;
};

ExchangeIdentityResult exchange_identity_check(const Seed& seed, int k);

// Substitutes x_j -> M(e_j)^ell of `seed` into a classical (ell = 1) Laurent polynomial.
TorusElement frobenius_substitute(const TorusElement& classical, const Seed& seed);

struct FrobeniusResult {
  bool pass = false;
  std::vector<int> failing;  // positions whose ell-th power disagrees
};

FrobeniusResult frobenius_check(const Seed& seed, const std::vector<int>& word, const DivisionLimits& limits = {});

bool full_center_membership(const Seed& seed, const TorusElement& a);

}  // namespace rqca
