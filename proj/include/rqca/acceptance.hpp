#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rqca {

struct AcceptanceOptions {
  bool full_disc = false;  // also run the sl3 (1,2,1) discriminant
  unsigned threads = 1;
  std::uint64_t rng_seed = 20240917;
  bool weyl_ell5 = true;   // n = 1, ell = 5 Weyl discriminant alongside ell = 3
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string anchor;  // the identity or family being exercised
  bool pass = false;
  bool stretch = false;
  bool ran = true;
  double seconds = 0;
  double limit = 0;
  std::string detail;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  // All non-stretch criteria pass within their time limits.
  bool ok() const;
  std::string table() const;
};

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

}  // namespace rqca
