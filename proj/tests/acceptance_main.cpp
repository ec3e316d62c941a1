#include "rqca/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  rqca::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full-disc") == 0) options.full_disc = true;
    else if (std::strcmp(argv[i], "--rng-seed") == 0 && i + 1 < argc) options.rng_seed = std::stoull(argv[++i]);
    else {
      std::cerr << "usage: rqca_acceptance [--full-disc] [--rng-seed N]\n";
      return 2;
    }
  }
  const rqca::AcceptanceReport report = rqca::run_acceptance(options);
  std::cout << report.table();
  for (const auto& c : report.criteria)
    if (c.stretch && c.ran && !c.pass) std::cout << "note: stretch criterion " << c.id << " failed\n";
  std::cout << (report.ok() ? "ACCEPTANCE PASS\n" : "ACCEPTANCE FAIL\n");
  return report.ok() ? 0 : 1;
}
