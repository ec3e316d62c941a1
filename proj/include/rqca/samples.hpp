#pragma once

#include "rqca/seeds.hpp"

#include <random>
#include <string>
#include <vector>

namespace rqca {

// Rank-2 finite types on Lambda = [[0,1],[-1,0]] and A1 x A1 on a rank-4 torus.
// name: "A1xA1", "A2", "B2", "G2".
Seed finite_type_seed(const std::string& name, int ell);
std::vector<std::string> finite_type_names();

// Lambda = [[0,1],[-1,0]], B = [[0,1],[-3,0]]; the coprime condition fails for ell = 9 and ell = 4.
Seed counterexample_seed(int ell);

struct RandomPair {
  FormPtr form;
  ExchangeMatrix bmat;
  std::vector<long long> d;
};

// B~ = [B; I_n] with a random skew-symmetrizable B, Lambda = [[0, -D], [D, -DB]],
// scrambled by random mutations and multiples of ell.
RandomPair random_compatible_pair(std::mt19937_64& rng, int ell, std::size_t n);

}  // namespace rqca
