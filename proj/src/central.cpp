#include "rqca/central.hpp"

#include "rqca/exchange_graph.hpp"
#include "rqca/errors.hpp"

namespace rqca {

std::string CentralElement::provenance() const {
  std::string s = "M(e_" + std::to_string(variable + 1) + ")^l";
  if (seed_id >= 0) s += " of seed " + std::to_string(seed_id);
  return s;
}

CentralElement ell_power(const Seed& seed, int j, int seed_id) {
  if (j < 0 || static_cast<std::size_t>(j) >= seed.rank()) throw UsageError("ell_power: index out of range");
  CentralElement out;
  out.value = power(seed.frame[j], seed.ell());
  out.seed_id = seed_id;
  out.variable = j;
  out.central_support = is_central_support(out.value);
  out.commutes_with_frame = true;
  for (const auto& v : seed.frame)
    if (!commutes(out.value, v)) out.commutes_with_frame = false;
  return out;
}

ExchangeIdentityResult exchange_identity_check(const Seed& seed, int k) {
  const std::vector<long long> b = seed.bmat.column(k);
  const int ell = seed.ell();
  const Seed mutated = mutate_seed(seed, k);
  std::vector<TorusElement> powers;
  for (const auto& v : seed.frame) powers.push_back(power(v, ell));
  const TorusElement pk = powers[k];
  ExchangeIdentityResult r;
  r.lhs = pk * power(mutated.frame[k], ell);
  TorusElement pos = TorusElement::one(seed.torus());
  TorusElement neg = TorusElement::one(seed.torus());
  for (std::size_t i = 0; i < seed.rank(); ++i) {
    if (b[i] > 0) pos = pos * power(powers[i], b[i]);
    if (b[i] < 0) neg = neg * power(powers[i], -b[i]);
  }
  r.rhs = pos + neg;
  r.residual = r.lhs - r.rhs;
  r.pass = r.residual.is_zero();
  try {
    r.reduced_residual = exact_left_divide(r.residual, pk);
  } catch (const NotExactlyDivisible&) {
  }
  return r;
}

TorusElement frobenius_substitute(const TorusElement& classical, const Seed& seed) {
  const int ell = seed.ell();
  const RootContext& ring = seed.torus()->ring();
  std::vector<TorusElement> powers;
  for (const auto& v : seed.frame) powers.push_back(power(v, ell));
  TorusElement out(seed.torus());
  for (const auto& [f, c] : classical.terms()) {
    const auto value = c.as_integer();
    if (!value) throw UsageError("frobenius_substitute: classical coefficient is not an integer");
    TorusElement term = TorusElement::constant(seed.torus(), CyclotomicInteger(ring, *value));
    for (std::size_t j = 0; j < f.size(); ++j)
      if (f[j] != 0) term = term * power(powers[j], f[j]);
    out += term;
  }
  return out;
}

FrobeniusResult frobenius_check(const Seed& seed, const std::vector<int>& word, const DivisionLimits& limits) {
  if (!satisfies_coprime(seed.ell(), seed.d))
    throw CoprimeViolated("frobenius_check: ell must be odd and coprime to every symmetrizer entry");
  const Seed classical = mutate_word(make_classical_seed(seed.bmat), word, limits);
  const Seed quantum = mutate_word(seed, word, limits);
  FrobeniusResult out;
  out.pass = true;
  for (std::size_t j = 0; j < seed.rank(); ++j) {
    if (frobenius_substitute(classical.frame[j], seed) != power(quantum.frame[j], seed.ell())) {
      out.pass = false;
      out.failing.push_back(static_cast<int>(j));
    }
  }
  return out;
}

bool full_center_membership(const Seed& seed, const TorusElement& a) {
  for (const auto& [f, c] : a.terms())
    for (int v : seed.form->left_row(f))
      if (v != 0) return false;
  return true;
}

}  // namespace rqca
