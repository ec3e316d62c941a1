#pragma once

#include "rqca/errors.hpp"
#include "rqca/seeds.hpp"

#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace rqca {

// Central coefficients are TorusElements over `central_form`; they commute with each other.
template <class Element>
struct FreeModulePresentation {
  std::vector<Element> basis;
  std::function<Element(const Element&, const Element&)> mult;
  std::function<std::vector<TorusElement>(const Element&)> decompose;
  // c * element, used for round trips
  std::function<Element(const TorusElement&, const Element&)> act;
  std::function<Element(const Element&, const Element&)> add;
  FormPtr central_form;
};

using TraceMatrix = std::vector<std::vector<TorusElement>>;

template <class Element>
TorusElement regular_trace(const FreeModulePresentation<Element>& p, const Element& a) {
  TorusElement tr(p.central_form);
  for (std::size_t m = 0; m < p.basis.size(); ++m) {
    const std::vector<TorusElement> coeffs = p.decompose(p.mult(a, p.basis[m]));
    tr += coeffs.at(m);
  }
  return tr;
}

template <class Element>
Element recompose(const FreeModulePresentation<Element>& p, const std::vector<TorusElement>& coeffs) {
  Element out = p.act(TorusElement(p.central_form), p.basis.at(0));
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (!coeffs[m].is_zero()) out = p.add(out, p.act(coeffs[m], p.basis[m]));
  return out;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

template <class Element>
TraceMatrix trace_matrix(const FreeModulePresentation<Element>& p, unsigned threads = 1) {
  const std::size_t r = p.basis.size();
  TraceMatrix m(r, std::vector<TorusElement>(r, TorusElement(p.central_form)));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) cells.emplace_back(i, j);
  parallel_for(cells.size(), threads, [&](std::size_t c) {
    const auto [i, j] = cells[c];
    m[i][j] = regular_trace(p, p.mult(p.basis[i], p.basis[j]));
  });
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (m[i][j] != m[j][i])
        throw Error("trace_matrix: tr(y_i y_j) != tr(y_j y_i) at (" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ")");
  return m;
}

struct DeterminantOptions {
  bool split_blocks = true;
  std::size_t cofactor_limit = 12;
  DivisionLimits division{1 << 20, 1 << 20, {}};
};

TorusElement determinant_bareiss(TraceMatrix m, const DivisionLimits& limits = {1 << 20, 1 << 20, {}});
TorusElement determinant_cofactor(const TraceMatrix& m);
TorusElement determinant_central(const TraceMatrix& m, const DeterminantOptions& options = {});

struct UnitVerdict {
  bool pass = false;
  std::optional<TorusElement> quotient;
  std::string reason;
};

UnitVerdict compare_up_to_unit(const TorusElement& d, const TorusElement& expected, const std::vector<int>& inverted);

// Repeatedly divides q by each factor while the quotient stays polynomial outside `free_dirs`.
struct FrozenFactorization {
  std::vector<long long> counts;
  TorusElement remainder;
};
FrozenFactorization factor_frozen_powers(const TorusElement& q, const std::vector<TorusElement>& factors,
                                         const std::vector<int>& free_dirs);

// Torus presentations: basis X^r, r in [0, ell)^N, over the lattice ell Z^N.
FreeModulePresentation<TorusElement> torus_presentation(const FormPtr& form);
FreeModulePresentation<TorusElement> torus_presentation(const FormPtr& form, const std::vector<Exponent>& basis);

// Central lattice test for decompose_over_center: true for exponents of central coefficients.
using LatticeTest = std::function<bool(const Exponent&)>;
LatticeTest ell_lattice(int ell);
LatticeTest kernel_lattice(const FormPtr& form);

std::vector<TorusElement> decompose_over_center(const std::vector<TorusElement>& basis, const TorusElement& element,
                                                const LatticeTest& in_lattice);

struct ClusterDiscriminantResult {
  TorusElement discriminant;
  TorusElement expected;
  bool verdict = false;
  Integer constant;                 // ell^{N ell^N}
  std::vector<int> frozen;          // positions of noninverted frozen variables
  std::vector<long long> exponents; // total exponent of each frozen variable
  std::string detail;
  double seconds = 0;
};

struct NerveReport {
  bool connected = false;
  std::vector<int> missing_directions;
};
NerveReport check_nerve(const std::vector<Seed>& theta);

ClusterDiscriminantResult cluster_discriminant(const std::vector<Seed>& theta,
                                               const FreeModulePresentation<TorusElement>* presentation = nullptr,
                                               unsigned threads = 1);

// Shared tail of the pipeline: divides out ell^{N ell^N}, factors frozen ell-th powers, checks the unit.
ClusterDiscriminantResult judge_discriminant(const TorusElement& d, int ell, std::size_t rank_n,
                                             const std::vector<TorusElement>& frozen_powers,
                                             const std::vector<int>& frozen_positions,
                                             const std::vector<int>& free_dirs, const std::vector<int>& inverted);

Integer integer_power(long long base, long long exp);

}  // namespace rqca
