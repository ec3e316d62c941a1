#include "rqca/discriminant.hpp"

#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace rqca {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<std::size_t>(threads, count);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

Integer integer_power(long long base, long long exp) {
  Integer r = 1, b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return r;
}

namespace {

TorusElement zero_like(const TraceMatrix& m) { return TorusElement(m.at(0).at(0).form()); }

TorusElement one_like(const FormPtr& form) { return TorusElement::one(form); }

}  // namespace

TorusElement determinant_bareiss(TraceMatrix m, const DivisionLimits& limits) {
  const std::size_t n = m.size();
  if (n == 0) throw UsageError("determinant of an empty matrix needs a ring");
  const FormPtr form = m[0][0].form();
  TorusElement prev = one_like(form);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n, best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (!m[i][j].is_zero() && (pr == n || m[i][j].size() < best)) {
          pr = i;
          pc = j;
          best = m[i][j].size();
        }
    if (pr == n) return TorusElement(form);
    if (pr != k) {
      std::swap(m[pr], m[k]);
      negate = !negate;
    }
    if (pc != k) {
      for (auto& row : m) std::swap(row[pc], row[k]);
      negate = !negate;
    }
    const TorusElement& pivot = m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        TorusElement num = pivot * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) num -= m[i][k] * m[k][j];
        m[i][j] = exact_left_divide(num, prev, limits);
      }
      m[i][k] = TorusElement(form);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

TorusElement determinant_cofactor(const TraceMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw UsageError("determinant of an empty matrix needs a ring");
  if (n > 24) throw UsageError("determinant_cofactor: matrix too large");
  std::unordered_map<std::uint32_t, TorusElement> memo;
  const FormPtr form = m[0][0].form();
  std::function<TorusElement(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t mask) {
    if (row == n) return one_like(form);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    TorusElement acc(form);
    int position = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      if (!m[row][j].is_zero()) {
        TorusElement term = m[row][j] * rec(row + 1, mask & ~(1u << j));
        if (position % 2) acc -= term;
        else acc += term;
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(0, (n == 32) ? 0xffffffffu : ((1u << n) - 1));
}

namespace {

int parity(const std::vector<std::size_t>& order) {
  int inv = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) ++inv;
  return inv % 2;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

TorusElement determinant_block(const TraceMatrix& m, const DeterminantOptions& options) {
  try {
    return determinant_bareiss(m, options.division);
  } catch (const NotExactlyDivisible& e) {
    if (m.size() < options.cofactor_limit) return determinant_cofactor(m);
    throw ZeroPivotUnresolvable(std::string("determinant: elimination failed and the matrix is too large for "
                                            "cofactor expansion: ") + e.what());
  }
}

}  // namespace

TorusElement determinant_central(const TraceMatrix& m, const DeterminantOptions& options) {
  const std::size_t n = m.size();
  if (n == 0) throw UsageError("determinant of an empty matrix needs a ring");
  for (const auto& row : m)
    if (row.size() != n) throw UsageError("determinant: matrix is not square");
  if (!options.split_blocks) return determinant_block(m, options);
  // rows are nodes 0..n-1, columns n..2n-1
  std::vector<std::size_t> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!m[i][j].is_zero()) parent[find_root(parent, i)] = find_root(parent, n + j);
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks[find_root(parent, i)].first.push_back(i);
  for (std::size_t j = 0; j < n; ++j) blocks[find_root(parent, n + j)].second.push_back(j);
  std::vector<std::size_t> row_order, col_order;
  TorusElement det = one_like(m[0][0].form());
  for (const auto& [root, rc] : blocks) {
    const auto& [rows, cols] = rc;
    if (rows.size() != cols.size()) return zero_like(m);
    row_order.insert(row_order.end(), rows.begin(), rows.end());
    col_order.insert(col_order.end(), cols.begin(), cols.end());
    TraceMatrix sub(rows.size(), std::vector<TorusElement>());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) sub[a].push_back(m[rows[a]][cols[b]]);
    det = det * determinant_block(sub, options);
    if (det.is_zero()) return det;
  }
  return (parity(row_order) + parity(col_order)) % 2 ? -det : det;
}

UnitVerdict compare_up_to_unit(const TorusElement& d, const TorusElement& expected, const std::vector<int>& inverted) {
  UnitVerdict v;
  if (expected.is_zero()) throw UsageError("compare_up_to_unit: expected value is zero");
  TorusElement q;
  DivisionLimits limits{1 << 20, 1 << 20, std::vector<bool>(d.rank(), true)};
  for (int k : inverted) limits.nonnegative.at(k) = false;
  try {
    q = exact_left_divide(d, expected, limits);
  } catch (const NotExactlyDivisible& e) {
    v.reason = std::string("not divisible: ") + e.what();
    return v;
  }
  v.quotient = q;
  if (!q.is_monomial()) {
    v.reason = "quotient has " + std::to_string(q.size()) + " terms";
    return v;
  }
  const auto& [f, c] = *q.terms().begin();
  const int ell = q.form()->ell();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    const bool inv = std::find(inverted.begin(), inverted.end(), static_cast<int>(i)) != inverted.end();
    if (!inv || f[i] % ell != 0) {
      v.reason = "quotient exponent " + f.to_string() + " is not a unit monomial";
      return v;
    }
  }
  if (!is_unit(c)) {
    v.reason = "quotient coefficient " + c.to_string() + " has norm " + field_norm(c).str();
    return v;
  }
  v.pass = true;
  v.reason = "associate";
  return v;
}

FrozenFactorization factor_frozen_powers(const TorusElement& q, const std::vector<TorusElement>& factors,
                                         const std::vector<int>& free_dirs) {
  FrozenFactorization out{std::vector<long long>(factors.size(), 0), q};
  DivisionLimits limits{1 << 20, 1 << 20, std::vector<bool>(q.rank(), true)};
  for (int k : free_dirs) limits.nonnegative.at(k) = false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (int guard = 0; guard < 100000; ++guard) {
      TorusElement next;
      try {
        next = exact_left_divide(out.remainder, factors[i], limits);
      } catch (const NotExactlyDivisible&) {
        break;
      }
      if (!in_mixed_torus(next, free_dirs, {})) break;
      out.remainder = std::move(next);
      ++out.counts[i];
    }
  }
  return out;
}

LatticeTest ell_lattice(int ell) {
  return [ell](const Exponent& f) {
    for (auto v : f)
      if (v % ell != 0) return false;
    return true;
  };
}

LatticeTest kernel_lattice(const FormPtr& form) {
  return [form](const Exponent& f) {
    for (int v : form->left_row(f))
      if (v != 0) return false;
    return true;
  };
}

std::vector<TorusElement> decompose_over_center(const std::vector<TorusElement>& basis, const TorusElement& element,
                                                const LatticeTest& in_lattice) {
  if (basis.empty()) throw UsageError("decompose_over_center: empty basis");
  const FormPtr form = element.form();
  const RootContext& ring = element.ring();
  std::vector<TorusElement> out(basis.size(), TorusElement(form));
  if (element.is_zero()) return out;
  std::vector<std::pair<std::size_t, Exponent>> unknowns;
  std::map<std::pair<std::size_t, std::vector<long long>>, std::size_t> seen;
  for (const auto& [g, c] : element.terms())
    for (std::size_t m = 0; m < basis.size(); ++m)
      for (const auto& [h, ch] : basis[m].terms()) {
        const Exponent f = g - h;
        if (!in_lattice(f)) continue;
        auto key = std::make_pair(m, f.to_vector());
        if (seen.emplace(key, unknowns.size()).second) unknowns.emplace_back(m, f);
      }
  if (unknowns.empty()) throw DecompositionFailed("decompose_over_center: no candidate central exponents");
  std::map<Exponent, std::size_t, DegLexLess> row_of;
  std::vector<TorusElement> columns;
  for (const auto& [m, f] : unknowns) {
    columns.push_back(TorusElement::monomial(form, f) * basis[m]);
    for (const auto& [e, c] : columns.back().terms()) row_of.emplace(e, row_of.size());
  }
  for (const auto& [e, c] : element.terms()) row_of.emplace(e, row_of.size());
  const std::size_t rows = row_of.size(), cols = unknowns.size();
  std::vector<std::vector<CyclotomicInteger>> a(rows, std::vector<CyclotomicInteger>(cols + 1, CyclotomicInteger(ring)));
  for (std::size_t u = 0; u < cols; ++u)
    for (const auto& [e, c] : columns[u].terms()) a[row_of[e]][u] = c;
  for (const auto& [e, c] : element.terms()) a[row_of[e]][cols] = c;

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (!a[r][col].is_zero()) {
        p = r;
        break;
      }
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][col].is_zero()) continue;
      const CyclotomicInteger factor = a[r][col];
      const CyclotomicInteger piv = a[rank][col];
      for (std::size_t j = col; j <= cols; ++j) a[r][j] = piv * a[r][j] - factor * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!a[r][cols].is_zero()) throw DecompositionFailed("decompose_over_center: element is outside the module");
  if (rank < cols) throw DecompositionFailed("decompose_over_center: decomposition is not unique");
  std::vector<CyclotomicInteger> x(cols, CyclotomicInteger(ring));
  for (std::size_t r = rank; r-- > 0;) {
    const std::size_t col = pivot_col[r];
    CyclotomicInteger rhs = a[r][cols];
    for (std::size_t j = col + 1; j < cols; ++j)
      if (!a[r][j].is_zero()) rhs -= a[r][j] * x[j];
    auto q = exact_divide(rhs, a[r][col]);
    if (!q) throw DecompositionFailed("decompose_over_center: coefficient is not integral");
    x[col] = *q;
  }
  for (std::size_t u = 0; u < cols; ++u) out[unknowns[u].first].add_term(unknowns[u].second, x[u]);
  return out;
}

namespace {

std::vector<Exponent> standard_box(std::size_t n, int ell) {
  std::vector<Exponent> out;
  Exponent r(n);
  for (;;) {
    out.push_back(r);
    std::size_t i = 0;
    while (i < n && ++r[i] == ell) r[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace

FreeModulePresentation<TorusElement> torus_presentation(const FormPtr& form) {
  const int ell = form->ell();
  const std::size_t n = form->rank();
  FreeModulePresentation<TorusElement> p;
  for (const auto& r : standard_box(n, ell)) p.basis.push_back(TorusElement::monomial(form, r));
  p.mult = [](const TorusElement& a, const TorusElement& b) { return a * b; };
  p.act = [](const TorusElement& c, const TorusElement& b) { return c * b; };
  p.add = [](const TorusElement& a, const TorusElement& b) { return a + b; };
  p.central_form = form;
  const std::size_t count = p.basis.size();
  p.decompose = [form, ell, n, count](const TorusElement& a) {
    std::vector<TorusElement> out(count, TorusElement(form));
    for (const auto& [g, c] : a.terms()) {
      Exponent r(n), f(n);
      std::size_t idx = 0, stride = 1;
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = static_cast<std::int32_t>(mod_floor(g[i], ell));
        f[i] = g[i] - r[i];
        idx += stride * r[i];
        stride *= ell;
      }
      out[idx].add_term(f, c.times_zeta(-form->pairing(f, r)));
    }
    return out;
  };
  return p;
}

FreeModulePresentation<TorusElement> torus_presentation(const FormPtr& form, const std::vector<Exponent>& basis) {
  FreeModulePresentation<TorusElement> p;
  for (const auto& r : basis) p.basis.push_back(TorusElement::monomial(form, r));
  p.mult = [](const TorusElement& a, const TorusElement& b) { return a * b; };
  p.act = [](const TorusElement& c, const TorusElement& b) { return c * b; };
  p.add = [](const TorusElement& a, const TorusElement& b) { return a + b; };
  p.central_form = form;
  const auto elements = p.basis;
  const LatticeTest lattice = ell_lattice(form->ell());
  p.decompose = [elements, lattice](const TorusElement& a) { return decompose_over_center(elements, a, lattice); };
  return p;
}

NerveReport check_nerve(const std::vector<Seed>& theta) {
  NerveReport report;
  if (theta.empty()) return report;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t s = 0; s < theta.size(); ++s) index.emplace(canonical_key(theta[s]), s);
  std::vector<std::size_t> parent(theta.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> realized;
  for (std::size_t s = 0; s < theta.size(); ++s)
    for (int k : theta[s].bmat.ex()) {
      auto it = index.find(canonical_key(mutate_seed(theta[s], k)));
      if (it == index.end()) continue;
      realized.push_back(k);
      parent[find_root(parent, s)] = find_root(parent, it->second);
    }
  report.connected = true;
  for (std::size_t s = 0; s < theta.size(); ++s)
    if (find_root(parent, s) != find_root(parent, 0)) report.connected = false;
  for (int k : theta[0].bmat.ex())
    if (std::find(realized.begin(), realized.end(), k) == realized.end()) report.missing_directions.push_back(k);
  return report;
}

ClusterDiscriminantResult judge_discriminant(const TorusElement& d, int ell, std::size_t rank_n,
                                             const std::vector<TorusElement>& frozen_powers,
                                             const std::vector<int>& frozen_positions,
                                             const std::vector<int>& free_dirs, const std::vector<int>& inverted) {
  ClusterDiscriminantResult out;
  out.discriminant = d;
  out.frozen = frozen_positions;
  const long long rank = static_cast<long long>(rank_n);
  const Integer box = integer_power(ell, rank);
  out.constant = integer_power(ell, static_cast<long long>(rank * box));
  std::ostringstream why;
  TorusElement q(d.form());
  bool ok = true;
  for (const auto& [f, c] : d.terms()) {
    auto r = c.divide_integer(out.constant);
    if (!r) {
      ok = false;
      why << "constant ell^(N ell^N) does not divide the discriminant; ";
      break;
    }
    q.add_term(f, *r);
  }
  FrozenFactorization fact{std::vector<long long>(frozen_powers.size(), 0), q};
  if (ok) fact = factor_frozen_powers(q, frozen_powers, free_dirs);
  for (long long c : fact.counts) out.exponents.push_back(c * ell);
  out.expected = TorusElement::constant(d.form(), CyclotomicInteger(d.ring(), out.constant));
  for (std::size_t i = 0; i < frozen_powers.size(); ++i)
    out.expected = out.expected * power(frozen_powers[i], fact.counts[i]);
  if (ok) {
    const UnitVerdict v = compare_up_to_unit(d, out.expected, inverted);
    if (!v.pass) {
      ok = false;
      why << "leftover factor is not a unit (" << v.reason << "); ";
    }
  }
  out.verdict = ok;
  out.detail = ok ? "associate of the closed form" : why.str();
  return out;
}

ClusterDiscriminantResult cluster_discriminant(const std::vector<Seed>& theta,
                                               const FreeModulePresentation<TorusElement>* presentation,
                                               unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  if (theta.empty()) throw NotANerve("cluster_discriminant: empty seed collection");
  const Seed& root = theta[0];
  if (!satisfies_coprime(root.ell(), root.d))
    throw CoprimeViolated("cluster_discriminant: ell must be odd and coprime to every symmetrizer entry");
  const NerveReport nerve = check_nerve(theta);
  if (!nerve.connected) throw NotANerve("cluster_discriminant: seeds are not connected by internal mutations");
  if (!nerve.missing_directions.empty())
    throw NotANerve("cluster_discriminant: direction " + std::to_string(nerve.missing_directions[0] + 1) +
                    " is not realized inside the collection");
  FreeModulePresentation<TorusElement> own;
  if (!presentation) {
    if (!root.bmat.ex().empty())
      throw UsageError("cluster_discriminant: a presentation is required when there are mutable directions");
    for (std::size_t i = 0; i < root.rank(); ++i)
      if (root.frame[i] != TorusElement::monomial(root.torus(), Exponent::unit(root.rank(), i)))
        throw UsageError("cluster_discriminant: the default presentation needs the initial frame");
    own = torus_presentation(root.torus());
    presentation = &own;
  }
  const TorusElement d = determinant_central(trace_matrix(*presentation, threads));
  std::vector<int> free_dirs = root.bmat.ex();
  free_dirs.insert(free_dirs.end(), root.bmat.inv().begin(), root.bmat.inv().end());
  std::vector<int> frozen;
  std::vector<TorusElement> powers;
  for (std::size_t i = 0; i < root.rank(); ++i) {
    const int k = static_cast<int>(i);
    if (std::find(free_dirs.begin(), free_dirs.end(), k) != free_dirs.end()) continue;
    frozen.push_back(k);
    powers.push_back(power(root.frame[i], root.ell()));
  }
  ClusterDiscriminantResult out =
      judge_discriminant(d, root.ell(), root.rank(), powers, frozen, free_dirs, root.bmat.inv());
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace rqca
