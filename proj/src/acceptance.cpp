#include "rqca/acceptance.hpp"

#include "rqca/central.hpp"
#include "rqca/discriminant.hpp"
#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"
#include "rqca/kacmoody.hpp"
#include "rqca/samples.hpp"
#include "rqca/weyl.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace rqca {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
  bool ran = true;
};

CriterionResult timed(int id, std::string name, std::string anchor, double limit, bool stretch,
                      const std::function<Outcome()>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.limit = limit;
  r.stretch = stretch;
  const auto t0 = Clock::now();
  try {
    Outcome o = body();
    r.pass = o.pass;
    r.ran = o.ran;
    r.detail = std::move(o.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.ran && r.seconds > r.limit) {
    r.pass = false;
    r.detail += " (time limit exceeded)";
  }
  return r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<long long>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), std::vector<long long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

IntMatrix reduce_mod(IntMatrix m, int ell) {
  for (auto& row : m)
    for (auto& v : row) v = ((v % ell) + ell) % ell;
  return m;
}

// The two monomials Y, Z whose sum is the mutated variable in direction 0.
std::pair<TorusElement, TorusElement> exchange_monomials(const Seed& seed) {
  const std::vector<long long> b = seed.bmat.column(0);
  const std::vector<long long> pos = positive_part(b), neg = negative_part(b);
  Exponent y = -Exponent::unit(seed.rank(), 0), z = -Exponent::unit(seed.rank(), 0);
  y -= Exponent(neg);
  z += Exponent(pos);
  return {frame_monomial(seed, y), frame_monomial(seed, z)};
}

TorusElement scaled_int(const TorusElement& a, long long k) {
  return a.scaled(CyclotomicInteger(a.ring(), k));
}

// Binomial side of the counterexample: sum over the given (i, coefficient) of coef * Y^{ell-i} Z^i.
TorusElement binomial_side(const TorusElement& y, const TorusElement& z, int ell,
                           const std::vector<std::pair<int, long long>>& terms) {
  TorusElement out(y.form());
  for (auto [i, c] : terms) out += scaled_int(power(y, ell - i) * power(z, i), c);
  return out;
}

Outcome criterion_counterexample() {
  std::ostringstream os;
  bool ok = true;
  for (auto [ell, mid] : std::vector<std::pair<int, std::vector<std::pair<int, long long>>>>{
           {9, {{0, 1}, {3, 3}, {6, 3}, {9, 1}}}, {4, {{0, 1}, {2, 2}, {4, 1}}}}) {
    const Seed seed = counterexample_seed(ell);
    const auto [y, z] = exchange_monomials(seed);
    const TorusElement lhs = power(y + z, ell);
    const TorusElement rhs = binomial_side(y, z, ell, mid);
    const bool match = lhs == rhs && lhs.size() == mid.size();
    ok = ok && match;
    os << "ell=" << ell << (match ? " binomial expansion exact" : " MISMATCH: " + lhs.to_string()) << "; ";
  }
  return {ok, os.str()};
}

Outcome criterion_mutation(std::mt19937_64& rng) {
  const std::vector<int> ells{1, 3, 5, 7};
  std::uniform_int_distribution<std::size_t> pick_ell(0, ells.size() - 1), pick_n(1, 3);
  std::size_t pairs = 0, mutations = 0;
  for (; pairs < 120; ++pairs) {
    const int ell = ells[pick_ell(rng)];
    const RandomPair rp = random_compatible_pair(rng, ell, pick_n(rng));
    const IntMatrix lambda = rp.form->matrix();
    for (int k : rp.bmat.ex()) {
      IntMatrix lam_s[2], b_s[2];
      for (int s : {1, -1}) {
        const IntMatrix e = e_matrix(rp.bmat, k, s), f = f_matrix(rp.bmat, k, s);
        lam_s[s > 0] = reduce_mod(mat_mul(mat_mul(transpose(e), lambda), e), ell);
        b_s[s > 0] = mat_mul(mat_mul(e, rp.bmat.cols()), f);
      }
      std::ostringstream where;
      where << "pair " << pairs << " ell=" << ell << " k=" << k + 1;
      if (lam_s[0] != lam_s[1]) return {false, "Lambda depends on the sign at " + where.str()};
      if (b_s[0] != b_s[1]) return {false, "B depends on the sign at " + where.str()};
      const MutatedPair m = mutate_pair(*rp.form, rp.bmat, k, &rp.d);
      if (m.form->matrix() != lam_s[1] || m.bmat.cols() != b_s[1])
        return {false, "mutate_pair disagrees with the matrix formula at " + where.str()};
      if (!compatible_with(*m.form, m.bmat, rp.d)) return {false, "D not preserved at " + where.str()};
      const MutatedPair back = mutate_pair(*m.form, m.bmat, k, &rp.d);
      if (!(*back.form == *rp.form) || !(back.bmat == rp.bmat)) return {false, "not an involution at " + where.str()};
      ++mutations;
    }
  }
  return {true, std::to_string(pairs) + " pairs, " + std::to_string(mutations) +
                    " mutations: sign-independent, involutive, D preserved"};
}

struct NamedSeed {
  std::string name;
  Seed seed;
};

std::vector<NamedSeed> laurent_samples(int ell) {
  std::vector<NamedSeed> out;
  for (const auto& name : finite_type_names()) out.push_back({name, finite_type_seed(name, ell)});
  for (std::size_t n : {1u, 2u}) {
    WeylSeedResult w = weyl_seed(WeylPresentation::make(n, {}, ell));
    if (!w.compatible) throw Error("Weyl n=" + std::to_string(n) + " seed is not compatible: " + w.compat_error);
    out.push_back({"Weyl" + std::to_string(n), w.seed});
  }
  return out;
}

Outcome criterion_laurent(std::mt19937_64& rng) {
  const std::vector<NamedSeed> samples = laurent_samples(5);
  std::uniform_int_distribution<int> len(1, 8);
  std::size_t words = 0, variables = 0, failures = 0;
  std::string first;
  for (const auto& [name, seed] : samples) {
    const std::vector<int>& ex = seed.bmat.ex();
    std::uniform_int_distribution<std::size_t> dir(0, ex.size() - 1);
    for (int rep = 0; rep < 40; ++rep, ++words) {
      std::vector<int> word(len(rng));
      for (int& w : word) w = ex[dir(rng)];
      try {
        const Seed out = mutate_word(seed, word);
        for (const TorusElement& v : out.frame) {
          ++variables;
          if (!in_mixed_torus(v, ex, seed.bmat.inv())) {
            ++failures;
            if (first.empty()) first = name + ": variable leaves the mixed torus";
          }
        }
      } catch (const NotExactlyDivisible& e) {
        ++failures;
        if (first.empty()) first = name + ": " + e.what();
      }
    }
  }
  std::string detail = std::to_string(words) + " words on " + std::to_string(samples.size()) + " seeds, " +
                       std::to_string(variables) + " variables, " + std::to_string(failures) + " failures";
  if (!first.empty()) detail += "; first: " + first;
  return {failures == 0 && words >= 200, detail};
}

Outcome criterion_central() {
  std::ostringstream os;
  bool ok = true;
  std::size_t powers_checked = 0, identities = 0;
  for (const auto& name : finite_type_names()) {
    const Seed seed = finite_type_seed(name, 5);
    const LabelledGraph g = explore(seed);
    if (!g.complete) return {false, name + ": exchange graph not complete"};
    std::map<std::string, TorusElement> vars;
    for (const GraphNode& node : g.nodes)
      for (const TorusElement& v : node.seed.frame) vars.emplace(v.to_string(), v);
    for (const auto& [key, v] : vars) {
      const TorusElement p = power(v, seed.ell());
      if (!is_central_support(p)) return {false, name + ": " + key + " has a noncentral ell-th power"};
      for (const auto& [key2, u] : vars)
        if (!commutes(p, u)) return {false, name + ": power of " + key + " fails to commute with " + key2};
      ++powers_checked;
    }
    for (const GraphNode& node : g.nodes)
      for (int k : node.seed.bmat.ex()) {
        if (!exchange_identity_check(node.seed, k).pass)
          return {false, name + ": exchange identity fails at word depth " + std::to_string(node.depth)};
        ++identities;
      }
  }
  os << powers_checked << " ell-th powers central, " << identities << " exchange identities hold; ";
  for (auto [ell, mid] : std::vector<std::pair<int, std::vector<std::pair<int, long long>>>>{
           {9, {{3, 3}, {6, 3}}}, {4, {{2, 2}}}}) {
    const Seed seed = counterexample_seed(ell);
    const ExchangeIdentityResult r = exchange_identity_check(seed, 0);
    const auto [y, z] = exchange_monomials(seed);
    const TorusElement expected = binomial_side(y, z, ell, mid);
    const bool exact = !r.pass && r.reduced_residual && *r.reduced_residual == expected;
    ok = ok && exact;
    os << "ell=" << ell << " residual "
       << (r.reduced_residual ? r.reduced_residual->to_string() : std::string("none")) << (exact ? " exact" : " WRONG")
       << "; ";
  }
  return {ok, os.str()};
}

void all_words(const std::vector<int>& ex, std::size_t max_len, std::vector<int>& cur,
               const std::function<void(const std::vector<int>&)>& fn) {
  fn(cur);
  if (cur.size() == max_len) return;
  for (int k : ex) {
    cur.push_back(k);
    all_words(ex, max_len, cur, fn);
    cur.pop_back();
  }
}

Outcome criterion_frobenius() {
  const std::map<std::string, std::size_t> expected_nodes{{"A1xA1", 4}, {"A2", 5}, {"B2", 6}, {"G2", 8}};
  std::ostringstream os;
  bool ok = true;
  std::size_t words = 0;
  for (const auto& name : finite_type_names()) {
    const Seed seed = finite_type_seed(name, 5);
    std::vector<int> cur;
    bool fail = false;
    all_words(seed.bmat.ex(), 5, cur, [&](const std::vector<int>& w) {
      ++words;
      if (!frobenius_check(seed, w).pass) fail = true;
    });
    const ShadowIsoResult iso = classical_shadow_iso(seed);
    const bool good = !fail && iso.isomorphic && iso.powers_match && iso.quantum_nodes == expected_nodes.at(name) &&
                      iso.classical_nodes == iso.quantum_nodes;
    ok = ok && good;
    os << name << ": " << iso.quantum_nodes << " nodes" << (good ? "" : " FAIL") << "; ";
  }
  os << words << " words checked";
  return {ok, os.str()};
}

Outcome criterion_skew_polynomial() {
  std::ostringstream os;
  bool ok = true;
  for (auto [n, ell] : std::vector<std::pair<std::size_t, int>>{{1, 3}, {1, 5}, {2, 3}}) {
    IntMatrix lambda(n, std::vector<long long>(n, 0));
    if (n == 2) {
      lambda[0][1] = 1;
      lambda[1][0] = -1;
    }
    const Seed seed = make_initial_seed(SkewForm::make(ell, lambda), ExchangeMatrix(n, {}, {}, IntMatrix(n)));
    const ClusterDiscriminantResult r = cluster_discriminant({seed});
    long long ln = 1;
    for (std::size_t i = 0; i < n; ++i) ln *= ell;
    const bool exps = r.exponents == std::vector<long long>(n, ln * (ell - 1));
    const bool good = r.verdict && exps && r.constant == integer_power(ell, static_cast<long long>(n) * ln);
    ok = ok && good;
    os << "(" << n << "," << ell << "): " << r.discriminant.to_string() << (good ? "" : " FAIL") << "; ";
  }
  return {ok, os.str()};
}

struct WeylCheck {
  bool pass = false;
  std::string detail;
};

WeylCheck weyl_case(int ell, unsigned threads) {
  const std::size_t n = 1;
  const WeylPtr p = WeylPresentation::make(n, {}, ell);
  const WeylDiscriminantResult dr = weyl_discriminant(p, threads);
  const ClusterDiscriminantResult& r = dr.pipeline;
  long long l2n = 1;
  for (std::size_t i = 0; i < 2 * n; ++i) l2n *= ell;
  const long long exponent = (ell - 1) * l2n;
  const bool exps = r.exponents == std::vector<long long>(n, exponent);
  const bool constant = r.constant == integer_power(ell, 2 * static_cast<long long>(n) * l2n);

  // Associated graded: x w = eps w x on a rank-2 torus, discriminant by the torus pipeline.
  const Seed gr = make_initial_seed(SkewForm::make(ell, {{0, 1}, {-1, 0}}), ExchangeMatrix(2, {}, {}, IntMatrix(2)));
  const ClusterDiscriminantResult grd = cluster_discriminant({gr});
  const auto& [top_e, top_c] = r.discriminant.leading_term();
  const auto& [gr_e, gr_c] = grd.discriminant.leading_term();
  const auto ratio = exact_divide(top_c, gr_c);
  const bool graded = top_e.scaled(ell) == gr_e && ratio && is_unit(*ratio);

  // Alternative target ell^{2 ell^{2n}} z^{(ell-1) ell^n}, expected not to be an associate.
  long long ln = 1;
  for (std::size_t i = 0; i < n; ++i) ln *= ell;
  const TorusElement target_z = weyl_to_central(weyl_power(weyl_central_z(p, 0), (ell - 1) * ln), r.discriminant.form());
  const TorusElement target = target_z.scaled(CyclotomicInteger(target_z.ring(), integer_power(ell, 2 * l2n)));
  const bool target_associate = compare_up_to_unit(r.discriminant, target, {}).pass;

  std::ostringstream os;
  os << "ell=" << ell << ": verdict " << (r.verdict ? "associate" : "NOT associate") << " of " << ell << "^"
     << 2 * n * l2n << " z^" << (r.exponents.empty() ? 0 : r.exponents[0]) << " (expected z^" << exponent << ")"
     << ", graded top term " << (graded ? "matches" : "MISMATCH") << ", z^" << (ell - 1) * ln << " target "
     << (target_associate ? "also associate" : "not an associate") << "; ";
  return {r.verdict && exps && constant && graded, os.str()};
}

Outcome criterion_weyl(const AcceptanceOptions& options) {
  WeylCheck a = weyl_case(3, options.threads);
  if (!options.weyl_ell5) return {a.pass, a.detail};
  WeylCheck b = weyl_case(5, options.threads);
  return {a.pass && b.pass, a.detail + b.detail};
}

void reduced_words(const CartanDatum& datum, std::size_t max_len, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
  if (!cur.empty()) {
    try {
      analyze_word(datum, cur);
    } catch (const NotReduced&) {
      return;  // every extension of a non-reduced word is non-reduced
    }
    out.push_back(cur);
  }
  if (cur.size() == max_len) return;
  for (int i = 0; i < static_cast<int>(datum.rank()); ++i) {
    if (!cur.empty() && cur.back() == i) continue;
    cur.push_back(i);
    reduced_words(datum, max_len, cur, out);
    cur.pop_back();
  }
}

std::string word_string(const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i] + 1);
  return s + ")";
}

// Lambda^T B == c [D; 0] with one c for the whole word.
bool integer_compatible(const UnipotentSeedData& data) {
  const IntMatrix lt_b = mat_mul(transpose(data.lambda), data.bmat.cols());
  const auto& ex = data.bmat.ex();
  for (std::size_t i = 0; i < lt_b.size(); ++i)
    for (std::size_t c = 0; c < ex.size(); ++c) {
      const long long want = static_cast<int>(i) == ex[c] ? data.compat_scale * data.d[c] : 0;
      if (lt_b[i][c] != want) return false;
    }
  return ex.empty() || data.compat_scale != 0;
}

Outcome criterion_unipotent(const AcceptanceOptions& options) {
  std::vector<std::pair<std::string, std::vector<std::vector<int>>>> families;
  for (const char* name : {"A1", "A2", "B2"}) {
    std::vector<int> cur;
    std::vector<std::vector<int>> words;
    reduced_words(CartanDatum::preset(name), 6, cur, words);
    families.emplace_back(name, std::move(words));
  }
  families.push_back({"A1^(1)", {{0, 1, 0, 1}}});
  std::ostringstream os;
  std::size_t count = 0;
  std::set<long long> scales;
  for (const auto& [name, words] : families) {
    const CartanDatum datum = CartanDatum::preset(name);
    for (const auto& w : words) {
      const UnipotentSeedData data = build_unipotent_seed_data(datum, w);
      if (!integer_compatible(data)) return {false, name + " " + word_string(w) + ": not integer-compatible"};
      if (!degree_identity_check(datum, w).pass) return {false, name + " " + word_string(w) + ": degree identity fails"};
      if (!data.bmat.ex().empty()) scales.insert(data.compat_scale);
      ++count;
    }
    os << name << " " << words.size() << " words; ";
  }
  os << "scale";
  for (long long s : scales) os << " " << s;
  os << "; ";
  bool ok = scales.size() == 1;
  TheoremCOptions tc;
  tc.threads = options.threads;
  for (auto [name, w] : std::vector<std::pair<std::string, std::vector<int>>>{{"A1", {0}}, {"A2", {0, 1}}}) {
    const TheoremCResult r = theorem_c_check(CartanDatum::preset(name), w, 3, tc);
    long long ln = 1;
    for (std::size_t i = 0; i < w.size(); ++i) ln *= 3;
    const bool good = r.ran && r.verdict && r.exponents_match && r.central_powers &&
                      r.pipeline.constant == integer_power(3, static_cast<long long>(w.size()) * ln);
    ok = ok && good;
    os << name << " " << word_string(w) << ": " << r.pipeline.discriminant.to_string() << (good ? "" : " FAIL") << "; ";
  }
  os << count << " reduced words";
  return {ok, os.str()};
}

Outcome criterion_stretch(const AcceptanceOptions& options) {
  if (!options.full_disc) return {false, "skipped (enable with --full-disc)", false};
  TheoremCOptions tc;
  tc.full_disc = true;
  tc.threads = options.threads;
  const TheoremCResult r = theorem_c_check(CartanDatum::preset("A2"), {0, 1, 0}, 3, tc);
  std::ostringstream os;
  os << "frozen exponents";
  for (long long e : r.pipeline.exponents) os << " " << e;
  os << " (expected " << r.expected_exponent << "), spot checks " << r.spot_agreed << "/" << r.spot_checked << "; "
     << r.detail;
  const bool good = r.ran && r.verdict && r.exponents_match && r.spot_agreed == r.spot_checked &&
                    r.pipeline.constant == integer_power(3, 81);
  return {good, os.str()};
}

}  // namespace

bool AcceptanceReport::ok() const {
  for (const auto& c : criteria)
    if (!c.stretch && !c.pass) return false;
  return !criteria.empty();
}

std::string AcceptanceReport::table() const {
  std::ostringstream os;
  for (const auto& c : criteria) {
    const char* tag = !c.ran ? "SKIP" : c.pass ? "PASS" : "FAIL";
    os << "[" << tag << "] " << c.id << " " << std::left << std::setw(31) << c.name << " " << std::setw(38) << c.anchor
       << std::right << std::fixed << std::setprecision(3) << std::setw(9) << c.seconds << "s / " << c.limit << "s"
       << (c.stretch ? " (stretch)" : "") << "  " << c.detail << "\n";
  }
  return os.str();
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  std::mt19937_64 rng(options.rng_seed);
  AcceptanceReport rep;
  auto add = [&](CriterionResult r) { rep.criteria.push_back(std::move(r)); };
  add(timed(1, "counterexample fidelity", "(Y+Z)^ell without coprimality", 1, false, criterion_counterexample));
  add(timed(2, "mutation laws", "sign independence, involution", 10, false, [&] { return criterion_mutation(rng); }));
  add(timed(3, "Laurent phenomenon", "exact division, mixed torus", 60, false, [&] { return criterion_laurent(rng); }));
  add(timed(4, "central subalgebra", "ell-th powers, exchange identity", 30, false, criterion_central));
  add(timed(5, "Frobenius and shadow", "classical exchange graph", 60, false, criterion_frobenius));
  add(timed(6, "skew-polynomial discriminants", "ell^{N ell^N} prod x_i^{ell^N(ell-1)}", 60, false,
            criterion_skew_polynomial));
  add(timed(7, "Weyl discriminant", "quantized Weyl algebra, n=1", 300, false,
            [&] { return criterion_weyl(options); }));
  add(timed(8, "unipotent seed data", "reduced words, degree identity", 60, false,
            [&] { return criterion_unipotent(options); }));
  add(timed(9, "sl3 (1,2,1) discriminant", "repeated letter, N=3", 3600, true,
            [&] { return criterion_stretch(options); }));
  return rep;
}

}  // namespace rqca
