#include "rqca/acceptance.hpp"
#include "rqca/central.hpp"
#include "rqca/discriminant.hpp"
#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"
#include "rqca/json_io.hpp"
#include "rqca/kacmoody.hpp"
#include "rqca/weyl.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace rqca;

namespace {

enum Exit { kOk = 0, kVerdict = 1, kUsage = 2, kBudget = 3 };

struct Config {
  bool json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t rng_seed = AcceptanceOptions{}.rng_seed;
  std::size_t max_nodes = 10000;
  int max_depth = 64;
  long long safety_factor = 4;
  bool full_disc = false;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long k = 0;
    try {
      k = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || k < 1) throw UsageError("word letters are positive integers: " + text);
    out.push_back(static_cast<int>(k - 1));
  }
  return out;
}

std::string word_text(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i] + 1);
  return s;
}

DivisionLimits division(const Config& c) {
  DivisionLimits d;
  d.safety_factor = c.safety_factor;
  return d;
}

void emit(const Config& c, const Json& j, const std::string& text) {
  if (c.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string vec_text(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

int cmd_compat(const Config& c, const std::string& path) {
  const Json in = read_json(path);
  Seed seed;
  try {
    seed = seed_from_json(in);
  } catch (const NotEllCompatible& e) {
    emit(c, Json{{"compatible", false}, {"reason", e.what()}}, std::string("not compatible: ") + e.what() + "\n");
    return kVerdict;
  }
  const bool coprime = satisfies_coprime(seed.ell(), seed.d);
  if (!coprime) std::cerr << "warning: (Coprime) fails: ell=" << seed.ell() << ", D=" << vec_text(seed.d) << "\n";
  const SeedReport report = validate_seed(seed);
  Json checks = Json::array();
  std::ostringstream os;
  os << "compatible, D = diag" << vec_text(seed.d) << ", coprime " << (coprime ? "yes" : "no") << "\n";
  for (const auto& ch : report.checks) {
    checks.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
    os << "  " << (ch.pass ? "ok  " : "FAIL") << " " << ch.name << (ch.detail.empty() ? "" : ": " + ch.detail) << "\n";
  }
  emit(c, Json{{"compatible", true}, {"d", seed.d}, {"coprime", coprime}, {"checks", checks}, {"ok", report.ok}},
       os.str());
  return report.ok ? kOk : kVerdict;
}

int cmd_mutate(const Config& c, const std::string& path, const std::string& word_arg) {
  const Seed seed = seed_from_json(read_json(path));
  const std::vector<int> word = parse_word(word_arg);
  const Seed out = mutate_word(seed, word, division(c));
  std::ostringstream os;
  os << "mu_{" << word_text(word) << "}: D = diag" << vec_text(out.d) << "\n";
  for (std::size_t i = 0; i < out.rank(); ++i) os << "  x" << i + 1 << " = " << out.frame[i].to_string() << "\n";
  emit(c, seed_to_json(out), os.str());
  return kOk;
}

int cmd_explore(const Config& c, const std::string& path, const std::string& dot_path, bool shadow) {
  const Seed seed = seed_from_json(read_json(path));
  ExploreLimits limits;
  limits.max_nodes = c.max_nodes;
  limits.max_depth = c.max_depth;
  limits.division = division(c);
  const LabelledGraph g = explore(seed, limits);
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw UsageError("cannot write " + dot_path);
    out << to_dot(g);
  }
  Json j{{"nodes", g.nodes.size()}, {"edges", g.edge_count()}, {"complete", g.complete}};
  std::ostringstream os;
  os << g.nodes.size() << " nodes, " << g.edge_count() << " edges, " << (g.complete ? "complete" : "incomplete") << "\n";
  bool ok = true;
  if (shadow) {
    const ShadowIsoResult iso = classical_shadow_iso(seed, limits);
    j["shadow"] = {{"isomorphic", iso.isomorphic},     {"powers_match", iso.powers_match},
                   {"quantum_nodes", iso.quantum_nodes}, {"classical_nodes", iso.classical_nodes},
                   {"detail", iso.detail}};
    os << "classical shadow: " << (iso.isomorphic ? "isomorphic" : "NOT isomorphic") << ", ell-th powers "
       << (iso.powers_match ? "match" : "DIFFER") << (iso.detail.empty() ? "" : " (" + iso.detail + ")") << "\n";
    ok = iso.isomorphic && iso.powers_match;
  }
  emit(c, j, os.str());
  if (g.budget_exceeded) return kBudget;
  return ok ? kOk : kVerdict;
}

int cmd_frobenius(const Config& c, const std::string& path, const std::string& word_arg, int all_len) {
  const Seed seed = seed_from_json(read_json(path));
  std::vector<std::vector<int>> words;
  if (all_len >= 0) {
    std::vector<std::vector<int>> layer{{}};
    words.push_back({});
    for (int len = 1; len <= all_len; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : layer)
        for (int k : seed.bmat.ex()) {
          next.push_back(w);
          next.back().push_back(k);
        }
      words.insert(words.end(), next.begin(), next.end());
      layer = std::move(next);
    }
  } else {
    words.push_back(parse_word(word_arg));
  }
  Json failures = Json::array();
  std::ostringstream os;
  for (const auto& w : words) {
    const FrobeniusResult r = frobenius_check(seed, w, division(c));
    if (r.pass) continue;
    std::vector<int> pos;
    for (int p : r.failing) pos.push_back(p + 1);
    failures.push_back({{"word", word_text(w)}, {"failing", pos}});
    os << "FAIL word (" << word_text(w) << ")\n";
  }
  os << words.size() << " words, " << failures.size() << " failures\n";
  emit(c, Json{{"words", words.size()}, {"failures", failures}, {"pass", failures.empty()}}, os.str());
  return failures.empty() ? kOk : kVerdict;
}

std::string disc_text(const ClusterDiscriminantResult& r) {
  std::ostringstream os;
  os << "verdict: " << (r.verdict ? "pass" : "FAIL") << " (" << r.detail << ")\n"
     << "discriminant: " << r.discriminant.to_string() << "\n"
     << "expected:     " << r.expected.to_string() << "\n"
     << "frozen exponents: ";
  for (long long e : r.exponents) os << e << " ";
  os << "\nruntime: " << r.seconds << "s\n";
  return os.str();
}

CartanDatum cartan_arg(const Json& j) {
  if (j.is_string()) return CartanDatum::preset(j.get<std::string>());
  return cartan_from_json(j);
}

int report_theorem_c(const Config& c, const TheoremCResult& r) {
  Json j = to_json(r.pipeline);
  j["family"] = r.family;
  j["ran"] = r.ran;
  j["expected_exponent"] = r.expected_exponent;
  j["exponents_match"] = r.exponents_match;
  j["central_powers"] = r.central_powers;
  j["nerve_size"] = r.nerve_size;
  j["spot_checks"] = {{"checked", r.spot_checked}, {"agreed", r.spot_agreed}};
  std::ostringstream os;
  if (!r.ran) {
    os << r.family << " word: " << r.detail << "\n";
  } else {
    os << r.family << " word, nerve of " << r.nerve_size << " seeds, ell-th powers "
       << (r.central_powers ? "central" : "NOT central") << "\n"
       << disc_text(r.pipeline);
  }
  emit(c, j, os.str());
  if (!r.ran) return kOk;
  return r.verdict && r.exponents_match && r.central_powers ? kOk : kVerdict;
}

int cmd_disc(const Config& c, const std::string& path) {
  const Json in = read_json(path);
  try {
    const std::string type = in.at("type").get<std::string>();
    if (type == "torus") {
      std::vector<Seed> theta;
      if (in.contains("seeds"))
        for (const Json& s : in.at("seeds")) theta.push_back(seed_from_json(s));
      else
        theta.push_back(seed_from_json(in.at("seed")));
      ClusterDiscriminantResult r;
      if (in.contains("basis")) {
        std::vector<Exponent> basis;
        for (const Json& e : in.at("basis")) basis.emplace_back(e.get<std::vector<long long>>());
        const auto p = torus_presentation(theta.front().torus(), basis);
        r = cluster_discriminant(theta, &p, c.threads);
      } else {
        r = cluster_discriminant(theta, nullptr, c.threads);
      }
      emit(c, to_json(r), disc_text(r));
      return r.verdict ? kOk : kVerdict;
    }
    if (type == "weyl") {
      const IntMatrix q = in.contains("Q") ? matrix_from_json(in.at("Q")) : IntMatrix{};
      const WeylDiscriminantResult r =
          weyl_discriminant(WeylPresentation::make(in.at("n").get<std::size_t>(), q, in.at("l").get<int>()), c.threads);
      emit(c, to_json(r.pipeline), disc_text(r.pipeline));
      return r.pipeline.verdict ? kOk : kVerdict;
    }
    if (type == "unipotent") {
      TheoremCOptions o;
      o.full_disc = c.full_disc || in.value("full_disc", false);
      o.threads = c.threads;
      return report_theorem_c(
          c, theorem_c_check(cartan_arg(in.at("cartan")), word_from_json(in.at("word")), in.at("l").get<int>(), o));
    }
    throw UsageError("disc: unknown type " + type);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("disc: ") + e.what());
  }
}

int cmd_weyl(const Config& c, std::size_t n, int ell, const std::string& q_path, bool skip_disc) {
  const IntMatrix q = q_path.empty() ? IntMatrix{} : matrix_from_json(read_json(q_path));
  const WeylPtr p = WeylPresentation::make(n, q, ell);
  const WeylSeedResult s = weyl_seed(p);
  Json j{{"q_commuting", s.q_commuting},
         {"compatible", s.compatible},
         {"compat_error", s.compat_error},
         {"lambda_observed", s.lambda_observed},
         {"lambda_nominal", s.lambda_nominal},
         {"B", s.bmat.cols()},
         {"B_source", s.bmat_source},
         {"d", s.d},
         {"frozen_twist", s.frozen_twist},
         {"mutation_matches_w", s.mutation_matches_w}};
  std::ostringstream os;
  os << "frame q-commuting: " << (s.q_commuting ? "yes" : "no") << ", compatible: " << (s.compatible ? "yes" : "no")
     << " (B from " << s.bmat_source << " formula), D = diag" << vec_text(s.d) << "\n"
     << "mutation recovers w_i: " << (s.mutation_matches_w ? "yes" : "no") << "\n";
  if (!s.compat_error.empty()) os << "note: " << s.compat_error << "\n";
  for (const LambdaDelta& d : s.delta)
    os << "Lambda(" << d.i + 1 << "," << d.j + 1 << "): observed " << d.observed << ", nominal " << d.nominal << "\n";
  bool ok = s.q_commuting && s.compatible && s.mutation_matches_w;
  if (!skip_disc) {
    const WeylDiscriminantResult r = weyl_discriminant(p, c.threads);
    j["discriminant"] = to_json(r.pipeline);
    os << disc_text(r.pipeline);
    ok = ok && r.pipeline.verdict;
  }
  emit(c, j, os.str());
  return ok ? kOk : kVerdict;
}

int cmd_unip(const Config& c, const std::string& cartan_path, const std::string& preset, const std::string& word_arg,
             int ell) {
  if (cartan_path.empty() == preset.empty()) throw UsageError("unip: give exactly one of --cartan and --preset");
  const CartanDatum datum = preset.empty() ? cartan_from_json(read_json(cartan_path)) : CartanDatum::preset(preset);
  const std::vector<int> word = parse_word(word_arg);
  const UnipotentSeedData data = build_unipotent_seed_data(datum, word);
  const DegreeIdentity deg = degree_identity_check(datum, word);
  if (!c.json) {
    std::cout << "Lambda_w:\n";
    for (const auto& row : data.lambda) std::cout << "  " << vec_text(row) << "\n";
    std::cout << "B^w columns:";
    for (std::size_t col = 0; col < data.bmat.ex().size(); ++col) {
      std::vector<long long> v;
      for (std::size_t i = 0; i < data.bmat.rank(); ++i) v.push_back(data.bmat.at(i, col));
      std::cout << " " << data.bmat.ex()[col] + 1 << ":" << vec_text(v);
    }
    if (data.bmat.ex().empty())
      std::cout << " none\nno exchangeable indices\n";
    else
      std::cout << "\nLambda^T B = " << data.compat_scale << " [D; 0], D = diag" << vec_text(data.d) << "\n";
    std::cout << "degree identity: " << (deg.pass ? "holds" : "FAILS") << "\n";
  }
  TheoremCOptions o;
  o.full_disc = c.full_disc;
  o.threads = c.threads;
  int code = kOk;
  try {
    code = report_theorem_c(c, theorem_c_check(datum, word, ell, o));
  } catch (const UnsupportedWord& e) {
    if (c.json)
      std::cout << Json{{"lambda", data.lambda}, {"B", data.bmat.cols()}, {"degree_identity", deg.pass},
                        {"discriminant", e.what()}}
                       .dump(2)
                << "\n";
    else
      std::cout << "discriminant: not available (" << e.what() << ")\n";
  }
  return deg.pass ? code : kVerdict;
}

int cmd_selftest(const Config& c) {
  AcceptanceOptions o;
  o.full_disc = c.full_disc;
  o.threads = c.threads;
  o.rng_seed = c.rng_seed;
  const AcceptanceReport r = run_acceptance(o);
  if (c.json) {
    Json rows = Json::array();
    for (const auto& k : r.criteria)
      rows.push_back({{"id", k.id},
                      {"name", k.name},
                      {"anchor", k.anchor},
                      {"pass", k.pass},
                      {"ran", k.ran},
                      {"stretch", k.stretch},
                      {"seconds", k.seconds},
                      {"limit", k.limit},
                      {"detail", k.detail}});
    std::cout << Json{{"ok", r.ok()}, {"criteria", rows}}.dump(2) << "\n";
  } else {
    std::cout << r.table() << (r.ok() ? "all checks pass\n" : "SOME CHECKS FAILED\n");
  }
  return r.ok() ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root-of-unity quantum cluster algebras: compatibility, mutation, exchange graphs, discriminants"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_flag("--json", c.json, "machine-readable output");
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--rng-seed", c.rng_seed, "seed for randomized property checks");
  app.add_option("--max-nodes", c.max_nodes, "exchange graph node budget")->check(CLI::PositiveNumber);
  app.add_option("--max-depth", c.max_depth, "exchange graph depth budget")->check(CLI::PositiveNumber);
  app.add_option("--safety-factor", c.safety_factor, "division step budget factor")->check(CLI::PositiveNumber);
  app.add_flag("--full-disc", c.full_disc, "run the long repeated-letter discriminant");

  std::string seed_path, word, dot_path, q_path, cartan_path, preset;
  int all_len = -1, ell = 3;
  std::size_t n = 1;
  bool shadow = false, skip_disc = false;
  std::function<int()> action;

  auto* compat = app.add_subcommand("compat", "check l-compatibility and report D");
  compat->add_option("seed", seed_path, "seed JSON")->required();
  compat->callback([&] { action = [&] { return cmd_compat(c, seed_path); }; });

  auto* mutate = app.add_subcommand("mutate", "mutate a seed along a word");
  mutate->add_option("seed", seed_path, "seed JSON")->required();
  mutate->add_option("--word", word, "1-based directions, e.g. 1,2,1")->required();
  mutate->callback([&] { action = [&] { return cmd_mutate(c, seed_path, word); }; });

  auto* expl = app.add_subcommand("explore", "enumerate the labelled exchange graph");
  expl->add_option("seed", seed_path, "seed JSON")->required();
  expl->add_option("--dot", dot_path, "write Graphviz output here");
  expl->add_flag("--shadow", shadow, "compare with the classical exchange graph");
  expl->callback([&] { action = [&] { return cmd_explore(c, seed_path, dot_path, shadow); }; });

  auto* frob = app.add_subcommand("frobenius", "check l-th powers against classical mutation");
  frob->add_option("seed", seed_path, "seed JSON")->required();
  auto* word_opt = frob->add_option("--word", word, "1-based directions");
  auto* all_opt = frob->add_option("--all-words", all_len, "every word up to this length")->check(CLI::NonNegativeNumber);
  word_opt->excludes(all_opt);
  frob->callback([&] {
    if (word.empty() && all_len < 0) throw CLI::ValidationError("frobenius", "give --word or --all-words");
    action = [&] { return cmd_frobenius(c, seed_path, word, all_len); };
  });

  auto* disc = app.add_subcommand("disc", "discriminant from a presentation descriptor");
  disc->add_option("descriptor", seed_path, "descriptor JSON")->required();
  disc->callback([&] { action = [&] { return cmd_disc(c, seed_path); }; });

  auto* weyl = app.add_subcommand("weyl", "quantized Weyl algebra seed and discriminant");
  weyl->add_option("--n", n, "number of generator pairs")->check(CLI::PositiveNumber);
  weyl->add_option("--l", ell, "order of zeta")->check(CLI::PositiveNumber);
  weyl->add_option("--Q", q_path, "JSON matrix of q-exponents");
  weyl->add_flag("--no-disc", skip_disc, "skip the discriminant");
  weyl->callback([&] { action = [&] { return cmd_weyl(c, n, ell, q_path, skip_disc); }; });

  auto* unip = app.add_subcommand("unip", "unipotent cell seed data and discriminant");
  unip->add_option("--cartan", cartan_path, "Cartan JSON {A, d}");
  unip->add_option("--preset", preset, "A1, A2, B2, G2 or A1^(1)");
  unip->add_option("--word", word, "1-based reduced word")->required();
  unip->add_option("--l", ell, "order of zeta")->check(CLI::PositiveNumber);
  unip->callback([&] { action = [&] { return cmd_unip(c, cartan_path, preset, word, ell); }; });

  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->callback([&] { action = [&] { return cmd_selftest(c); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotReduced& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedWord& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CoprimeViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NotSkewSymmetrizable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "verdict failed: " << e.what() << "\n";
    return kVerdict;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
