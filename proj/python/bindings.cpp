#include "rqca/acceptance.hpp"
#include "rqca/central.hpp"
#include "rqca/discriminant.hpp"
#include "rqca/errors.hpp"
#include "rqca/exchange_graph.hpp"
#include "rqca/json_io.hpp"
#include "rqca/kacmoody.hpp"
#include "rqca/samples.hpp"
#include "rqca/weyl.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rqca;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
std::string dump(const Json& j) { return j.dump(); }

std::vector<int> zero_based(const std::vector<int>& word) {
  std::vector<int> out;
  for (int k : word) {
    if (k < 1) throw UsageError("directions are 1-based");
    out.push_back(k - 1);
  }
  return out;
}

std::vector<int> one_based(const std::vector<int>& v) {
  std::vector<int> out;
  for (int k : v) out.push_back(k + 1);
  return out;
}

Json theorem_c_json(const TheoremCResult& r) {
  Json j = to_json(r.pipeline);
  j["family"] = r.family;
  j["ran"] = r.ran;
  j["expected_exponent"] = r.expected_exponent;
  j["exponents_match"] = r.exponents_match;
  j["central_powers"] = r.central_powers;
  j["nerve_size"] = r.nerve_size;
  return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Root-of-unity quantum cluster algebras";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<Seed>(m, "Seed")
      .def_static("from_json", [](const std::string& text) { return seed_from_json(Json::parse(text)); })
      .def("to_json", [](const Seed& s) { return dump(seed_to_json(s)); })
      .def_property_readonly("ell", &Seed::ell)
      .def_property_readonly("rank", &Seed::rank)
      .def_property_readonly("d", [](const Seed& s) { return s.d; })
      .def_property_readonly("exchangeable", [](const Seed& s) { return one_based(s.bmat.ex()); })
      .def_property_readonly("frame", [](const Seed& s) {
        std::vector<std::string> out;
        for (const auto& v : s.frame) out.push_back(v.to_string());
        return out;
      });

  m.def("finite_type_seed", [](const std::string& name, int ell) { return finite_type_seed(name, ell); });
  m.def("counterexample_seed", &counterexample_seed);
  m.def("satisfies_coprime", &satisfies_coprime);
  m.def("mutate", [](const Seed& s, const std::vector<int>& word) { return mutate_word(s, zero_based(word)); });

  m.def("explore", [](const Seed& s, std::size_t max_nodes) {
    ExploreLimits limits;
    limits.max_nodes = max_nodes;
    const LabelledGraph g = explore(s, limits);
    return dump(Json{{"nodes", g.nodes.size()}, {"edges", g.edge_count()}, {"complete", g.complete}});
  }, py::arg("seed"), py::arg("max_nodes") = 10000);

  m.def("shadow_iso", [](const Seed& s) {
    const ShadowIsoResult r = classical_shadow_iso(s);
    return dump(Json{{"isomorphic", r.isomorphic},
                     {"powers_match", r.powers_match},
                     {"quantum_nodes", r.quantum_nodes},
                     {"classical_nodes", r.classical_nodes}});
  });

  m.def("exchange_identity", [](const Seed& s, int k) {
    const ExchangeIdentityResult r = exchange_identity_check(s, k - 1);
    return dump(Json{{"pass", r.pass},
                     {"residual", r.residual.to_string()},
                     {"reduced_residual", r.reduced_residual ? r.reduced_residual->to_string() : ""}});
  });

  m.def("frobenius_check", [](const Seed& s, const std::vector<int>& word) {
    const FrobeniusResult r = frobenius_check(s, zero_based(word));
    return dump(Json{{"pass", r.pass}, {"failing", one_based(r.failing)}});
  });

  m.def("torus_discriminant", [](const Seed& s) { return dump(to_json(cluster_discriminant({s}))); });

  m.def("weyl_discriminant", [](std::size_t n, int ell, unsigned threads) {
    const WeylDiscriminantResult r = weyl_discriminant(WeylPresentation::make(n, {}, ell), threads);
    Json j = to_json(r.pipeline);
    j["rank"] = r.rank;
    return dump(j);
  }, py::arg("n"), py::arg("ell"), py::arg("threads") = 1);

  m.def("weyl_seed", [](std::size_t n, int ell) {
    const WeylSeedResult r = weyl_seed(WeylPresentation::make(n, {}, ell));
    return dump(Json{{"q_commuting", r.q_commuting},
                     {"compatible", r.compatible},
                     {"mutation_matches_w", r.mutation_matches_w},
                     {"d", r.d},
                     {"lambda_observed", r.lambda_observed},
                     {"B", r.bmat.cols()},
                     {"B_source", r.bmat_source}});
  });

  m.def("unipotent_seed", [](const std::string& cartan, const std::vector<int>& word) {
    const UnipotentSeedData u = build_unipotent_seed_data(CartanDatum::preset(cartan), zero_based(word));
    return dump(Json{{"lambda", u.lambda}, {"B", u.bmat.cols()}, {"d", u.d}, {"compat_scale", u.compat_scale},
                     {"exchangeable", one_based(u.bmat.ex())}});
  });

  m.def("degree_identity", [](const std::string& cartan, const std::vector<int>& word) {
    return degree_identity_check(CartanDatum::preset(cartan), zero_based(word)).pass;
  });

  m.def("unipotent_discriminant", [](const std::string& cartan, const std::vector<int>& word, int ell,
                                     bool full_disc) {
    TheoremCOptions o;
    o.full_disc = full_disc;
    return dump(theorem_c_json(theorem_c_check(CartanDatum::preset(cartan), zero_based(word), ell, o)));
  }, py::arg("cartan"), py::arg("word"), py::arg("ell"), py::arg("full_disc") = false);

  m.def("selftest", [](bool full_disc, std::uint64_t rng_seed) {
    AcceptanceOptions o;
    o.full_disc = full_disc;
    o.rng_seed = rng_seed;
    const AcceptanceReport r = run_acceptance(o);
    Json rows = Json::array();
    for (const auto& c : r.criteria)
      rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"ran", c.ran}, {"stretch", c.stretch},
                      {"seconds", c.seconds}, {"detail", c.detail}});
    return dump(Json{{"ok", r.ok()}, {"criteria", rows}});
  }, py::arg("full_disc") = false, py::arg("rng_seed") = AcceptanceOptions{}.rng_seed);
}
