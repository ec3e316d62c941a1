#include "rqca/json_io.hpp"

#include "rqca/errors.hpp"

namespace rqca {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw UsageError(std::string("json: missing field \"") + name + "\"");
  return j.at(name);
}

std::vector<int> one_based_list(const Json& j, std::size_t n, const char* what) {
  std::vector<int> out;
  if (!j.is_array()) throw UsageError(std::string("json: ") + what + " must be a list");
  for (const Json& v : j) {
    const long long k = v.get<long long>();
    if (k < 1 || static_cast<std::size_t>(k) > n) throw UsageError(std::string("json: ") + what + " index out of range");
    out.push_back(static_cast<int>(k - 1));
  }
  return out;
}

Json one_based(const std::vector<int>& v) {
  Json out = Json::array();
  for (int k : v) out.push_back(k + 1);
  return out;
}

}  // namespace

Json to_json(const CyclotomicInteger& c) { return c.to_string(); }

CyclotomicInteger cyclotomic_from_json(const RootContext& ring, const Json& j) {
  if (j.is_number_integer()) return CyclotomicInteger(ring, j.get<long long>());
  if (j.is_string()) return CyclotomicInteger::parse(ring, j.get<std::string>());
  throw UsageError("json: coefficient must be an integer or a string");
}

Json to_json(const TorusElement& a) {
  Json out = Json::array();
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it)
    out.push_back({{"exp", it->first.to_vector()}, {"coef", to_json(it->second)}});
  return out;
}

TorusElement torus_from_json(const FormPtr& form, const Json& j) {
  if (!j.is_array()) throw UsageError("json: torus element must be a list of terms");
  TorusElement out(form);
  for (const Json& t : j) {
    const std::vector<long long> e = field(t, "exp").get<std::vector<long long>>();
    if (e.size() != form->rank()) throw UsageError("json: exponent has the wrong length");
    out.add_term(Exponent(e), cyclotomic_from_json(form->ring(), field(t, "coef")));
  }
  return out;
}

Json to_json(const IntMatrix& m) { return Json(m); }

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("json: matrix must be a list of rows");
  return j.get<IntMatrix>();
}

Seed seed_from_json(const Json& j) {
  try {
    const int ell = field(j, "l").get<int>();
    if (ell < 1) throw UsageError("json: l must be positive");
    const IntMatrix lambda = matrix_from_json(field(j, "lambda"));
    const std::size_t n = j.contains("N") ? j.at("N").get<std::size_t>() : lambda.size();
    if (lambda.size() != n) throw UsageError("json: lambda must be N x N");
    const std::vector<int> ex = one_based_list(field(j, "ex"), n, "ex");
    const std::vector<int> inv = j.contains("inv") ? one_based_list(j.at("inv"), n, "inv") : std::vector<int>{};
    IntMatrix b = matrix_from_json(field(j, "B"));
    if (b.size() != n) throw UsageError("json: B must have N rows");
    for (const auto& row : b)
      if (row.size() != ex.size()) throw UsageError("json: B must have one column per exchangeable index");
    const bool lift = j.value("lambda_lift", true);
    const FormPtr form = SkewForm::make(ell, lambda, lift);
    ExchangeMatrix bmat(n, ex, inv, b);
    const Json frame = j.value("frame", Json("standard"));
    if (frame.is_string()) {
      if (frame.get<std::string>() != "standard") throw UsageError("json: frame must be \"standard\" or a list");
      return make_initial_seed(form, bmat);
    }
    const FormPtr torus = j.contains("torus_lambda") ? SkewForm::make(ell, matrix_from_json(j.at("torus_lambda"))) : form;
    if (!frame.is_array() || frame.size() != n) throw UsageError("json: frame must list N elements");
    Seed seed;
    seed.form = form;
    seed.bmat = bmat;
    for (const Json& v : frame) seed.frame.push_back(torus_from_json(torus, v));
    seed.d = check_compatible(*form, bmat);
    return seed;
  } catch (const Json::exception& e) {
    throw UsageError(std::string("json: ") + e.what());
  }
}

Json seed_to_json(const Seed& seed) {
  Json j;
  j["l"] = seed.ell();
  j["N"] = seed.rank();
  j["ex"] = one_based(seed.bmat.ex());
  j["inv"] = one_based(seed.bmat.inv());
  if (seed.form->has_lift()) {
    const std::size_t n = seed.rank();
    IntMatrix lift(n, std::vector<long long>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) lift[a][b] = seed.form->lift(a, b);
    j["lambda"] = lift;
  } else {
    j["lambda"] = seed.form->matrix();
    j["lambda_lift"] = false;
  }
  j["B"] = seed.bmat.cols();
  j["d"] = seed.d;
  j["torus_lambda"] = seed.torus()->matrix();
  Json frame = Json::array();
  for (const TorusElement& v : seed.frame) frame.push_back(to_json(v));
  j["frame"] = frame;
  return j;
}

CartanDatum cartan_from_json(const Json& j) {
  try {
    std::vector<long long> d;
    if (j.contains("d")) d = j.at("d").get<std::vector<long long>>();
    return CartanDatum::make(matrix_from_json(field(j, "A")), d);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("json: ") + e.what());
  }
}

Json to_json(const CartanDatum& datum) { return Json{{"A", datum.a}, {"d", datum.d}}; }

std::vector<int> word_from_json(const Json& j) {
  std::vector<int> out;
  for (const Json& v : j) {
    const long long k = v.get<long long>();
    if (k < 1) throw UsageError("json: word letters are 1-based");
    out.push_back(static_cast<int>(k - 1));
  }
  return out;
}

Json to_json(const ClusterDiscriminantResult& r) {
  Json j;
  j["verdict"] = r.verdict;
  j["discriminant"] = to_json(r.discriminant);
  j["expected"] = to_json(r.expected);
  j["constant"] = r.constant.str();
  j["frozen"] = one_based(r.frozen);
  j["exponents"] = r.exponents;
  j["detail"] = r.detail;
  j["runtime"] = r.seconds;
  return j;
}

}  // namespace rqca
