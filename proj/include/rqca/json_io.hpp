#pragma once

#include "rqca/kacmoody.hpp"
#include "rqca/seeds.hpp"

#include "json.hpp"

namespace rqca {

using Json = nlohmann::json;

// Coefficients travel as strings ("1 - 2*z^3"), so big integers survive.
Json to_json(const CyclotomicInteger& c);
CyclotomicInteger cyclotomic_from_json(const RootContext& ring, const Json& j);

// [{"exp": [..], "coef": ".."}, ...]
Json to_json(const TorusElement& a);
TorusElement torus_from_json(const FormPtr& form, const Json& j);

Json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

// {"l", "N", "ex", "inv", "lambda", "B", "frame"}; indices are 1-based, B is N x |ex|.
// "frame" is "standard" or a list of elements over "torus_lambda" (defaults to "lambda").
Seed seed_from_json(const Json& j);
Json seed_to_json(const Seed& seed);

// {"A": [[..]], "d": [..]}; d optional.
CartanDatum cartan_from_json(const Json& j);
Json to_json(const CartanDatum& datum);

// 1-based word list to 0-based letters.
std::vector<int> word_from_json(const Json& j);

Json to_json(const ClusterDiscriminantResult& r);

}  // namespace rqca
