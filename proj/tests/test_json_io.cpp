#include "doctest.h"
#include "oracles.hpp"

#include "rqca/errors.hpp"
#include "rqca/json_io.hpp"
#include "rqca/samples.hpp"

using namespace rqca;

TEST_CASE("cyclotomic and torus elements round trip") {
  std::mt19937_64 rng(oracle::kSeed);
  const FormPtr form = SkewForm::make(5, {{0, 1}, {-1, 0}});
  for (int rep = 0; rep < 10; ++rep) {
    const TorusElement a = oracle::random_torus(rng, form, 4);
    CHECK(torus_from_json(form, to_json(a)) == a);
    const CyclotomicInteger c = oracle::random_cyclotomic(rng, form->ring());
    CHECK(cyclotomic_from_json(form->ring(), to_json(c)) == c);
  }
  CyclotomicInteger big(form->ring(), Integer(1));
  for (int i = 0; i < 50; ++i) big *= Integer(3);
  CHECK(cyclotomic_from_json(form->ring(), to_json(big)) == big);
}

TEST_CASE("seeds load from the documented schema") {
  const Json j = Json::parse(R"({"l": 9, "N": 2, "ex": [1, 2], "lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [-3, 0]]})");
  const Seed s = seed_from_json(j);
  CHECK(s.d == std::vector<long long>{3, 1});
  CHECK(s.bmat.ex() == std::vector<int>{0, 1});
  const Seed m = mutate_seed(finite_type_seed("A2", 5), 0);
  const Seed back = seed_from_json(seed_to_json(m));
  CHECK(back.frame == m.frame);
  CHECK(back.bmat == m.bmat);
  CHECK(back.d == m.d);
}

TEST_CASE("malformed input is a usage error") {
  CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"l": 5})")), UsageError);
  CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"l": 5, "ex": [3], "lambda": [[0, 1], [-1, 0]], "B": [[0], [1]]})")),
                  UsageError);
  CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"l": 5, "ex": [1], "lambda": [[0, 1], [-1, 0]], "B": [[0, 1], [1]]})")),
                  UsageError);
  CHECK_THROWS_AS(seed_from_json(Json::parse(R"({"l": 0, "ex": [], "lambda": [[0]], "B": [[]]})")), UsageError);
  CHECK_THROWS_AS(word_from_json(Json::parse("[1, 0]")), UsageError);
  CHECK_THROWS_AS(cartan_from_json(Json::parse(R"({"d": [1]})")), UsageError);
}

TEST_CASE("Cartan data, words and discriminant reports") {
  const CartanDatum c = cartan_from_json(Json::parse(R"({"A": [[2, -2], [-1, 2]], "d": [1, 2]})"));
  CHECK(c.d == std::vector<long long>{1, 2});
  CHECK(cartan_from_json(to_json(c)).a == c.a);
  CHECK(word_from_json(Json::parse("[1, 2, 1]")) == std::vector<int>{0, 1, 0});
  const Seed s = make_initial_seed(SkewForm::make(3, {{0}}), ExchangeMatrix(1, {}, {}, IntMatrix(1)));
  const Json r = to_json(cluster_discriminant({s}));
  CHECK(r.at("verdict").get<bool>());
  CHECK(r.at("constant").get<std::string>() == "27");
  CHECK(r.at("exponents") == Json::parse("[6]"));
}
