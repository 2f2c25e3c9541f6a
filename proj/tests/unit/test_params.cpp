#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "telegraph/errors.hpp"
#include "telegraph/params.hpp"
#include "telegraph/rng.hpp"

#include "test_support.hpp"

using namespace telegraph;

TEST_CASE("validate_params accepts the reference model") {
  ModelParams p = validate_params(1, 1, 1, 2, 0.5);
  CHECK(p.lambda1 == 1.0);
  CHECK(p.lambda2 == 1.0);
  CHECK(p.c1 == 1.0);
  CHECK(p.c2 == 2.0);
  CHECK(p.alpha == 0.5);
}

TEST_CASE("validate_params rejects non-positive or non-finite inputs") {
  CHECK_THROWS_AS(validate_params(1, 1, 0, 2, 0.5), NonPositiveParameter);
  CHECK_THROWS_AS(validate_params(-1, 1, 1, 2, 0.5), NonPositiveParameter);
  CHECK_THROWS_AS(validate_params(1, 1, 1, -2, 0.5), NonPositiveParameter);
  double inf = std::numeric_limits<double>::infinity();
  double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_params(inf, 1, 1, 2, 0.5), NonPositiveParameter);
  CHECK_THROWS_AS(validate_params(1, nan, 1, 2, 0.5), NonPositiveParameter);
}

TEST_CASE("validate_params rejects alpha outside [0,1] and keeps the endpoints") {
  CHECK_THROWS_AS(validate_params(1, 1, 1, 2, 1.5), AlphaOutOfRange);
  CHECK_THROWS_AS(validate_params(1, 1, 1, 2, -0.1), AlphaOutOfRange);
  CHECK_THROWS_AS(validate_params(1, 1, 1, 2, std::nan("")), AlphaOutOfRange);
  CHECK(validate_params(1, 1, 1, 2, 0.0).alpha == 0.0);
  CHECK(validate_params(1, 1, 1, 2, 1.0).alpha == 1.0);
}

TEST_CASE("classify_regime worked examples") {
  Regime fig1 = classify_regime(test_support::kFig1);
  CHECK(fig1.drift == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(fig1.stable);

  Regime symmetric = classify_regime(validate_params(1, 1, 1, 1, 0.5));
  CHECK(symmetric.drift == 0.0);
  CHECK_FALSE(symmetric.stable);

  Regime rising = classify_regime(validate_params(1, 2, 2, 1, 0.5));
  CHECK(rising.drift == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(rising.stable);
}

TEST_CASE("regime properties over random draws") {
  RngStream stream(7101, 0);
  for (int i = 0; i < 10000; ++i) {
    ModelParams p = test_support::random_params(stream);
    Regime r = classify_regime(p);
    CHECK(r.drift > -p.c2);
    CHECK(r.drift < p.c1);
    // Stability has the equivalent mean-holding-distance form.
    CHECK(r.stable == (p.c1 / p.lambda1 < p.c2 / p.lambda2));
    Regime again = classify_regime(p);
    CHECK(again.drift == r.drift);
    CHECK(again.stable == r.stable);
  }
}

TEST_CASE("params JSON parsing") {
  ModelParams p = params_from_json(
      R"({"lambda1": 1.0, "lambda2": 1.0, "c1": 1.0, "c2": 2.0, "alpha": 0.5})");
  CHECK(p.c2 == 2.0);

  CHECK_THROWS_AS(params_from_json("{"), ValidationError);
  CHECK_THROWS_AS(params_from_json("[1,2,3]"), ValidationError);
  CHECK_THROWS_AS(
      params_from_json(R"({"lambda1": 1, "lambda2": 1, "c1": 1, "c2": 2})"),
      ValidationError);
  CHECK_THROWS_AS(
      params_from_json(
          R"({"lambda1": "x", "lambda2": 1, "c1": 1, "c2": 2, "alpha": 0.5})"),
      ValidationError);
  CHECK_THROWS_AS(
      params_from_json(
          R"({"lambda1": 1, "lambda2": 1, "c1": 1, "c2": 2, "alpha": 2})"),
      AlphaOutOfRange);
}

TEST_CASE("params file loading") {
  const char* path = "test_params_tmp.json";
  {
    std::ofstream file(path);
    file << R"({"lambda1": 2, "lambda2": 3, "c1": 4, "c2": 5, "alpha": 0.25})";
  }
  ModelParams p = load_params_file(path);
  CHECK(p.lambda2 == 3.0);
  CHECK(p.alpha == 0.25);
  std::remove(path);

  CHECK_THROWS_AS(load_params_file("does_not_exist.json"), ValidationError);
}
