#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "seirq/errors.hpp"
#include "seirq/model.hpp"
#include "support.hpp"

using namespace seirq;
using namespace testsupport;

TEST_CASE("validate_params accepts the admissible region") {
  CHECK(validate_params({0.12, 1.0, 0.1, 0.066}).ok());
  CHECK(validate_params({0.0, 0.0, 0.0, 0.0}).ok());
  CHECK(validate_params({1.0, 1.0, 1.0, 1.0}).ok());  // beta*q = 1 boundary
  CHECK(validate_params({0.4, 2.5, 0.3, 0.2}).ok());  // q > 1 is fine
}

TEST_CASE("validate_params reports each violated inequality") {
  SUBCASE("single violations") {
    CHECK(validate_params({0.1, 1.0, 1.2, 0.5}).violations.size() == 1);
    CHECK(validate_params({0.1, 1.0, 0.5, -0.1}).violations.size() == 1);
    CHECK(validate_params({1.5, 0.0, 0.5, 0.5}).violations.size() == 1);
    CHECK(validate_params({0.1, -2.0, 0.5, 0.5}).violations.size() == 1);
  }
  SUBCASE("the product constraint is separate from the boxes") {
    const ParamCheck check = validate_params({0.8, 2.0, 0.5, 0.5});
    REQUIRE(check.violations.size() == 1);
    CHECK(check.joined().find("beta*q") != std::string::npos);
  }
  SUBCASE("violations accumulate") {
    const ParamCheck check = validate_params({1.5, -1.0, 2.0, -2.0});
    CHECK(check.violations.size() >= 4);
  }
  SUBCASE("non-finite fields throw instead of reporting") {
    CHECK_THROWS_AS(validate_params({0.1, NAN, 0.1, 0.1}), InvalidInput);
    CHECK_THROWS_AS(validate_params({INFINITY, 1.0, 0.1, 0.1}), InvalidInput);
  }
}

TEST_CASE("require_admissible names the offending constraint") {
  try {
    require_admissible({0.8, 2.0, 0.5, 0.5});
    FAIL("expected ParamError");
  } catch (const ParamError& e) {
    CHECK(std::string(e.what()).find("beta*q") != std::string::npos);
  }
}

TEST_CASE("simplex_error measures the worst constraint violation") {
  CHECK(SimplexState{0.25, 0.25, 0.25, 0.25}.simplex_error() == 0.0);
  CHECK(SimplexState{1.0, 0.0, 0.0, 0.0}.simplex_error() == 0.0);
  CHECK(SimplexState{0.5, 0.5, 0.5, -0.5}.simplex_error() == doctest::Approx(0.5));
  CHECK(SimplexState{0.3, 0.3, 0.3, 0.2}.simplex_error() ==
        doctest::Approx(0.1));
  CHECK(std::isinf(SimplexState{NAN, 0.0, 0.0, 0.0}.simplex_error()));
  CHECK(SimplexState{0.25, 0.25, 0.25, 0.25}.on_simplex());
  CHECK_FALSE(SimplexState{0.5, 0.5, 0.5, -0.5}.on_simplex());
}

TEST_CASE("step matches the hand-evaluated map") {
  SUBCASE("epidemic start") {
    const SimplexState x1 = step(uzbekistan_start(), uzbekistan_params());
    CHECK(x1.s == 0.9999888000120001);
    CHECK(x1.e == 1.199988e-06);
    CHECK(x1.i == 9.34e-06);
    CHECK(x1.r == 6.6e-07);
  }
  SUBCASE("interior point") {
    const SimplexState x1 = step({0.9, 0.05, 0.03, 0.02}, {0.3, 1.5, 0.2, 0.25});
    CHECK(x1.s == 0.87165);
    CHECK(x1.e == 0.06835000000000001);
    CHECK(x1.i == 0.0325);
    CHECK(x1.r == 0.0275);
  }
}

TEST_CASE("step rejects bad inputs") {
  CHECK_THROWS_AS(step({0.5, 0.5, 0.0, 0.0}, {1.5, 0.0, 0.1, 0.1}), ParamError);
  CHECK_THROWS_AS(step({0.5, 0.5, 0.5, 0.5}, uzbekistan_params()), DomainError);
  CHECK_THROWS_AS(step({NAN, 0.0, 0.0, 0.0}, uzbekistan_params()), DomainError);
}

TEST_CASE("step stays on the simplex and moves mass one way") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 2000; ++trial) {
    const Params p = random_admissible(rng);
    const SimplexState x = random_simplex(rng);
    const SimplexState y = step(x, p);
    CAPTURE(trial);
    CHECK(y.simplex_error() <= 1e-14);
    CHECK(y.s <= x.s);
    CHECK(y.r >= x.r);
  }
}

TEST_CASE("fixed points are exactly the zero-infection segment") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = unit(rng);
    const SimplexState x = fixed_point(alpha);
    CHECK(is_fixed_point(x));
    const SimplexState y = step(x, random_admissible(rng));
    // Bit-for-bit: every term the map adds or removes is exactly zero.
    CHECK(y.s == x.s);
    CHECK(y.e == x.e);
    CHECK(y.i == x.i);
    CHECK(y.r == x.r);
  }
  CHECK_FALSE(is_fixed_point({0.9, 1e-300, 0.0, 0.1}));
  CHECK_THROWS_AS(fixed_point(1.5), DomainError);
  CHECK_THROWS_AS(fixed_point(-0.1), DomainError);
}

TEST_CASE("the s = 0 face is exactly invariant") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 500; ++trial) {
    const Params p = random_admissible(rng);
    SimplexState x = random_simplex(rng);
    const double total = x.e + x.i + x.r;
    x = {0.0, x.e / total, x.i / total, x.r / total};
    for (int n = 0; n < 20; ++n) {
      x = step(x, p);
      CHECK(x.s == 0.0);
    }
  }
}

TEST_CASE("transmission-free dynamics have the closed form") {
  // With beta = 0: s is frozen and e decays geometrically.
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    Params p = random_admissible(rng);
    p.beta = 0.0;
    const SimplexState x0 = random_simplex(rng);
    SimplexState x = x0;
    double expected_e = x0.e;
    for (int n = 1; n <= 100; ++n) {
      x = step(x, p);
      expected_e *= 1.0 - p.a;
      CHECK(x.s == x0.s);
      CHECK(x.e == doctest::Approx(expected_e).epsilon(1e-12));
    }
  }
}
