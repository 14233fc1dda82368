#include <doctest.h>

#include "crn/parse.hpp"
#include "crn/polynomial.hpp"
#include "testutil.hpp"

using namespace crn;

TEST_CASE("decay term gives X1 -> 0") {
  PolynomialSystem p;
  p.vars = {"X1"};
  p.rhs = {{{Rat(-1), {1}}}};
  auto sys = canonical_realization(p);
  REQUIRE(sys.net.complex_count() == 2);
  REQUIRE(sys.net.reaction_count() == 1);
  CHECK(sys.net.complexes[0].y[0] == 1);
  CHECK(sys.net.complexes[1].y[0] == 0);
  CHECK(sys.net.reactions[0] == Reaction{0, 1});
  CHECK(sys.rates[0] == 1);
}

TEST_CASE("single production term gives 3X2 -> X1 + 3X2") {
  PolynomialSystem p;
  p.vars = {"X1", "X2"};
  p.rhs.resize(2);
  p.rhs[0] = {{Rat(2), {0, 3}}};
  auto sys = canonical_realization(p);
  REQUIRE(sys.net.complex_count() == 2);
  CHECK(sys.net.complex_name(0) == "3 X2");
  CHECK(sys.net.complex_name(1) == "X1 + 3 X2");
  CHECK(sys.net.reactions[0] == Reaction{0, 1});
  CHECK(sys.rates[0] == 2);
}

TEST_CASE("inadmissible consumption is rejected by name") {
  PolynomialSystem p;
  p.vars = {"X1", "X2"};
  p.rhs.resize(2);
  p.rhs[0] = {{Rat(-2), {0, 3}}};  // dX1/dt = -2 x2^3 consumes absent X1
  try {
    canonical_realization(p);
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("-2*X2^3") != std::string::npos);
  }
}

TEST_CASE("three-species cubic system realizes canonically") {
  const char* text =
      "dX1/dt = 2*X2^3 - X1^2 - X1*X2*X3\n"
      "dX2/dt = 1 - 3*X2^3 + 3*X1*X2*X3\n"
      "dX3/dt = X1*X2 - X1*X2*X3\n";
  auto p = parse_ode(text);
  auto sys = canonical_realization(p);
  sys.validate();

  CHECK(sys.net.complex_count() == 11);
  CHECK(sys.net.reaction_count() == 8);

  auto expect = [&](const char* src, const char* tgt, Rat k) {
    for (size_t r = 0; r < sys.net.reactions.size(); ++r)
      if (sys.net.complex_name(sys.net.reactions[r].source) == src &&
          sys.net.complex_name(sys.net.reactions[r].target) == tgt) {
        CHECK(sys.rates[r] == k);
        return;
      }
    FAIL((std::string("missing reaction ") + src + " -> " + tgt));
  };
  expect("3 X2", "X1 + 3 X2", Rat(2));
  expect("3 X2", "2 X2", Rat(3));
  expect("X1 + X2 + X3", "X2 + X3", Rat(1));
  expect("X1 + X2 + X3", "X1 + 2 X2 + X3", Rat(3));
  expect("X1 + X2 + X3", "X1 + X2", Rat(1));
  expect("X1 + X2", "X1 + X2 + X3", Rat(1));
  expect("2 X1", "X1", Rat(1));
  expect("0", "X2", Rat(1));

  // vector field survives the round trip exactly
  auto back = polynomial_of(sys);
  auto q = p;
  q.normalize();
  CHECK(back == q);

  auto f = mass_action_rhs(sys, {Rat(1), Rat(1), Rat(1)});
  CHECK(f[0] == 0);
  CHECK(f[1] == 1);
  CHECK(f[2] == 0);
}

TEST_CASE("duplicate monomials merge before realization") {
  PolynomialSystem p;
  p.vars = {"X1"};
  p.rhs = {{{Rat(1), {1}}, {Rat(2), {1}}}};
  auto sys = canonical_realization(p);
  REQUIRE(sys.net.reaction_count() == 1);
  CHECK(sys.rates[0] == 3);
}

TEST_CASE("terms cancelling to zero vanish") {
  PolynomialSystem p;
  p.vars = {"X1"};
  p.rhs = {{{Rat(1), {1}}, {Rat(-1), {1}}}};
  auto sys = canonical_realization(p);
  CHECK(sys.net.reaction_count() == 0);
  CHECK(sys.net.complex_count() == 0);
}

TEST_CASE("realization round-trips on random admissible systems") {
  Rng rng(314);
  int nontrivial = 0;
  for (int i = 0; i < 100; ++i) {
    auto p = crntest::random_polynomial_system(rng);
    auto sys = canonical_realization(p);
    auto back = polynomial_of(sys);
    auto q = p;
    q.normalize();
    CHECK(back == q);
    if (sys.net.reaction_count() > 0) ++nontrivial;
  }
  CHECK(nontrivial > 50);
}
