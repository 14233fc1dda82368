#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crn/lpio.hpp"
#include "crn/network.hpp"
#include "crn/parse.hpp"
#include "testutil.hpp"

using namespace crn;

namespace {

MilpProblem sampler_program() {
  MilpProblem p;
  p.lp.add_col(Rat(0), std::nullopt, Rat(1));       // x
  p.lp.add_col(std::nullopt, std::nullopt, Rat(-1, 3));  // y, free
  p.lp.add_col(Rat(1, 4), Rat(7, 2), Rat(0));       // z
  p.lp.add_col(Rat(0), Rat(1), Rat(0));             // u, binary
  p.lp.add_col(Rat(-2), Rat(3), Rat(0));            // v, general integer
  p.lp.add_col(Rat(5), Rat(5), Rat(0));             // t, fixed
  p.lp.add_col(std::nullopt, Rat(2), Rat(0));       // q, no lower bound
  p.integral = {false, false, false, true, true, false, false};

  LpRow r1;
  r1.terms = {{0, Rat(1)}, {1, Rat(2)}, {2, Rat(-1, 3)}};
  r1.sense = RowSense::LE;
  r1.rhs = Rat(10);
  LpRow r2;  // the duplicate y terms cancel on export
  r2.terms = {{1, Rat(1)}, {2, Rat(1)}, {1, Rat(-1)}};
  r2.sense = RowSense::GE;
  r2.rhs = Rat(-1, 2);
  LpRow r3;
  r3.terms = {{0, Rat(2, 3)}, {4, Rat(-1)}};
  r3.sense = RowSense::EQ;
  r3.rhs = Rat(1, 3);
  LpRow r4;  // stays empty
  r4.sense = RowSense::LE;
  r4.rhs = Rat(0);
  p.lp.rows = {r1, r2, r3, r4};
  return p;
}

const std::vector<std::string> kVarNames = {"x", "y", "z", "u", "v", "t", "q"};
const std::vector<std::string> kRowNames = {"r1", "r2", "r3", "r4"};

// 0 -> 3X2 -> 3X1 -> 0 plus X1+X2 -> 2X1+2X2, all rates 1.
MassActionSystem cycle_plus_chord() {
  MassActionSystem sys;
  sys.net.species = {"X1", "X2"};
  sys.net.complexes = {{{Rat(0), Rat(0)}},
                       {{Rat(0), Rat(3)}},
                       {{Rat(3), Rat(0)}},
                       {{Rat(1), Rat(1)}},
                       {{Rat(2), Rat(2)}}};
  sys.net.reactions = {{0, 1}, {1, 2}, {2, 0}, {3, 4}};
  sys.rates = {Rat(1), Rat(1), Rat(1), Rat(1)};
  return sys;
}

}  // namespace

TEST_CASE("lp text comes out in the expected shape") {
  std::ostringstream os;
  write_lp(os, sampler_program(), kVarNames, kRowNames, {"hello there"});

  const std::string expected =
      "\\ hello there\n"
      "Minimize\n"
      " obj: x - 0.33333333333333333 y\n"
      "Subject To\n"
      " r1: x + 2 y - 0.33333333333333333 z <= 10\n"
      " r2: z >= -0.5\n"
      " r3: 0.66666666666666667 x - v = 0.33333333333333333\n"
      " r4: 0 x <= 0\n"
      "Bounds\n"
      " y free\n"
      " 0.25 <= z <= 3.5\n"
      " -2 <= v <= 3\n"
      " t = 5\n"
      " -infinity <= q <= 2\n"
      "Binaries\n"
      " u\n"
      "Generals\n"
      " v\n"
      "End\n";
  CHECK(os.str() == expected);
}

TEST_CASE("lp export validates its name lists") {
  auto p = sampler_program();
  std::ostringstream os;
  std::vector<std::string> bad_vars = {"x", "y"};
  CHECK_THROWS_AS(write_lp(os, p, bad_vars, kRowNames), std::invalid_argument);
  std::vector<std::string> bad_rows = {"r1"};
  CHECK_THROWS_AS(write_lp(os, p, kVarNames, bad_rows), std::invalid_argument);
}

TEST_CASE("model export carries its configuration and wraps long rows") {
  auto sys = cycle_plus_chord();
  auto m = build_matrices(sys);
  auto md = build_model(m.Y, m.M, 2, ModelConfig{});

  std::ostringstream os;
  write_model_lp(os, md);
  const std::string text = os.str();

  CHECK(text.rfind("\\ realization search model\n", 0) == 0);
  CHECK(text.find("\\ seed 12648430\n") != std::string::npos);
  CHECK(text.find("\\ eps 1/10\n") != std::string::npos);
  CHECK(text.find("\\ mode conjugate\n") != std::string::npos);
  CHECK(text.find("\\ theorem dot\n") != std::string::npos);
  CHECK(text.find("Binaries\n") != std::string::npos);
  CHECK(text.find(" lam_1_1") != std::string::npos);
  CHECK(text.substr(text.size() - 4) == "End\n");

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) CHECK(line.size() <= 210);
}

TEST_CASE("solution files parse exactly and strictly") {
  const std::vector<std::string> names = {"a", "b", "c"};

  std::istringstream ok(
      "# solver log\n"
      "a 0.5\n"
      "\n"
      "c -3/2   \\ exact\n");
  auto x = read_solution(ok, names);
  REQUIRE(x.size() == 3);
  CHECK(x[0] == Rat(1, 2));
  CHECK(x[1] == Rat(0));
  CHECK(x[2] == Rat(-3, 2));

  std::istringstream sci("b 2.5e-1\n");
  CHECK(read_solution(sci, names)[1] == Rat(1, 4));

  std::istringstream unknown("zz 1\n");
  CHECK_THROWS_AS(read_solution(unknown, names), ParseError);
  std::istringstream twice("a 1\na 2\n");
  CHECK_THROWS_AS(read_solution(twice, names), ParseError);
  std::istringstream missing_value("a\n");
  CHECK_THROWS_AS(read_solution(missing_value, names), ParseError);
  std::istringstream trailing("a 1 2\n");
  CHECK_THROWS_AS(read_solution(trailing, names), ParseError);
  std::istringstream garbage("a abc\n");
  CHECK_THROWS_AS(read_solution(garbage, names), ParseError);
}

TEST_CASE("repair recovers an exact solution from a floating-point one") {
  MilpProblem p;
  p.lp.add_col(Rat(0), Rat(1), Rat(-1));  // x0
  p.lp.add_col(Rat(0), Rat(1), Rat(-1));  // x1
  p.lp.add_col(Rat(0), Rat(2), Rat(-1));  // y
  p.integral = {true, true, false};
  LpRow cap;
  cap.terms = {{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}};
  cap.sense = RowSense::LE;
  cap.rhs = Rat(5, 2);
  LpRow ylim;
  ylim.terms = {{2, Rat(1)}};
  ylim.sense = RowSense::LE;
  ylim.rhs = Rat(6, 5);
  p.lp.rows = {cap, ylim};

  std::vector<Rat> approx = {parse_rational("0.9999999999"),
                             parse_rational("1.0000000001"),
                             parse_rational("0.4999999998")};
  auto fixed = repair_solution(p, approx, {"cap", "ylim"});
  CHECK(fixed.x[0] == Rat(1));
  CHECK(fixed.x[1] == Rat(1));
  CHECK(fixed.x[2] == Rat(1, 2));
  CHECK(fixed.objective == Rat(-5, 2));

  // a real violation is reported by constraint name
  std::vector<Rat> wrong = {Rat(1), Rat(1), Rat(7, 10)};
  try {
    repair_solution(p, wrong, {"cap", "ylim"});
    FAIL("expected a violation report");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("cap") != std::string::npos);
  }

  // a clearly fractional binary is rejected
  std::vector<Rat> frac = {Rat(2, 5), Rat(1), Rat(1, 2)};
  CHECK_THROWS_AS(repair_solution(p, frac, {}), std::runtime_error);
}

TEST_CASE("read plus repair round trip") {
  MilpProblem p;
  p.lp.add_col(Rat(0), Rat(1), Rat(-1));
  p.lp.add_col(Rat(0), Rat(3), Rat(-1));
  p.integral = {true, false};
  LpRow r;
  r.terms = {{0, Rat(2)}, {1, Rat(1)}};
  r.sense = RowSense::LE;
  r.rhs = Rat(3);
  p.lp.rows = {r};

  std::istringstream text("b1 0.99999999992\nc1 1.00000000031\n");
  auto approx = read_solution(text, {"b1", "c1"});
  auto fixed = repair_solution(p, approx, {"r1"});
  CHECK(fixed.x[0] == Rat(1));
  CHECK(fixed.x[1] == Rat(1));
  CHECK(fixed.objective == Rat(-2));
}
