#include <optional>
#include <utility>
#include <vector>

#include "crn/simplex.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace crn;
using crntest::lp_point_feasible;
using crntest::lp_vertex_enumerate;
using crntest::random_lp;

namespace {

LpRow row(std::vector<std::pair<int, Rat>> terms, RowSense sense, Rat rhs) {
  LpRow r;
  r.terms = std::move(terms);
  r.sense = sense;
  r.rhs = std::move(rhs);
  return r;
}

}  // namespace

TEST_CASE("two-variable box LP lands on the right vertex") {
  LpProblem p;
  int x = p.add_col(Rat(0), Rat(3), Rat(-1));
  int y = p.add_col(Rat(0), Rat(2), Rat(-1));
  p.rows.push_back(row({{x, Rat(1)}, {y, Rat(1)}}, RowSense::LE, Rat(4)));
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(-4));
  CHECK(r.x[x] + r.x[y] == Rat(4));
}

TEST_CASE("pure box LP without rows") {
  LpProblem p;
  p.add_col(Rat(-2), Rat(5), Rat(3));   // wants its lower bound
  p.add_col(Rat(-1), Rat(7), Rat(-2));  // wants its upper bound
  p.add_col(Rat(1), Rat(1), Rat(100));  // fixed either way
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(-6) + Rat(-14) + Rat(100));
  CHECK(r.x == std::vector<Rat>{Rat(-2), Rat(7), Rat(1)});
}

TEST_CASE("equality rows route through the artificial phase") {
  LpProblem p;
  int x = p.add_col(Rat(0), Rat(1), Rat(0));
  int y = p.add_col(Rat(0), Rat(1), Rat(0));
  p.rows.push_back(row({{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(1)));
  Simplex s(p);
  REQUIRE(s.optimize() == LpStatus::Optimal);
  CHECK(s.value(x) + s.value(y) == Rat(1));
  CHECK(s.self_check());

  // Tighten both columns until the equation cannot hold, then back off.
  s.set_bounds(x, Rat(0), Rat(1, 3));
  REQUIRE(s.optimize() == LpStatus::Optimal);
  s.set_bounds(y, Rat(0), Rat(1, 4));
  CHECK(s.optimize() == LpStatus::Infeasible);
  s.set_bounds(y, Rat(0), Rat(1));
  REQUIRE(s.optimize() == LpStatus::Optimal);
  CHECK(s.value(x) + s.value(y) == Rat(1));
  CHECK(s.self_check());
}

TEST_CASE("infeasible boxes and rows are reported") {
  LpProblem p;
  int x = p.add_col(Rat(0), Rat(1, 2), Rat(0));
  p.rows.push_back(row({{x, Rat(1)}}, RowSense::GE, Rat(1)));
  CHECK(solve_lp(p).status == LpStatus::Infeasible);

  LpProblem q;
  q.add_col(Rat(2), Rat(1), Rat(0));  // crossed box
  CHECK(solve_lp(q).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded ray is detected") {
  LpProblem p;
  int x = p.add_col(Rat(0), std::nullopt, Rat(-1));
  p.rows.push_back(row({{x, Rat(1)}}, RowSense::GE, Rat(2)));
  CHECK(solve_lp(p).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate cycling example terminates at the known optimum") {
  // The classic four-variable cycling trap: Dantzig pricing alone loops
  // on it, so finishing proves the Bland fallback engages.
  LpProblem p;
  int x1 = p.add_col(Rat(0), std::nullopt, Rat(-3, 4));
  int x2 = p.add_col(Rat(0), std::nullopt, Rat(150));
  int x3 = p.add_col(Rat(0), std::nullopt, Rat(-1, 50));
  int x4 = p.add_col(Rat(0), std::nullopt, Rat(6));
  p.rows.push_back(row({{x1, Rat(1, 4)},
                        {x2, Rat(-60)},
                        {x3, Rat(-1, 25)},
                        {x4, Rat(9)}},
                       RowSense::LE, Rat(0)));
  p.rows.push_back(row({{x1, Rat(1, 2)},
                        {x2, Rat(-90)},
                        {x3, Rat(-1, 50)},
                        {x4, Rat(3)}},
                       RowSense::LE, Rat(0)));
  p.rows.push_back(row({{x3, Rat(1)}}, RowSense::LE, Rat(1)));
  LpResult r = solve_lp(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == Rat(-1, 20));
  CHECK(r.x[x1] == Rat(1, 25));
  CHECK(r.x[x3] == Rat(1));
}

TEST_CASE("iteration budget surfaces as IterLimit") {
  LpProblem p;
  for (int j = 0; j < 4; ++j) p.add_col(Rat(0), Rat(9), Rat(-1));
  for (int i = 0; i < 4; ++i) {
    std::vector<std::pair<int, Rat>> t;
    for (int j = 0; j <= i; ++j) t.emplace_back(j, Rat(j + 1));
    p.rows.push_back(row(std::move(t), RowSense::LE, Rat(5)));
  }
  CHECK(solve_lp(p, 1).status == LpStatus::IterLimit);
  CHECK(solve_lp(p).status == LpStatus::Optimal);
}

TEST_CASE("an expired wall-clock deadline stops the solve mid-LP") {
  LpProblem p;
  for (int j = 0; j < 4; ++j) p.add_col(Rat(0), Rat(9), Rat(-1));
  for (int i = 0; i < 4; ++i) {
    std::vector<std::pair<int, Rat>> t;
    for (int j = 0; j <= i; ++j) t.emplace_back(j, Rat(j + 1));
    p.rows.push_back(row(std::move(t), RowSense::LE, Rat(5)));
  }
  Simplex spx(p);
  spx.set_deadline(std::chrono::steady_clock::now() -
                   std::chrono::seconds(1));
  CHECK(spx.optimize() == LpStatus::IterLimit);
  spx.set_deadline(std::nullopt);
  REQUIRE(spx.optimize() == LpStatus::Optimal);
  CHECK(spx.objective() == Rat(-5));
}

TEST_CASE("random box LPs agree with vertex enumeration") {
  Rng rng(0x51317a9e);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 80; ++trial) {
    LpProblem p = random_lp(rng, 5, 6);
    crntest::LpOracle want = lp_vertex_enumerate(p);
    LpResult got = solve_lp(p);
    REQUIRE(got.status != LpStatus::Unbounded);
    if (want.feasible) {
      ++feasible_seen;
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.objective == want.objective);
      CHECK(lp_point_feasible(p, got.x));
      Rat z(0);
      for (int j = 0; j < p.ncols; ++j) z += p.obj[j] * got.x[j];
      CHECK(z == got.objective);
    } else {
      ++infeasible_seen;
      CHECK(got.status == LpStatus::Infeasible);
    }
  }
  // the generator should exercise both outcomes
  CHECK(feasible_seen >= 10);
  CHECK(infeasible_seen >= 10);
}

TEST_CASE("warm restarts after bound changes match cold solves") {
  Rng rng(0xbdc0ffee);
  for (int trial = 0; trial < 40; ++trial) {
    LpProblem p = random_lp(rng, 4, 5);
    Simplex warm(p);
    LpStatus st = warm.optimize();
    LpProblem shadow = p;
    for (int round = 0; round < 4; ++round) {
      int j = static_cast<int>(rng.below(static_cast<unsigned long>(p.ncols)));
      std::optional<Rat> lo, hi;
      switch (rng.below(3)) {
        case 0: {  // pin to a point inside the original box
          Rat t = crntest::random_rational(rng, 0, 4, 4);
          if (t > 1) t = 1 / t;
          Rat v = *p.lb[j] + t * (*p.ub[j] - *p.lb[j]);
          lo = v;
          hi = v;
          break;
        }
        case 1:  // halve the box from below
          lo = (*p.lb[j] + *p.ub[j]) / 2;
          hi = p.ub[j];
          break;
        default:  // restore the original box
          lo = p.lb[j];
          hi = p.ub[j];
          break;
      }
      warm.set_bounds(j, lo, hi);
      shadow.lb[j] = lo;
      shadow.ub[j] = hi;
      st = warm.optimize();
      LpResult cold = solve_lp(shadow);
      REQUIRE(st == cold.status);
      if (st == LpStatus::Optimal) {
        CHECK(warm.objective() == cold.objective);
        CHECK(lp_point_feasible(shadow, warm.values()));
        CHECK(warm.self_check());
      }
    }
  }
}
