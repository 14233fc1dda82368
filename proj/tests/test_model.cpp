#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/model.hpp"
#include "crn/network.hpp"
#include "testutil.hpp"

using namespace crn;

namespace {

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

// 2X1 -> 2X2 (k=1), 2X2 -> X1+X2 (k=2)
MassActionSystem cascade() {
  MassActionSystem sys;
  sys.net.species = {"X1", "X2"};
  sys.net.complexes = {{{Rat(2), Rat(0)}}, {{Rat(0), Rat(2)}}, {{Rat(1), Rat(1)}}};
  sys.net.reactions = {{0, 1}, {1, 2}};
  sys.rates = {Rat(1), Rat(2)};
  return sys;
}

// 2X1 <-> 2X2, both rates 1
MassActionSystem exchange() {
  MassActionSystem sys;
  sys.net.species = {"X1", "X2"};
  sys.net.complexes = {{{Rat(2), Rat(0)}}, {{Rat(0), Rat(2)}}};
  sys.net.reactions = {{0, 1}, {1, 0}};
  sys.rates = {Rat(1), Rat(1)};
  return sys;
}

MilpModel model_of(const MassActionSystem& sys, const ModelConfig& cfg) {
  auto m = build_matrices(sys);
  return build_model(m.Y, m.M, stoichiometric_dim(sys.net), cfg);
}

Rat row_value(const LpRow& r, const std::vector<Rat>& x) {
  Rat v = 0;
  for (const auto& [col, a] : r.terms) v += a * x[col];
  return v;
}

bool row_holds(const LpRow& r, const std::vector<Rat>& x) {
  Rat v = row_value(r, x);
  if (r.sense == RowSense::LE) return v <= r.rhs;
  if (r.sense == RowSense::GE) return v >= r.rhs;
  return v == r.rhs;
}

int row_index(const MilpModel& md, const std::string& name) {
  auto it = std::find(md.row_names.begin(), md.row_names.end(), name);
  REQUIRE(it != md.row_names.end());
  return int(it - md.row_names.begin());
}

}  // namespace

TEST_CASE("model block layout and counts on the 5-complex cycle") {
  auto md = model_of(cycle_plus_chord(), ModelConfig{});
  CHECK(md.ncomplexes == 5);
  CHECK(md.nspecies == 2);
  CHECK(md.sdim == 2);
  CHECK(md.nclasses == 3);

  CHECK(md.off_b - md.off_d == 2);
  CHECK(md.off_lam - md.off_b == 20);
  CHECK(md.off_gam - md.off_lam == 15);
  CHECK(md.off_s - md.off_gam == 60);
  CHECK(md.off_sp - md.off_s == 60);
  CHECK(md.off_l - md.off_sp == 60);
  CHECK(md.off_w - md.off_l == 3);
  CHECK(md.off_wp - md.off_w == 20);
  CHECK(md.off_c - md.off_wp == 20);
  CHECK(md.off_cp - md.off_c == 15);
  CHECK(md.var_count() == 280);

  int binaries = 0;
  for (bool b : md.prob.integral) binaries += b ? 1 : 0;
  CHECK(binaries == 150);

  CHECK(md.row_count() == 551);

  CHECK(md.var_names[md.b(1, 3)] == "b_2_4");
  CHECK(md.var_names[md.lam(0, 2)] == "lam_1_3");
  CHECK(md.var_names[md.sp(4, 0, 1)] == "sp_5_1_2");
  CHECK(md.var_names[md.gam(2, 4, 0)] == "gam_3_5_1");
  CHECK(md.var_names[md.cp(4)] == "cp_5");
  CHECK(md.row_names.front() == "lc_1_1");
  CHECK(md.row_names.back() == "flow_5");

  // branch designated complexes first, gammas last
  CHECK(md.prob.priority[md.c(0, 0)] == 0);
  CHECK(md.prob.priority[md.lam(0, 0)] == 1);
  CHECK(md.prob.priority[md.sp(0, 1, 0)] == 2);
  CHECK(md.prob.priority[md.gam(0, 1, 0)] == 3);

  // scaling bounds under conjugacy, pinned to 1 under dynamic equivalence
  CHECK(*md.prob.lp.lb[md.d(0)] == Rat(11, 100));
  CHECK(*md.prob.lp.ub[md.d(0)] == Rat(10));
  CHECK(*md.prob.lp.ub[md.b(0, 1)] == Rat(10));
  CHECK(!md.prob.lp.ub[md.w(0, 1)].has_value());

  ModelConfig dyn;
  dyn.mode = ConjugacyMode::DynamicEquivalence;
  auto md2 = model_of(cycle_plus_chord(), dyn);
  CHECK(*md2.prob.lp.lb[md2.d(1)] == Rat(1));
  CHECK(*md2.prob.lp.ub[md2.d(1)] == Rat(1));
  CHECK(md2.var_count() == 280);

  // objective: only the class-population variables, each at -1
  for (int col = 0; col < md.var_count(); ++col) {
    if (col >= md.off_l && col < md.off_w)
      CHECK(md.prob.lp.obj[col] == Rat(-1));
    else
      CHECK(md.prob.lp.obj[col] == Rat(0));
  }
}

TEST_CASE("kinetics-matching rows carry the right coefficients") {
  auto md = model_of(cascade(), ModelConfig{});
  CHECK(md.nclasses == 2);

  // species 1 at complex 1: b_1_2 (0-2) + b_1_3 (1-2) = d_1 * (-2)
  const LpRow& r = md.prob.lp.rows[row_index(md, "lc_1_1")];
  CHECK(r.sense == RowSense::EQ);
  CHECK(r.rhs == Rat(0));
  REQUIRE(r.terms.size() == 3);
  CHECK(r.terms[0].first == md.b(0, 1));
  CHECK(r.terms[0].second == Rat(-2));
  CHECK(r.terms[1].first == md.b(0, 2));
  CHECK(r.terms[1].second == Rat(-1));
  CHECK(r.terms[2].first == md.d(0));
  CHECK(r.terms[2].second == Rat(2));

  // complex 3 has zero kinetics, so no d term shows up
  const LpRow& r3 = md.prob.lp.rows[row_index(md, "lc_1_3")];
  for (const auto& [col, a] : r3.terms) CHECK(col != md.d(0));
}

TEST_CASE("the true rates of the exchange network satisfy the kinetics rows") {
  ModelConfig dyn;
  dyn.mode = ConjugacyMode::DynamicEquivalence;
  auto md = model_of(exchange(), dyn);

  std::vector<Rat> x(md.var_count(), Rat(0));
  x[md.d(0)] = Rat(1);
  x[md.d(1)] = Rat(1);
  x[md.b(0, 1)] = Rat(1);
  x[md.b(1, 0)] = Rat(1);

  for (int idx = 0; idx < md.row_count(); ++idx)
    if (md.row_names[idx].rfind("lc_", 0) == 0)
      CHECK(row_holds(md.prob.lp.rows[idx], x));

  // perturbing one rate breaks the match
  x[md.b(0, 1)] = Rat(2);
  CHECK(!row_holds(md.prob.lp.rows[row_index(md, "lc_1_1")], x));
}

TEST_CASE("class separation forces rates and circulation to zero") {
  auto md = model_of(cascade(), ModelConfig{});
  std::vector<Rat> x(md.var_count(), Rat(0));
  // complexes 1,2 in class 1; complex 3 in class 2
  x[md.lam(0, 0)] = Rat(1);
  x[md.lam(1, 0)] = Rat(1);
  x[md.lam(2, 1)] = Rat(1);

  // cross-class arc 1->3 must vanish
  x[md.b(0, 2)] = Rat(1, 2);
  CHECK(!row_holds(md.prob.lp.rows[row_index(md, "link_1_3_2")], x));
  x[md.b(0, 2)] = Rat(0);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "link_1_3_2")], x));

  // within-class arc may use the whole range
  x[md.b(0, 1)] = Rat(7);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "link_1_2_1")], x));
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "link_1_2_2")], x));

  // same switching applies to the extra circulation arcs
  x[md.wp(0, 2)] = Rat(1, 4);
  CHECK(!row_holds(md.prob.lp.rows[row_index(md, "wplink_1_3_2")], x));
  x[md.wp(0, 2)] = Rat(0);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "wplink_1_3_2")], x));
}

TEST_CASE("population indicator follows the class content") {
  auto md = model_of(cascade(), ModelConfig{});
  std::vector<Rat> x(md.var_count(), Rat(0));
  x[md.lam(0, 0)] = Rat(1);
  x[md.lam(1, 0)] = Rat(1);
  x[md.lam(2, 0)] = Rat(1);  // class 2 left empty

  // an empty class cannot score
  x[md.l(1)] = Rat(1);
  CHECK(!row_holds(md.prob.lp.rows[row_index(md, "lmin_2")], x));
  x[md.l(1)] = Rat(0);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "lmin_2")], x));
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "lmax_2")], x));

  // a populated class can take l all the way to 1
  x[md.l(0)] = Rat(1);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "lmin_1")], x));
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "lmax_1")], x));
}

TEST_CASE("symmetry breaking pins the first complex to the first class") {
  auto md = model_of(cascade(), ModelConfig{});
  std::vector<Rat> x(md.var_count(), Rat(0));
  // putting complex 1 in class 2 violates sym_1_1
  x[md.lam(0, 1)] = Rat(1);
  CHECK(!row_holds(md.prob.lp.rows[row_index(md, "sym_1_1")], x));
  x[md.lam(0, 1)] = Rat(0);
  x[md.lam(0, 0)] = Rat(1);
  CHECK(row_holds(md.prob.lp.rows[row_index(md, "sym_1_1")], x));
}

TEST_CASE("span rows mix the weights against the sampled coefficients") {
  auto md = model_of(cascade(), ModelConfig{});

  // every sampled coefficient lies in [sqrt(eps), 1/sqrt(eps)] with
  // denominator dividing 10^6, and they are pairwise distinct
  std::vector<Rat> seen;
  for (int i = 0; i < md.ncomplexes; ++i)
    for (int j = 0; j < md.ncomplexes; ++j) {
      if (i == j) continue;
      const Rat& v = md.delta[i][j];
      CHECK(v * v >= md.config.eps);
      CHECK(v * v <= Rat(1) / md.config.eps);
      CHECK(Int(1000000) % v.get_den() == 0);
      seen.push_back(v);
    }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

  // span_1_1: s and gam terms come in pairs with the gam side scaled by
  // the sampled coefficient
  const LpRow& r = md.prob.lp.rows[row_index(md, "span_1_1")];
  REQUIRE(r.terms.size() == 12);  // six pairs with nonzero Y difference
  CHECK(r.terms[0].first == md.sv(0, 1, 0));
  CHECK(r.terms[0].second == Rat(-2));
  CHECK(r.terms[1].first == md.gam(0, 1, 0));
  CHECK(r.terms[1].second == Rat(2) * md.delta[0][1]);
  CHECK(r.terms[2].first == md.sv(0, 2, 0));
  CHECK(r.terms[2].second == Rat(-1));
  CHECK(r.terms[3].first == md.gam(0, 2, 0));
  CHECK(r.terms[3].second == md.delta[0][2]);
}

TEST_CASE("deficiency rows: per-class cap only under the full condition set") {
  auto base = model_of(cycle_plus_chord(), ModelConfig{});
  CHECK(std::count_if(base.row_names.begin(), base.row_names.end(),
                      [](const std::string& s) { return s.rfind("dot_", 0) == 0; }) == 3);

  const LpRow& cap = base.prob.lp.rows[row_index(base, "dot_1")];
  CHECK(cap.sense == RowSense::LE);
  CHECK(cap.rhs == Rat(2));
  CHECK(cap.terms.size() == 5 + 20);

  const LpRow& sum = base.prob.lp.rows[row_index(base, "ssum")];
  CHECK(sum.sense == RowSense::EQ);
  CHECK(sum.rhs == Rat(2));
  CHECK(sum.terms.size() == 60);

  ModelConfig relaxed;
  relaxed.theorem = TheoremKind::SumOnly;
  auto md = model_of(cycle_plus_chord(), relaxed);
  CHECK(md.row_count() == 548);
  for (const auto& name : md.row_names) CHECK(name.rfind("dot_", 0) != 0);
}

TEST_CASE("circulation cap switch widens the designated-complex bound") {
  auto md = model_of(cascade(), ModelConfig{});
  const LpRow& tight = md.prob.lp.rows[row_index(md, "wpcap_1_2")];
  REQUIRE(tight.terms.size() == 2);
  CHECK(tight.terms[0].first == md.wp(0, 1));
  CHECK(tight.terms[1].first == md.cp(0));
  CHECK(tight.terms[1].second == Rat(-1));

  ModelConfig wide;
  wide.scaled_wprime = true;
  auto md2 = model_of(cascade(), wide);
  const LpRow& loose = md2.prob.lp.rows[row_index(md2, "wpcap_1_2")];
  CHECK(loose.terms[1].second == Rat(-10));
}

TEST_CASE("building the same model twice is byte-for-byte identical") {
  auto a = model_of(cycle_plus_chord(), ModelConfig{});
  auto b = model_of(cycle_plus_chord(), ModelConfig{});
  CHECK(a.var_names == b.var_names);
  CHECK(a.row_names == b.row_names);
  CHECK(a.delta == b.delta);
  REQUIRE(a.row_count() == b.row_count());
  for (int i = 0; i < a.row_count(); ++i) {
    const LpRow& ra = a.prob.lp.rows[i];
    const LpRow& rb = b.prob.lp.rows[i];
    CHECK(ra.terms == rb.terms);
    CHECK(ra.sense == rb.sense);
    CHECK(ra.rhs == rb.rhs);
  }

  ModelConfig other;
  other.seed = 99;
  auto c = model_of(cycle_plus_chord(), other);
  CHECK(a.delta != c.delta);
}

TEST_CASE("model construction rejects bad inputs") {
  auto m = build_matrices(cascade());
  ModelConfig cfg;
  CHECK_THROWS_AS(build_model(m.Y, m.M, 3, cfg), std::invalid_argument);  // n - s < 1
  CHECK_THROWS_AS(build_model(m.Y, m.M, -1, cfg), std::invalid_argument);

  ModelConfig bad;
  bad.eps = Rat(1);
  CHECK_THROWS_AS(build_model(m.Y, m.M, 1, bad), std::invalid_argument);
  bad.eps = Rat(0);
  CHECK_THROWS_AS(build_model(m.Y, m.M, 1, bad), std::invalid_argument);

  Mat wrong(2, 2);
  CHECK_THROWS_AS(build_model(m.Y, wrong, 1, cfg), std::invalid_argument);
}
