#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/milp.hpp"
#include "crn/model.hpp"
#include "crn/network.hpp"
#include "crn/realization.hpp"
#include "testutil.hpp"

using namespace crn;

namespace {

// 0 -> 3X2 -> 3X1 -> 0 plus X1+X2 -> 2X1+2X2, all rates 1. Complexes are
// indexed 0:zero, 1:3X2, 2:3X1, 3:X1+X2, 4:2X1+2X2 throughout.
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

// 2X1 -> X1+X2 and X2 -> X1, both rates 1: the textbook pair whose
// dynamics are reproduced by 2X1 <-> X2 after doubling the second species.
MassActionSystem quadratic_pair_original() {
  MassActionSystem sys;
  sys.net.species = {"X1", "X2"};
  sys.net.complexes = {{{Rat(2), Rat(0)}},
                       {{Rat(1), Rat(1)}},
                       {{Rat(0), Rat(1)}},
                       {{Rat(1), Rat(0)}}};
  sys.net.reactions = {{0, 1}, {2, 3}};
  sys.rates = {Rat(1), Rat(1)};
  return sys;
}

// 2X1 <-> X2 with rates 1/2 and 1, conjugate to the pair above via
// c = (1, 2). Kept to the two complexes that actually react.
MassActionSystem quadratic_pair_conjugate() {
  MassActionSystem sys;
  sys.net.species = {"X1", "X2"};
  sys.net.complexes = {{{Rat(2), Rat(0)}}, {{Rat(0), Rat(1)}}};
  sys.net.reactions = {{0, 1}, {1, 0}};
  sys.rates = {Rat(1, 2), Rat(1)};
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

MassActionSystem over_cycle_complexes(const std::vector<Reaction>& reactions,
                                      const std::vector<Rat>& rates) {
  MassActionSystem sys = cycle_plus_chord();
  sys.net.reactions = reactions;
  sys.rates = rates;
  return sys;
}

MilpModel model_of(const MassActionSystem& sys, const ModelConfig& cfg) {
  auto m = build_matrices(sys);
  return build_model(m.Y, m.M, kinetic_dim(sys), cfg);
}

std::vector<Rat> ones(int m) { return std::vector<Rat>(m, Rat(1)); }

}  // namespace

TEST_CASE("decode reads scalings and rates off the solution vector") {
  auto target = exchange();

  SUBCASE("dynamic equivalence keeps rates as-is") {
    ModelConfig cfg;
    cfg.mode = ConjugacyMode::DynamicEquivalence;
    auto md = model_of(target, cfg);
    std::vector<Rat> x(md.var_count(), Rat(0));
    x[md.d(0)] = x[md.d(1)] = 1;
    x[md.b(0, 1)] = Rat(3, 2);
    x[md.b(1, 0)] = 1;
    auto real = decode_solution(md, target, x);
    CHECK(real.c == ones(2));
    CHECK(real.sys.net.reactions == std::vector<Reaction>{{0, 1}, {1, 0}});
    CHECK(real.sys.rates == std::vector<Rat>{Rat(3, 2), Rat(1)});
    CHECK(real.isolated.empty());
  }

  SUBCASE("conjugate decoding multiplies by c^{y_i}") {
    auto md = model_of(target, ModelConfig{});
    std::vector<Rat> x(md.var_count(), Rat(0));
    x[md.d(0)] = 2;          // c_1 = 1/2
    x[md.d(1)] = Rat(1, 2);  // c_2 = 2
    x[md.b(0, 1)] = 3;
    x[md.b(1, 0)] = 4;
    auto real = decode_solution(md, target, x);
    CHECK(real.c == std::vector<Rat>{Rat(1, 2), Rat(2)});
    // y_0 = 2X1 so c^{y_0} = 1/4; y_1 = 2X2 so c^{y_1} = 4.
    CHECK(real.sys.rates == std::vector<Rat>{Rat(3, 4), Rat(16)});
  }

  SUBCASE("untouched complexes are kept through a self-loop") {
    auto casc = cascade();
    auto md = model_of(casc, ModelConfig{});
    std::vector<Rat> x(md.var_count(), Rat(0));
    x[md.d(0)] = x[md.d(1)] = 1;
    x[md.b(0, 1)] = 1;
    auto real = decode_solution(md, casc, x);
    CHECK(real.sys.net.reactions == std::vector<Reaction>{{0, 1}, {2, 2}});
    CHECK(real.sys.rates == std::vector<Rat>{Rat(1), Rat(1)});
    CHECK(real.isolated == std::vector<int>{2});
    CHECK(isolated_complexes(real.sys.net) == std::vector<int>{2});
  }

  SUBCASE("malformed input throws") {
    auto md = model_of(target, ModelConfig{});
    std::vector<Rat> x(md.var_count(), Rat(0));
    CHECK_THROWS_AS(decode_solution(md, target, std::vector<Rat>(3, Rat(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(decode_solution(md, cascade(), x), std::invalid_argument);
    // d left at zero
    CHECK_THROWS_AS(decode_solution(md, target, x), std::invalid_argument);
    x[md.d(0)] = x[md.d(1)] = 1;
    x[md.b(1, 0)] = -1;
    CHECK_THROWS_AS(decode_solution(md, target, x), std::invalid_argument);
  }
}

TEST_CASE("the worked conjugate pair verifies through both routes") {
  auto original = quadratic_pair_original();
  auto conjugate = quadratic_pair_conjugate();
  std::vector<Rat> c = {Rat(1), Rat(2)};

  auto check = verify_conjugacy(original, conjugate, c);
  CHECK(check.columns_ok);
  CHECK(check.points_ok);
  CHECK(check.ok());
  CHECK(check.residual == 0);
  CHECK(check.failure.empty());

  SUBCASE("self-looped spectator complexes change nothing") {
    MassActionSystem padded = conjugate;
    padded.net.complexes.push_back({{Rat(1), Rat(1)}});
    padded.net.complexes.push_back({{Rat(1), Rat(0)}});
    padded.net.complexes.push_back({{Rat(0), Rat(3)}});  // absent upstream too
    padded.net.reactions.push_back({2, 2});
    padded.net.reactions.push_back({3, 3});
    padded.net.reactions.push_back({4, 4});
    padded.rates.insert(padded.rates.end(), 3, Rat(1));
    CHECK(verify_conjugacy(original, padded, c).ok());
  }

  SUBCASE("a single wrong rate fails both routes") {
    MassActionSystem wrong = conjugate;
    wrong.rates[0] = Rat(1, 3);
    auto bad = verify_conjugacy(original, wrong, c);
    CHECK_FALSE(bad.columns_ok);
    CHECK_FALSE(bad.points_ok);
    CHECK_FALSE(bad.failure.empty());
    // b(2X1 -> X2) is off by 1/2 - 1/3, and Y stretches that across the
    // 2X1 column: max gap 2 * 1/6 against psi_{2X1}(c) = 1.
    CHECK(bad.residual == Rat(1, 3));
  }

  SUBCASE("wrong constants fail") {
    CHECK_FALSE(verify_conjugacy(original, conjugate, {Rat(1), Rat(3)}).ok());
    CHECK_FALSE(verify_conjugacy(original, conjugate, ones(2)).ok());
  }

  SUBCASE("every system is trivially equivalent to itself") {
    CHECK(verify_conjugacy(original, original, ones(2)).ok());
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(verify_conjugacy(original, conjugate, {Rat(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_conjugacy(original, conjugate, {Rat(1), Rat(0)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_conjugacy(original, conjugate, c, 0),
                    std::invalid_argument);
    MassActionSystem renamed = conjugate;
    renamed.net.species = {"A", "B"};
    CHECK_THROWS_AS(verify_conjugacy(original, renamed, c),
                    std::invalid_argument);
  }

  SUBCASE("thread count changes neither verdict nor message") {
    auto par = verify_conjugacy(original, conjugate, c, 100, 0x5eed, 4);
    CHECK(par.ok());
    MassActionSystem wrong = conjugate;
    wrong.rates[0] = Rat(1, 3);
    auto s1 = verify_conjugacy(original, wrong, c, 100, 0x5eed, 1);
    auto s4 = verify_conjugacy(original, wrong, c, 100, 0x5eed, 4);
    CHECK(s1.columns_ok == s4.columns_ok);
    CHECK(s1.points_ok == s4.points_ok);
    CHECK(s1.failure == s4.failure);
  }
}

TEST_CASE("certifying the equivalent realization of the 5-complex cycle") {
  auto original = cycle_plus_chord();
  // 0 -> 3X2 -> 3X1 -> 0 plus X1+X2 -> {3X2, 3X1}, all rates 1; the
  // doubled complex only spectates.
  Realization real;
  real.sys = over_cycle_complexes(
      {{0, 1}, {1, 2}, {2, 0}, {3, 1}, {3, 2}, {4, 4}},
      {Rat(1), Rat(1), Rat(1), Rat(1), Rat(1), Rat(1)});
  real.c = ones(2);
  real.isolated = {4};

  auto cert = certify(original, real, TheoremKind::DeficiencyOne);
  CHECK(cert.conjugacy.ok());
  CHECK(cert.dynamically_equivalent);
  CHECK(cert.isolated == std::vector<int>{4});

  CHECK(cert.full.n == 5);
  CHECK(cert.full.linkage_count == 2);
  CHECK(cert.full.s == 2);
  CHECK(cert.full.deficiency == 1);
  CHECK(cert.core.n == 4);
  CHECK(cert.core.linkage_count == 1);
  CHECK(cert.core.s == 2);
  CHECK(cert.core.deficiency == 1);

  CHECK(cert.lemma_consistent);
  CHECK(cert.theorem_ok);
  CHECK(cert.certified);
  CHECK_FALSE(cert.weakly_reversible);
  CHECK(cert.conclusion.find("at most one") != std::string::npos);

  SUBCASE("the same realization under the sum-only variant") {
    auto boros = certify(original, real, TheoremKind::SumOnly);
    CHECK(boros.certified);
    CHECK(boros.conclusion.find("finite") != std::string::npos);
  }
}

TEST_CASE("certifying the conjugate realization of the 5-complex cycle") {
  auto original = cycle_plus_chord();
  // Scaling c = (1, 1/3) turns the cycle into a weakly reversible
  // realization: 0 <-> 3X2 <-> X1+X2 <-> 3X1 -> 0.
  Realization real;
  real.sys = over_cycle_complexes(
      {{0, 1}, {1, 0}, {1, 3}, {2, 0}, {3, 1}, {3, 2}, {4, 4}},
      {Rat(3), Rat(1, 27), Rat(1, 9), Rat(1), Rat(7, 9), Rat(5, 9), Rat(1)});
  real.c = {Rat(1), Rat(1, 3)};
  real.isolated = {4};

  auto cert = certify(original, real, TheoremKind::DeficiencyOne);
  CHECK(cert.conjugacy.ok());
  CHECK_FALSE(cert.dynamically_equivalent);
  CHECK(cert.weakly_reversible);
  CHECK(cert.core.n == 4);
  CHECK(cert.core.linkage_count == 1);
  CHECK(cert.core.deficiency == 1);
  CHECK(cert.lemma_consistent);
  CHECK(cert.certified);
  CHECK(cert.conclusion.find("exactly one") != std::string::npos);
}

TEST_CASE("rounded decimal rates do not survive exact verification") {
  auto original = cycle_plus_chord();
  // The shape is right (same support as the exact conjugate realization)
  // but the rates are six-digit decimals and the scaling is off; every
  // choice must be rejected, not accommodated.
  std::vector<Rat> c = {Rat(1), Rat(14, 3)};
  auto printed = over_cycle_complexes(
      {{0, 1}, {1, 0}, {1, 3}, {2, 0}, {3, 1}, {3, 2}, {4, 4}},
      {Rat(1), Rat(571429, 1000000), Rat(642857, 1000000),
       Rat(2109, 1000000), Rat(158163, 1000000), Rat(102041, 1000000),
       Rat(1)});
  CHECK_FALSE(verify_conjugacy(original, printed, c).ok());

  // Mirrored support (role of 3X1 and 3X2 swapped), same decimals.
  auto mirrored = over_cycle_complexes(
      {{0, 2}, {2, 0}, {2, 3}, {1, 0}, {3, 2}, {3, 1}, {4, 4}},
      {Rat(1), Rat(571429, 1000000), Rat(642857, 1000000),
       Rat(2109, 1000000), Rat(158163, 1000000), Rat(102041, 1000000),
       Rat(1)});
  CHECK_FALSE(verify_conjugacy(original, mirrored, c).ok());

  Realization real{printed, c, {4}};
  auto cert = certify(original, real, TheoremKind::DeficiencyOne);
  CHECK_FALSE(cert.certified);
  CHECK(cert.conclusion.find("does not reproduce") != std::string::npos);
}

TEST_CASE("a conjugate candidate that misses the structural conditions") {
  // The cycle network itself: a genuine realization of its own dynamics,
  // but its class deficiencies sum to 0 while the network deficiency is 1.
  auto original = cycle_plus_chord();
  Realization self{original, ones(2), {}};
  for (auto kind : {TheoremKind::DeficiencyOne, TheoremKind::SumOnly}) {
    auto cert = certify(original, self, kind);
    CHECK(cert.conjugacy.ok());
    CHECK(cert.lemma_consistent);
    CHECK_FALSE(cert.theorem_ok);
    CHECK_FALSE(cert.certified);
    CHECK(cert.conclusion.find("no steady-state conclusion") !=
          std::string::npos);
  }
}

TEST_CASE("spectator complexes never change a certificate verdict") {
  auto original = exchange();
  Realization padded;
  padded.sys = original;
  padded.sys.net.complexes.push_back({{Rat(3), Rat(3)}});
  padded.sys.net.reactions.push_back({2, 2});
  padded.sys.rates.push_back(Rat(1));
  padded.c = ones(2);

  auto cert = certify(original, padded, TheoremKind::DeficiencyOne);
  CHECK(cert.isolated == std::vector<int>{2});
  CHECK(cert.full.n == 3);
  CHECK(cert.full.linkage_count == 2);
  CHECK(cert.core.n == 2);
  CHECK(cert.core.linkage_count == 1);
  CHECK(cert.full.deficiency == cert.core.deficiency);
  CHECK(cert.lemma_consistent);
  CHECK(cert.certified);  // deficiency 0, weakly reversible
  CHECK(cert.weakly_reversible);
}

TEST_CASE("model, solver, decoder and certificate agree end to end") {
  SUBCASE("exchange, dynamic equivalence: the only realization is itself") {
    auto target = exchange();
    ModelConfig cfg;
    cfg.mode = ConjugacyMode::DynamicEquivalence;
    auto md = model_of(target, cfg);
    auto res = solve_milp(md.prob);
    REQUIRE(res.status == MilpStatus::Optimal);
    auto real = decode_solution(md, target, res.x);
    CHECK(real.sys.net.reactions == std::vector<Reaction>{{0, 1}, {1, 0}});
    CHECK(real.sys.rates == std::vector<Rat>{Rat(1), Rat(1)});
    auto cert = certify(target, real, TheoremKind::DeficiencyOne);
    CHECK(cert.certified);
    CHECK(cert.dynamically_equivalent);
  }

  SUBCASE("exchange, conjugate mode") {
    auto target = exchange();
    auto md = model_of(target, ModelConfig{});
    auto res = solve_milp(md.prob);
    REQUIRE(res.status == MilpStatus::Optimal);
    auto real = decode_solution(md, target, res.x);
    auto cert = certify(target, real, TheoremKind::DeficiencyOne);
    CHECK(cert.certified);
  }

  SUBCASE("cascade splits into two classes and drops the third complex") {
    auto target = cascade();
    ModelConfig cfg;
    cfg.mode = ConjugacyMode::DynamicEquivalence;
    cfg.seed = 1;
    auto md = model_of(target, cfg);
    REQUIRE(abs(md.delta[0][1] - md.delta[1][0]) >= cfg.eps);
    auto res = solve_milp(md.prob);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.objective == Rat(-2));  // both candidate classes populated
    auto real = decode_solution(md, target, res.x);
    CHECK(real.sys.net.reactions ==
          std::vector<Reaction>{{0, 1}, {1, 0}, {2, 2}});
    CHECK(real.sys.rates == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    CHECK(real.isolated == std::vector<int>{2});
    auto cert = certify(target, real, TheoremKind::DeficiencyOne);
    CHECK(cert.certified);
    CHECK(cert.weakly_reversible);
    CHECK(cert.core.deficiency == 0);
  }

  SUBCASE("an unlucky span draw costs a class but never the certificate") {
    // The default seed samples delta[0][1] and delta[1][0] closer than
    // eps, so no class consisting of exactly those two complexes can
    // discharge its span rows: the two-class optimum above becomes
    // infeasible and the search settles for one class. The realization
    // it finds still certifies; only the class count suffers.
    auto target = cascade();
    ModelConfig cfg;
    cfg.mode = ConjugacyMode::DynamicEquivalence;
    auto md = model_of(target, cfg);
    REQUIRE(abs(md.delta[0][1] - md.delta[1][0]) < cfg.eps);
    auto res = solve_milp(md.prob);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.objective == Rat(-1));
    auto real = decode_solution(md, target, res.x);
    CHECK(real.isolated.empty());
    auto cert = certify(target, real, TheoremKind::DeficiencyOne);
    CHECK(cert.certified);
    CHECK_FALSE(cert.weakly_reversible);
    CHECK(cert.core.deficiency == 1);
  }
}
