// Solver speed comparison: exact serial vs exact OpenMP vs the float
// twin. The exact solver is the product; serial and parallel runs must
// land on the same objective, and the float solver must match it within
// 1e-6 -- a mismatch is a bug, so the bench fails loudly on one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "crn/milp.hpp"
#include "crn/model.hpp"
#include "crn/parse.hpp"
#include "crn/rng.hpp"
#include "crn/search.hpp"

using namespace crn;

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_it(F&& f) {
  auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* label, double seconds, bool ok) {
  std::printf("  %-18s %8.3f s%s\n", label, seconds, ok ? "" : "  MISMATCH");
  if (!ok) ++failures;
}

// Half-capacity knapsack with values nearly proportional to weights:
// the ties force branch and bound to earn its answer.
MilpProblem knapsack(Rng& rng, int n) {
  MilpProblem p;
  LpRow row;
  Rat total(0);
  for (int j = 0; j < n; ++j) {
    p.lp.add_col(Rat(0), Rat(1), Rat(0));
    Rat w(rng.range(20, 60));
    row.terms.emplace_back(j, w);
    total += w;
    p.lp.obj[j] = -(w + Rat(rng.range(0, 8)) / 8);
  }
  p.integral.assign(n, true);
  row.sense = RowSense::LE;
  row.rhs = total / 2;
  p.lp.rows.push_back(std::move(row));
  return p;
}

void bench_batch(int count, int threads) {
  std::printf("knapsack batch: %d instances, 18 binaries each\n", count);
  Rng rng(0xbe7c4);
  std::vector<MilpProblem> probs;
  probs.reserve(count);
  for (int i = 0; i < count; ++i) probs.push_back(knapsack(rng, 18));

  std::vector<MilpResult> base(count);
  MilpLimits serial;
  double t1 = time_it([&] {
    for (int i = 0; i < count; ++i) base[i] = solve_milp(probs[i], serial);
  });
  report("exact serial", t1, true);

  MilpLimits par;
  par.threads = threads;
  bool ok = true;
  double tp = time_it([&] {
    for (int i = 0; i < count; ++i) {
      MilpResult r = solve_milp(probs[i], par);
      ok = ok && r.status == base[i].status &&
           (!r.has_solution || r.objective == base[i].objective);
    }
  });
  char label[32];
  std::snprintf(label, sizeof label, "exact %d threads", threads);
  report(label, tp, ok);

  ok = true;
  double tf = time_it([&] {
    for (int i = 0; i < count; ++i) {
      FloatMilpResult r = solve_milp_float(probs[i]);
      ok = ok && r.status == base[i].status &&
           (!r.has_solution ||
            std::abs(r.objective - base[i].objective.get_d()) <= 1e-6);
    }
  });
  report("float", tf, ok);
}

void bench_model(const char* name, const char* text, ConjugacyMode mode,
                 int threads) {
  MassActionSystem sys = parse_network(text);
  ModelConfig cfg;
  cfg.mode = mode;
  MilpModel md = build_search_model(sys, cfg);
  int nbin = 0;
  for (bool b : md.prob.integral) nbin += b;
  std::printf("%s: %d complexes, %s; %d vars (%d binary), %d rows\n", name,
              sys.net.complex_count(),
              mode == ConjugacyMode::DynamicEquivalence ? "dynamic equivalence"
                                                        : "linear conjugacy",
              md.var_count(), nbin, md.row_count());

  MilpResult base;
  MilpLimits serial;
  double t1 = time_it([&] { base = solve_milp(md.prob, serial); });
  report("exact serial", t1, true);

  MilpLimits par;
  par.threads = threads;
  MilpResult rp;
  double tp = time_it([&] { rp = solve_milp(md.prob, par); });
  char label[32];
  std::snprintf(label, sizeof label, "exact %d threads", threads);
  report(label, tp,
         rp.status == base.status &&
             (!rp.has_solution || rp.objective == base.objective));

  FloatMilpResult rf;
  double tf = time_it([&] { rf = solve_milp_float(md.prob); });
  report("float", tf,
         rf.status == base.status &&
             (!rf.has_solution ||
              std::abs(rf.objective - base.objective.get_d()) <= 1e-6));
  if (base.has_solution)
    std::printf("  objective %s, %lld nodes serial\n",
                rational_string(base.objective).c_str(),
                static_cast<long long>(base.nodes));
}

constexpr const char* kExchange =
    "2 X1 -> 2 X2 ; k=1\n"
    "2 X2 -> 2 X1 ; k=1\n";

constexpr const char* kCascade =
    "2 X1 -> 2 X2 ; k=1\n"
    "2 X2 -> X1 + X2 ; k=2\n";

constexpr const char* kFiveComplex =
    "0 -> 3 X2 ; k=1\n"
    "3 X2 -> 3 X1 ; k=1\n"
    "3 X1 -> 0 ; k=1\n"
    "X1 + X2 -> 2 X1 + 2 X2 ; k=1\n";

}  // namespace

int main(int argc, char** argv) {
  int threads = 4;
  int batch = 8;
  bool full = false;
  CLI::App app{"solver speed comparison: exact serial / exact OpenMP / float"};
  app.add_option("--threads", threads, "parallel worker count")
      ->capture_default_str();
  app.add_option("--batch", batch, "random instances in the batch")
      ->capture_default_str();
  app.add_flag("--full", full,
               "include the five-complex dynamic-equivalence search "
               "(minutes of exact solving)");
  CLI11_PARSE(app, argc, argv);

  std::printf(
      "hardware threads: %u (parallel beats serial only past 1; the "
      "objective checks hold regardless)\n\n",
      std::thread::hardware_concurrency());
  bench_batch(batch, threads);
  std::printf("\n");
  bench_model("exchange search", kExchange, ConjugacyMode::LinearConjugacy,
              threads);
  std::printf("\n");
  bench_model("cascade search", kCascade, ConjugacyMode::LinearConjugacy,
              threads);
  if (full) {
    std::printf("\n");
    bench_model("five-complex search", kFiveComplex,
                ConjugacyMode::DynamicEquivalence, threads);
  }
  return failures == 0 ? 0 : 1;
}
