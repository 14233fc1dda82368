#pragma once

#include <cstdint>
#include <vector>

#include "crn/simplex.hpp"

namespace crn {

// Mixed-integer program: the LP plus integrality marks. priority steers
// branching (lower numbers branch first); empty means indifferent.
struct MilpProblem {
  LpProblem lp;
  std::vector<bool> integral;
  std::vector<int> priority;
};

enum class MilpStatus { Optimal, Infeasible, Limit };

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  bool has_solution = false;
  Rat objective;
  std::vector<Rat> x;
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
};

struct MilpLimits {
  std::int64_t max_nodes = -1;  // negative: unlimited
  double max_seconds = -1;      // negative: unlimited
  int threads = 1;              // 1 is the serial reference path
};

// Exact branch-and-bound: bound propagation (FBBT) with integer
// rounding at every node, warm dual-simplex re-solves along the DFS
// trail, most-fractional branching within the priority class, and the
// nearer child first. Serial runs are deterministic including the node
// count; parallel runs split the frontier across OpenMP threads and
// share the incumbent, guaranteeing the same objective value.
MilpResult solve_milp(const MilpProblem& p, const MilpLimits& limits = {});

struct FloatMilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  bool has_solution = false;
  double objective = 0;
  std::vector<double> x;
  std::int64_t nodes = 0;
};

// Double-precision twin of solve_milp with 1e-9 feasibility tolerances.
// Exists for speed comparisons only: its answers are as good as the
// tolerances and are never handed to the verifier or the decoder.
FloatMilpResult solve_milp_float(const MilpProblem& p,
                                 const MilpLimits& limits = {});

}  // namespace crn
