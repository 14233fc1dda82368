#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crn/matrix.hpp"
#include "crn/milp.hpp"
#include "crn/rational.hpp"

namespace crn {

// Whether the kinetic matrix must be matched exactly or only up to a
// positive diagonal rescaling diag(d) of the species.
enum class ConjugacyMode { DynamicEquivalence, LinearConjugacy };

// Which structural conditions the realization has to satisfy.
//   DeficiencyOne: every class deficiency <= 1 and the class deficiencies
//                  sum to the network deficiency.
//   SumOnly:       just the sum condition, no per-class cap.
enum class TheoremKind { DeficiencyOne, SumOnly };

struct ModelConfig {
  Rat eps = Rat(1, 10);
  std::uint64_t seed = 12648430;
  ConjugacyMode mode = ConjugacyMode::LinearConjugacy;
  TheoremKind theorem = TheoremKind::DeficiencyOne;
  // The circulation arcs leaving a designated complex are capped by cp
  // itself.  Setting this scales the cap by 1/eps instead, which loosens
  // the flow bound without changing which supports are feasible.
  bool scaled_wprime = false;
};

// The realization search MILP.  Variables, in blocks, all named 1-based:
//   d_k          species scaling (fixed to 1 under dynamic equivalence)
//   b_i_j        candidate rate from complex i to complex j
//   lam_i_t      complex i sits in class t
//   gam_i_j_t    both i and j sit in class t
//   s_i_j_t      span certificate weight for the pair (i,j) in class t
//   sp_i_j_t     indicator that s_i_j_t is switched on
//   l_t          class t is populated (pushed to 1 by the objective)
//   w_i_j        flow shadowing the support of b
//   wp_i_j       extra circulation out of designated complexes
//   c_i_t        complex i is the designated complex of class t
//   cp_i         complex i is designated in some class
struct MilpModel {
  MilpProblem prob;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;

  int nspecies = 0;    // m
  int ncomplexes = 0;  // n
  int sdim = 0;        // rank of the target's reaction vectors
  int nclasses = 0;    // n - sdim candidate classes
  ModelConfig config;

  // Sampled span-test coefficients, delta[i][j] for i != j (diagonal unused).
  std::vector<std::vector<Rat>> delta;

  // Column lookups. Complexes i,j and species k are 0-based here and i != j
  // where a pair is asked for; t is a 0-based class index.
  int d(int k) const { return off_d + k; }
  int b(int i, int j) const { return off_b + pair(i, j); }
  int lam(int i, int t) const { return off_lam + i * nclasses + t; }
  int gam(int i, int j, int t) const { return off_gam + pair(i, j) * nclasses + t; }
  int sv(int i, int j, int t) const { return off_s + pair(i, j) * nclasses + t; }
  int sp(int i, int j, int t) const { return off_sp + pair(i, j) * nclasses + t; }
  int l(int t) const { return off_l + t; }
  int w(int i, int j) const { return off_w + pair(i, j); }
  int wp(int i, int j) const { return off_wp + pair(i, j); }
  int c(int i, int t) const { return off_c + i * nclasses + t; }
  int cp(int i) const { return off_cp + i; }

  int var_count() const { return prob.lp.ncols; }
  int row_count() const { return int(prob.lp.rows.size()); }

  int off_d = 0, off_b = 0, off_lam = 0, off_gam = 0, off_s = 0, off_sp = 0,
      off_l = 0, off_w = 0, off_wp = 0, off_c = 0, off_cp = 0;

 private:
  int pair(int i, int j) const { return i * (ncomplexes - 1) + (j > i ? j - 1 : j); }
};

// Builds the search model for a target with complex matrix y (m x n) and
// kinetic matrix mm (m x n) whose reaction vectors span an s-dimensional
// space. Throws std::invalid_argument on shape mismatch, eps outside (0,1),
// or n - s < 1.
MilpModel build_model(const Mat& y, const Mat& mm, int s, const ModelConfig& cfg);

}  // namespace crn
