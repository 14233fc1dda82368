#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crn/graph.hpp"
#include "crn/model.hpp"
#include "crn/network.hpp"

namespace crn {

// A realization decoded from a model solution: a mass-action system over
// the target's complexes whose trajectories reproduce the target's after
// rescaling each species, x_target(t) = diag(c) * x(t). Dynamic
// equivalence is the special case c = 1.
struct Realization {
  MassActionSystem sys;  // full view: idle complexes kept via self-loops
  std::vector<Rat> c;    // one positive constant per species
  std::vector<int> isolated;  // complexes attached only by their self-loop
};

// Reads the realization out of an exact solution vector for `model`:
// c = 1/d and k(i->j) = b[i,j] * c^{y_i}. `target` must be the system the
// model was built from (same species and complex order). Throws
// std::invalid_argument when the vector does not decode cleanly.
Realization decode_solution(const MilpModel& model,
                            const MassActionSystem& target,
                            const std::vector<Rat>& x);

// Exact conjugacy verdict via two independent routes:
//   columns: kinetic-matrix identity M'[:,i] = c^{y_i} * diag(1/c) * M[:,i]
//            over the union of the complex sets (absent complex = zero
//            column), computed through Y*A;
//   points:  f(x) = diag(c) * f'(diag(1/c) x) at random positive states,
//            evaluated reaction by reaction.
// The routes share no arithmetic with each other or with the decoder.
struct ConjugacyCheck {
  bool columns_ok = false;
  bool points_ok = false;
  // Largest entry of |Y·A(B) - diag(1/c)·M| over the union of the complex
  // sets, where A(B) is the candidate's Laplacian pulled back to rate
  // variables (b = k*/psi_i(c)). Exactly zero iff columns_ok; rounded
  // decimal fixtures land at small positive values here.
  Rat residual;
  std::string failure;  // first mismatch, empty when both routes pass

  bool ok() const { return columns_ok && points_ok; }
};

ConjugacyCheck verify_conjugacy(const MassActionSystem& original,
                                const MassActionSystem& candidate,
                                const std::vector<Rat>& c, int npoints = 100,
                                std::uint64_t seed = 0x5eed, int threads = 1);

// Everything a found realization has to survive before it counts:
// conjugacy to the original, the structural conditions of the requested
// theorem on the core network, and agreement between the full and core
// views (self-looped spectator complexes must not change any verdict).
struct Certificate {
  ConjugacyCheck conjugacy;
  bool dynamically_equivalent = false;  // every c_k == 1
  TheoremKind theorem = TheoremKind::DeficiencyOne;  // conditions requested
  DeficiencyReport full;                // isolated complexes included
  DeficiencyReport core;                // isolated complexes stripped
  std::vector<int> isolated;            // recomputed, not trusted from input
  bool lemma_consistent = false;
  bool weakly_reversible = false;       // of the core network
  bool theorem_ok = false;
  bool certified = false;
  std::string conclusion;  // steady-state statement the verdict supports
};

Certificate certify(const MassActionSystem& original, const Realization& real,
                    TheoremKind theorem, int npoints = 100,
                    std::uint64_t seed = 0x5eed, int threads = 1);

}  // namespace crn
