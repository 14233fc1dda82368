#include "crn/search.hpp"

#include "crn/graph.hpp"
#include "crn/network.hpp"

namespace crn {

MilpModel build_search_model(const MassActionSystem& sys,
                             const ModelConfig& cfg) {
  sys.validate();
  SystemMatrices mats = build_matrices(sys);
  return build_model(mats.Y, mats.M, kinetic_dim(sys), cfg);
}

SearchOutcome search_realization(const MassActionSystem& sys,
                                 const SearchOptions& opt) {
  SearchOutcome out;
  out.check_points = opt.check_points;
  ModelConfig cfg = opt.model;
  const int tries = opt.max_attempts < 1 ? 1 : opt.max_attempts;

  for (int attempt = 0; attempt < tries; ++attempt) {
    cfg.seed = opt.model.seed + std::uint64_t(attempt);
    MilpModel md = build_search_model(sys, cfg);

    out.attempts = attempt + 1;
    out.seed_used = cfg.seed;
    out.vars = md.var_count();
    out.rows = md.row_count();
    out.nclasses = md.nclasses;
    out.binaries = 0;
    for (bool flag : md.prob.integral) out.binaries += flag;

    out.solve = solve_milp(md.prob, opt.limits);

    if (out.solve.status == MilpStatus::Infeasible) {
      out.status = SearchStatus::Infeasible;
      return out;
    }
    if (!out.solve.has_solution) {
      out.status = SearchStatus::Limit;
      return out;
    }

    out.realization = decode_solution(md, sys, out.solve.x);
    out.certificate = certify(sys, out.realization, cfg.theorem,
                              opt.check_points, cfg.seed ^ 0x5eed,
                              opt.limits.threads);
    if (out.certificate.certified) {
      out.status = SearchStatus::Certified;
      out.found = true;
      return out;
    }
    // The solver says feasible, the checker says no: a coefficient draw
    // hit a measure-zero degeneracy (or exposed a bug). Re-roll and redo.
  }
  out.status = SearchStatus::CertifyFailed;
  return out;
}

}  // namespace crn
