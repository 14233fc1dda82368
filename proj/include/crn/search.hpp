#pragma once

#include <cstdint>

#include "crn/milp.hpp"
#include "crn/model.hpp"
#include "crn/realization.hpp"

namespace crn {

// How a realization search ended.
//   Certified:     a realization came back and the independent check passed
//                  (the solve itself may have been optimal or a limit hit
//                  with an incumbent; see SearchOutcome::solve.status).
//   Infeasible:    the program is infeasible, so no realization with the
//                  requested structure exists for the sampled coefficients.
//   Limit:         a node or time cap ran out with nothing certified.
//   CertifyFailed: every attempt produced a solution the checker rejected;
//                  that means a bug or a measure-zero coefficient draw, and
//                  either way the outcome is unusable.
enum class SearchStatus { Certified, Infeasible, Limit, CertifyFailed };

struct SearchOptions {
  ModelConfig model;
  MilpLimits limits;
  // Solutions that fail certification trigger a re-sample of the span
  // coefficients and a fresh solve, up to this many solver runs total.
  int max_attempts = 3;
  // Sample points for the vector-field half of the certificate.
  int check_points = 100;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::Limit;
  bool found = false;  // realization and certificate are meaningful

  Realization realization;
  Certificate certificate;
  MilpResult solve;  // last solver run

  int attempts = 0;              // solver runs performed
  std::uint64_t seed_used = 0;   // span-coefficient seed of the last run
  int check_points = 0;          // vector-field samples per certificate

  // Model shape, for reporting.
  int vars = 0;
  int binaries = 0;
  int rows = 0;
  int nclasses = 0;
};

// Assembles the search program for a target system: builds the kinetic
// matrices and sizes the class slots by the kinetic dimension (the rank the
// dynamics actually explores, which the realization has to reproduce).
MilpModel build_search_model(const MassActionSystem& sys, const ModelConfig& cfg);

// The whole pipeline: build, solve, decode, certify. A certification
// failure re-samples the span coefficients (seed+1, seed+2, ...) and tries
// again; a proven infeasibility is returned as-is, never retried, because
// re-rolling the coefficients cannot make a sound "no" more trustworthy.
// A limit hit with an incumbent still decodes and certifies the incumbent.
SearchOutcome search_realization(const MassActionSystem& sys,
                                 const SearchOptions& opt);

}  // namespace crn
