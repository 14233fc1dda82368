#pragma once

#include <string>

#include "json.hpp"

#include "crn/graph.hpp"
#include "crn/realization.hpp"
#include "crn/search.hpp"

namespace crn {

// Reports keep their fields in insertion order so fixed-seed runs are
// byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

// Every rational in a report carries both faces: the exact value and a
// 10-significant-digit decimal for humans.
Json rational_json(const Rat& r);

const char* to_string(ConjugacyMode mode);  // "dynequiv" / "conjugate"
const char* to_string(TheoremKind theorem);  // "dot" / "boros"

// Structural breakdown of one deficiency report: counts, the class
// partition by complex index, and the theorem checklists.
Json report_json(const DeficiencyReport& rep);

// The full analyze payload for a system: species, complexes, reactions,
// connectivity partitions, dimensions, deficiencies, verdicts.
Json analysis_json(const MassActionSystem& sys);

// The decoded realization: conjugacy constants, the surviving reactions
// with their rates, and which complexes ended up isolated.
Json realization_json(const Realization& real);

// The certificate, as produced by certify(): both conjugacy routes, the
// full and core structural reports, and the final verdict.
Json certificate_json(const Certificate& cert, const Network& net,
                      int sample_points);

// Everything a find run reports: outcome status, solver statistics, and
// (when found) the realization and its certificate. `config` is echoed
// verbatim so the run can be reproduced from its own output.
Json search_json(const SearchOutcome& out, const MassActionSystem& target,
                 const Json& config);

}  // namespace crn
