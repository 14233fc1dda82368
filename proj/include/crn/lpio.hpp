#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crn/milp.hpp"
#include "crn/model.hpp"

namespace crn {

// Writes the program in LP text format (Minimize / Subject To / Bounds /
// Binaries / Generals / End). Coefficients whose denominator divides a
// power of ten come out as exact decimals; everything else is rounded to
// 17 significant digits. Comment lines go at the top. Throws
// std::invalid_argument when the name lists do not match the program.
void write_lp(std::ostream& os, const MilpProblem& p,
              const std::vector<std::string>& var_names,
              const std::vector<std::string>& row_names,
              const std::vector<std::string>& comments = {});

// write_lp for a realization model, with the configuration echoed in the
// header comments so the file pins down how it was produced.
void write_model_lp(std::ostream& os, const MilpModel& md);

// Reads a solution as `name value` lines; '#' and '\' start comments.
// Values may be integers, fractions, or floating-point text and are kept
// exact. Unknown or repeated names raise ParseError; variables that never
// appear are zero.
std::vector<Rat> read_solution(std::istream& is,
                               const std::vector<std::string>& var_names);

struct RepairedSolution {
  std::vector<Rat> x;
  Rat objective;
};

// Turns an approximate (typically floating-point) solution into an exact
// one: integer variables are snapped to the nearest integer (within 1e-6,
// else std::runtime_error), every row is checked to 1e-9 naming the first
// violated constraint, and the continuous block is re-solved exactly with
// the integers fixed.
RepairedSolution repair_solution(const MilpProblem& p,
                                 const std::vector<Rat>& approx,
                                 const std::vector<std::string>& row_names = {});

}  // namespace crn
