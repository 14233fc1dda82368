#pragma once

#include <string>
#include <vector>

#include "crn/matrix.hpp"

namespace crn {

// A complex: nonnegative rational combination of species, stored dense
// over the owning network's species list. The zero vector is the empty
// complex.
struct Complex {
  std::vector<Rat> y;

  bool operator==(const Complex& o) const { return y == o.y; }
  bool is_zero() const;
  bool is_integer() const;
};

// Directed reaction between complex indices. source == target encodes a
// self-reaction, which contributes nothing to the dynamics but keeps an
// otherwise unused complex attached to the network.
struct Reaction {
  int source = -1;
  int target = -1;

  bool operator==(const Reaction& o) const {
    return source == o.source && target == o.target;
  }
};

struct Network {
  std::vector<std::string> species;
  std::vector<Complex> complexes;
  std::vector<Reaction> reactions;

  int species_count() const { return int(species.size()); }
  int complex_count() const { return int(complexes.size()); }
  int reaction_count() const { return int(reactions.size()); }

  // Throws std::invalid_argument when malformed: duplicate species names,
  // duplicate or wrongly sized complexes, negative stoichiometry,
  // endpoint indices out of range, duplicate reactions, or a complex that
  // takes part in no reaction. With require_species_used set, a species
  // appearing in no complex is also an error; derived networks (e.g.
  // after stripping isolated complexes) may relax that.
  void validate(bool require_species_used = true) const;

  std::string complex_name(int ci) const;  // "2 X1 + X2", zero complex -> "0"
  int find_complex(const Complex& c) const;  // -1 when absent
  bool has_integer_stoichiometry() const;
};

// Network plus one positive mass-action rate constant per reaction.
struct MassActionSystem {
  Network net;
  std::vector<Rat> rates;

  void validate(bool require_species_used = true) const;
};

// Y: m x n matrix whose columns are the complexes.
// A: n x n kinetics matrix; off-diagonal (j,i) carries the rate of
//    C_i -> C_j, diagonals make every column sum to zero. A self-reaction
//    cancels out of its own diagonal entirely.
// M = Y * A, so that dx/dt = M * Psi(x).
struct SystemMatrices {
  Mat Y;
  Mat A;
  Mat M;
};

SystemMatrices build_matrices(const MassActionSystem& sys);

// Psi(x): monomial vector with entries x^{y_i} per complex. Requires
// strictly positive x and integer stoichiometry (rational exponents of
// rational points leave the rationals).
std::vector<Rat> monomial_vector(const Network& net, const std::vector<Rat>& x);

// dx/dt evaluated reaction by reaction:
//   sum_r k_r (y_target - y_source) x^{y_source}.
std::vector<Rat> mass_action_rhs(const MassActionSystem& sys,
                                 const std::vector<Rat>& x);

// The same vector field through Y * A * Psi(x). Deliberately shares no
// arithmetic with mass_action_rhs; the tests pin the two routes equal.
std::vector<Rat> mass_action_rhs_matrix(const MassActionSystem& sys,
                                        const std::vector<Rat>& x);

}  // namespace crn
