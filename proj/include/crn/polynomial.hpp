#pragma once

#include <string>
#include <vector>

#include "crn/network.hpp"

namespace crn {

// One monomial c * x^a with integer exponents.
struct PolyTerm {
  Rat coeff;
  std::vector<long> exp;
};

// Right-hand side of dx/dt = p(x), one polynomial per variable.
struct PolynomialSystem {
  std::vector<std::string> vars;
  std::vector<std::vector<PolyTerm>> rhs;  // rhs[i] belongs to vars[i]

  // Merges terms with equal exponent vectors, drops zero coefficients,
  // sorts terms lexicographically by exponent vector. Two systems are
  // interchangeable iff their normalized forms are equal.
  void normalize();

  bool operator==(const PolynomialSystem& o) const;
  std::string term_name(const PolyTerm& t) const;  // "-3*X2^3"
};

// Canonical mass-action realization: every term c * x^a of dx_i/dt
// becomes the reaction a -> a + sign(c) e_i with rate |c|. A negative
// term needs a_i >= 1 (the species must be consumed from a complex that
// contains it); otherwise std::invalid_argument names the offending term.
// Complexes are indexed in order of first appearance, so the result is
// deterministic in the input order.
MassActionSystem canonical_realization(const PolynomialSystem& p);

// Exact expansion of a system's vector field back into polynomials.
// Requires integer stoichiometry. The result is normalized.
PolynomialSystem polynomial_of(const MassActionSystem& sys);

}  // namespace crn
