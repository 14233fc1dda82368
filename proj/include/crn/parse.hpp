#pragma once

#include <stdexcept>
#include <string>

#include "crn/network.hpp"
#include "crn/polynomial.hpp"

namespace crn {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

// Reaction-network file format, one reaction per line:
//
//   # comment (also allowed after a reaction)
//   @species X1 X2          optional; fixes species order, otherwise
//                           first appearance decides
//   2 X1 -> X1 + X2 ; k=3/2
//   X1 + X2 <-> X3 ; k=1,0.25
//   0 -> X1                 rate defaults to 1
//
// Complexes are '+'-joined terms "<coeff> <name>" with the coefficient
// omitted when 1; "0" is the empty complex. "<->" expands into the two
// directions with the comma-separated pair of rates.
MassActionSystem parse_network(const std::string& text);

std::string write_network(const MassActionSystem& sys);

// ODE file format, one equation per line:
//
//   dX1/dt = 2*X2^3 - X1^2 - X1*X2*X3
//
// Right-hand sides are sums of monomials: '*'-joined factors, each a
// rational constant or species^exponent. Species seen only on the right
// get an implicit dX/dt = 0.
PolynomialSystem parse_ode(const std::string& text);

// Reorders the species axis to `names` (a permutation of the existing
// species). Complex coordinates are permuted along.
MassActionSystem with_species_order(const MassActionSystem& sys,
                                    const std::vector<std::string>& names);

}  // namespace crn
