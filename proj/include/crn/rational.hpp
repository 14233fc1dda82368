#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace crn {

// All arithmetic in this library is exact. Rat is GMP's canonicalized
// rational; Int its arbitrary-precision integer.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "3", "-7/2", "0.25", "1e-3", "2.5e2" into an exact rational.
// Decimal strings convert exactly (0.571429 -> 571429/1000000), they are
// never routed through floating point. Throws std::invalid_argument on
// malformed input.
Rat parse_rational(const std::string& text);

// Like parse_rational but returns nullopt instead of throwing.
std::optional<Rat> try_parse_rational(const std::string& text);

// Shortest exact representation: integer if the denominator is 1,
// otherwise "p/q".
std::string rational_string(const Rat& r);

// Decimal rendering with `digits` significant digits, round half away
// from zero. Exact values that terminate earlier are not padded.
std::string decimal_string(const Rat& r, int digits = 10);

Int floor_int(const Rat& r);
Int ceil_int(const Rat& r);
bool is_integer(const Rat& r);

// r^e for integer e; e < 0 requires r != 0.
Rat pow_rat(const Rat& r, long e);

// Largest t with t*t <= n (n >= 0).
Int isqrt_floor(const Int& n);

}  // namespace crn
