#include "crn/rng.hpp"

#include <stdexcept>

namespace crn {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  // Rejection keeps the result exactly uniform.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
  std::uint64_t u;
  do {
    u = gen_();
  } while (u > limit);
  return u % n;
}

long Rng::range(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("Rng::range: lo > hi");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  return static_cast<long>(below(span) + static_cast<std::uint64_t>(lo));
}

Rat Rng::rat_with_denominator(const Int& num_lo, const Int& num_hi,
                              const Int& den) {
  if (num_lo > num_hi || den <= 0)
    throw std::invalid_argument("Rng::rat_with_denominator: bad bounds");
  Int span = num_hi - num_lo + 1;
  if (!span.fits_slong_p())
    throw std::invalid_argument("Rng::rat_with_denominator: span too wide");
  Int num = num_lo + Int(static_cast<long>(below(span.get_ui())));
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace crn
