#pragma once

#include <cstdint>
#include <random>

#include "scalar.hpp"

namespace gconv {

// mt19937_64 has a fixed output sequence on every platform; the bounded draws
// below avoid std::uniform_int_distribution so seeded runs reproduce exactly.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

inline bool coin(Rng& rng) { return rng() & 1; }

// Dyadic value lo + (hi - lo) * k / 2^e with e <= max_exp.
inline Rational uniform_dyadic(Rng& rng, const Rational& lo, const Rational& hi, unsigned max_exp) {
  const unsigned e = static_cast<unsigned>(uniform_below(rng, max_exp + 1));
  const std::uint64_t steps = std::uint64_t{1} << e;
  const std::uint64_t k = uniform_below(rng, steps + 1);
  return lo + (hi - lo) * ratio(Integer(static_cast<unsigned long>(k)), Integer(static_cast<unsigned long>(steps)));
}

}  // namespace gconv
