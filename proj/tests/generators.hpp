#pragma once

// Seeded random generators shared by the property suites.

#include "rilab/spaces.hpp"

#include <random>

namespace rilab::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Rational nonzero_small(Rng& rng, int bound) {
  std::int64_t v = uniform(rng, 1, bound);
  return Rational(uniform(rng, 0, 1) == 0 ? v : -v);
}

inline Rational small_rational(Rng& rng, int num_bound, int den_bound) {
  return Rational(Integer(uniform(rng, -num_bound, num_bound)), Integer(uniform(rng, 1, den_bound)));
}

inline DyadicNode random_node(Rng& rng, std::uint32_t max_level) {
  auto level = static_cast<std::uint32_t>(uniform(rng, 0, max_level));
  auto pos = static_cast<std::uint64_t>(uniform(rng, 1, std::int64_t{1} << level));
  return {level, pos};
}

/// Tree vector with up to max_support entries in {-bound..bound} \ {0}.
inline SparseVector random_tree_vector(Rng& rng, std::size_t max_support, std::uint32_t max_level, int bound = 3) {
  SparseVector v(IndexUniverse::dyadic(max_level));
  auto target = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_support)));
  while (v.support_size() < target) v.set(random_node(rng, max_level), nonzero_small(rng, bound));
  return v;
}

}  // namespace rilab::testing
