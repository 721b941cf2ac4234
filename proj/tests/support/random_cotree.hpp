#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "threshold/cotree.hpp"
#include "threshold/scalar.hpp"

namespace threshold::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Depth in [min_r, max_r], parts in [1, max_a] with the last part forced into [2, max_a].
inline Cotree random_cotree(Rng& rng, int max_r, Part max_a, int min_r = 1) {
  const int r = static_cast<int>(uniform_int(rng, min_r, max_r));
  std::vector<Part> parts(static_cast<std::size_t>(r));
  for (int i = 0; i + 1 < r; ++i) parts[static_cast<std::size_t>(i)] = uniform_int(rng, 1, max_a);
  parts.back() = uniform_int(rng, 2, std::max<Part>(2, max_a));
  return Cotree(std::move(parts));
}

/// Random cotree with at most max_n vertices.
inline Cotree random_cotree_bounded(Rng& rng, int max_r, Part max_a, std::int64_t max_n) {
  for (;;) {
    Cotree c = random_cotree(rng, max_r, max_a);
    if (c.vertex_count() <= max_n) return c;
  }
}

/// p/q with |p/q| <= bound and q in [1, max_den].
inline Scalar random_rational(Rng& rng, std::int64_t bound, std::int64_t max_den = 97) {
  const std::int64_t q = uniform_int(rng, 1, max_den);
  const std::int64_t p = uniform_int(rng, -bound * q, bound * q);
  return Scalar(p, q);
}

/// Rational in the open interval (lo, hi) on a grid of 1/den.
inline Scalar random_between(Rng& rng, const Scalar& lo, const Scalar& hi, std::int64_t den = 1000) {
  const Scalar width = hi - lo;
  const std::int64_t k = uniform_int(rng, 1, den - 1);
  return lo + width * Scalar(k, den);
}

/// Adds 0..max_extra leaves to every node.
inline Cotree random_extension(Rng& rng, const Cotree& base, Part max_extra) {
  std::vector<Part> parts(base.parts().begin(), base.parts().end());
  for (auto& a : parts) a += uniform_int(rng, 0, max_extra);
  return Cotree(std::move(parts));
}

}  // namespace threshold::testing
