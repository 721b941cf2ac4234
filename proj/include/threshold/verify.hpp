#pragma once

#include <iostream>
#include <string>

#include "threshold/cotree.hpp"
#include "threshold/diagonalize.hpp"
#include "threshold/errors.hpp"
#include "threshold/scalar.hpp"

namespace threshold {

/// Either (0, N] with N > 0 ("right") or [M, -1) with M < -1 ("left").
struct Interval {
  enum class Side { right, left };

  Side side = Side::right;
  Scalar bound;

  static Interval right(Scalar n) {
    if (n.sign() <= 0) throw PreconditionError("right interval needs N > 0, got " + n.to_string());
    return {Side::right, std::move(n)};
  }
  static Interval left(Scalar m) {
    if (!(m < Scalar(-1))) throw PreconditionError("left interval needs M < -1, got " + m.to_string());
    return {Side::left, std::move(m)};
  }

  std::string to_string() const {
    return side == Side::right ? "(0, " + bound.to_string() + "]" : "[" + bound.to_string() + ", -1)";
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Freeness decided from a count triple at the interval's far end.
inline bool right_free_from(const Cotree& c, const CountTriple& at_n) {
  return at_n.greater == inertia_closed_form(c).greater;
}

inline bool left_free_from(const Cotree& c, const CountTriple& at_m) {
  return at_m.greater == left_closed_form(c) && at_m.equal == 0;
}

/// No eigenvalue in (0, N].
inline bool is_right_free(const Cotree& c, const Scalar& n) {
  if (n.sign() <= 0) throw PreconditionError("is_right_free needs N > 0");
  return right_free_from(c, spine_count_triple(c, n));
}

/// No eigenvalue in [M, -1).
inline bool is_left_free(const Cotree& c, const Scalar& m) {
  if (!(m < Scalar(-1))) throw PreconditionError("is_left_free needs M < -1");
  return left_free_from(c, spine_count_triple(c, m));
}

inline bool is_free(const Cotree& c, const Interval& iv) {
  return iv.side == Interval::Side::right ? is_right_free(c, iv.bound) : is_left_free(c, iv.bound);
}

/// Freeness of an extension of a free base. A false result contradicts the interlacing argument
/// and is reported on stderr.
inline bool check_family_extension(const Cotree& base, const Cotree& ext, const Interval& iv,
                                   std::ostream& log = std::cerr) {
  if (!poset_leq(base, ext)) {
    throw PreconditionError(base.to_string() + " is not below " + ext.to_string() + " in the poset order");
  }
  if (!is_free(base, iv)) throw PreconditionError(base.to_string() + " is not free on " + iv.to_string());
  const bool free = is_free(ext, iv);
  if (!free) {
    log << "FAMILY EXTENSION FALSIFIED: " << base.to_string() << " is free on " << iv.to_string() << " but "
        << ext.to_string() << " is not\n";
  }
  return free;
}

}  // namespace threshold
