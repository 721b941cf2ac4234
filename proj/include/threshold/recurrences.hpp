#pragma once

#include "threshold/errors.hpp"
#include "threshold/scalar.hpp"

namespace threshold {

/// Remaining value after a generic join step: (xy - 1) / (x + y - 2).
inline Scalar join_recurrence(const Scalar& x, const Scalar& y) {
  const Scalar denom = x + y - Scalar(2);
  if (denom.sign() == 0)
    throw PoleError("join recurrence pole: x + y = 2 (x = " + x.to_string() + ", y = " + y.to_string() + ")");
  return (x * y - Scalar(1)) / denom;
}

/// Remaining value after a generic union step: xy / (x + y).
inline Scalar union_recurrence(const Scalar& x, const Scalar& y) {
  const Scalar denom = x + y;
  if (denom.sign() == 0)
    throw PoleError("union recurrence pole: x + y = 0 (x = " + x.to_string() + ", y = " + y.to_string() + ")");
  return x * y / denom;
}

}  // namespace threshold
