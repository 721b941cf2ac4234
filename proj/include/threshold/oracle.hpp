#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "threshold/cotree.hpp"
#include "threshold/diagonalize.hpp"
#include "threshold/errors.hpp"

namespace threshold {

template <std::floating_point T>
struct JacobiResult {
  std::vector<T> values;  // unsorted diagonal after convergence
  int sweeps = 0;
  T off_norm = 0;     // Frobenius norm of the remaining off-diagonal part
  T frobenius = 0;    // of the input
  bool converged = false;
};

/// Cyclic Jacobi with a threshold sweep on a dense row-major symmetric matrix. Stops once the
/// off-diagonal Frobenius norm is below tol.
template <std::floating_point T>
JacobiResult<T> jacobi_eigenvalues(std::vector<T> a, std::size_t n, T tol = T(1e-12), int max_sweeps = 100) {
  JacobiResult<T> out;
  auto at = [&](std::size_t i, std::size_t j) -> T& { return a[i * n + j]; };

  auto off_norm = [&] {
    T s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += at(i, j) * at(i, j);
    return std::sqrt(2 * s);
  };

  T frob = 0;
  for (const T v : a) frob += v * v;
  out.frobenius = std::sqrt(frob);

  for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
    const T off = off_norm();
    if (off < tol) break;
    // Early sweeps skip rotations whose pivot is small relative to the average off-diagonal entry.
    const T threshold = out.sweeps < 3 ? T(0.2) * off / static_cast<T>(n * n) : T(0);

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = at(p, q);
        if (apq == 0 || std::abs(apq) <= threshold) continue;
        const T app = at(p, p);
        const T aqq = at(q, q);
        const T theta = (aqq - app) / (2 * apq);
        T t = 1 / (std::abs(theta) + std::sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const T c = 1 / std::sqrt(t * t + 1);
        const T s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const T akp = at(k, p);
          const T akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = at(p, k);
          const T aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0;
        at(q, p) = 0;
      }
    }
  }
  out.off_norm = off_norm();
  out.converged = out.off_norm < tol;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = at(i, i);
  return out;
}

/// Eigenvalues in ascending order, each with an error bound.
struct Spectrum {
  std::vector<long double> values;
  std::vector<long double> error_bounds;

  std::size_t size() const noexcept { return values.size(); }

  /// Eigenvalues within eq_tol of a count as equal.
  CountTriple counts_relative(long double a, long double eq_tol) const {
    CountTriple out;
    for (const long double v : values) {
      if (std::abs(v - a) <= eq_tol) ++out.equal;
      else if (v > a) ++out.greater;
      else ++out.less;
    }
    return out;
  }

  /// Distance from a to the nearest eigenvalue.
  long double distance_to(long double a) const {
    long double best = std::numeric_limits<long double>::infinity();
    for (const long double v : values) best = std::min(best, std::abs(v - a));
    return best;
  }

  long double max_error_bound() const {
    long double m = 0;
    for (const long double e : error_bounds) m = std::max(m, e);
    return m;
  }
};

inline constexpr std::size_t kDefaultOracleCap = 500;

/// Dense eigensolver on the adjacency matrix; independent of the congruence engine.
inline Spectrum oracle_spectrum(const Cotree& c, std::size_t cap = kDefaultOracleCap) {
  const auto n = static_cast<std::size_t>(c.vertex_count());
  if (n > cap) {
    throw CapacityError("oracle cap exceeded: n = " + std::to_string(n) + " > " + std::to_string(cap));
  }
  const AdjacencyMatrix adj = build_adjacency(cotree_to_binary(c));
  std::vector<long double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dense[i * n + j] = adj(i, j) ? 1.0L : 0.0L;

  const JacobiResult<long double> r = jacobi_eigenvalues<long double>(std::move(dense), n, 1e-12L);
  if (!r.converged) throw Error("Jacobi did not converge for " + c.to_string());

  // The diagonal is an exact eigen-decomposition of a matrix within off_norm (2-norm <= Frobenius)
  // of the rotated input; rotations add a few ulps of the matrix norm per sweep.
  const long double eps = std::numeric_limits<long double>::epsilon();
  const long double bound =
      r.off_norm + 10.0L * static_cast<long double>(r.sweeps + 1) * static_cast<long double>(n) * eps * r.frobenius;

  Spectrum s;
  s.values = r.values;
  std::sort(s.values.begin(), s.values.end());
  s.error_bounds.assign(n, bound);
  return s;
}

}  // namespace threshold
