#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "threshold/cotree.hpp"
#include "threshold/errors.hpp"
#include "threshold/scalar.hpp"

namespace threshold {

enum class Subcase { join_generic, join_unit, join_cancel, union_generic, union_zero, union_cancel };

/// "1a", "1b", "1c" for joins and "2a", "2b", "2c" for unions.
constexpr std::string_view subcase_tag(Subcase s) noexcept {
  switch (s) {
    case Subcase::join_generic: return "1a";
    case Subcase::join_unit: return "1b";
    case Subcase::join_cancel: return "1c";
    case Subcase::union_generic: return "2a";
    case Subcase::union_zero: return "2b";
    case Subcase::union_cancel: return "2c";
  }
  return "?";
}

/// One sibling reduction. d_k is always fixed for good; d_l is carried on unless both_removed.
struct PairResult {
  Subcase subcase;
  Scalar d_k;
  Scalar d_l;
  bool both_removed = false;
};

inline PairResult reduce_pair(NodeKind kind, const Scalar& alpha, const Scalar& beta) {
  if (kind == NodeKind::join) {
    const Scalar sum = alpha + beta;
    if (sum != Scalar(2)) {
      Scalar dk = sum - Scalar(2);
      Scalar dl = (alpha * beta - Scalar(1)) / dk;
      return {Subcase::join_generic, std::move(dk), std::move(dl), false};
    }
    if (beta == Scalar(1)) return {Subcase::join_unit, Scalar(0), Scalar(1), false};
    const Scalar t = Scalar(1) - beta;
    return {Subcase::join_cancel, -(t * t), Scalar(1), true};
  }
  const Scalar sum = alpha + beta;
  if (sum.sign() != 0) return {Subcase::union_generic, sum, alpha * beta / sum, false};
  if (beta.sign() == 0) return {Subcase::union_zero, Scalar(0), Scalar(0), false};
  return {Subcase::union_cancel, -beta, beta, true};
}

struct CountTriple {
  std::int64_t greater = 0;
  std::int64_t equal = 0;
  std::int64_t less = 0;

  std::int64_t total() const noexcept { return greater + equal + less; }

  void add_sign(int s, std::int64_t times = 1) noexcept {
    if (s > 0) greater += times;
    else if (s == 0) equal += times;
    else less += times;
  }

  friend bool operator==(const CountTriple&, const CountTriple&) = default;
};

struct TraceStep {
  int depth = 0;
  Subcase subcase = Subcase::join_generic;
  bool batched = false;  // produced by same-valued leaf batching rather than the carry pairing
  Scalar alpha;
  Scalar beta;
  Scalar d_k;
  Scalar d_l;
  bool both_removed = false;
};

struct DiagOutcome {
  std::vector<Scalar> diagonal;  // processing order
  CountTriple counts;
  std::vector<TraceStep> trace;  // filled only on request
};

struct SpecializedLeaves {
  std::vector<Scalar> permanent;
  std::vector<Scalar> remaining;  // remaining[i - 1] belongs to depth i
};

namespace detail {

// Reduces m leaves of value y under one node; appends permanents, returns the survivor.
inline Scalar batch_leaves(NodeKind kind, const Scalar& y, Part m, int depth, std::vector<Scalar>& permanent,
                           std::vector<TraceStep>* trace) {
  const bool closed_form = kind == NodeKind::join ? y != Scalar(1) : y.sign() != 0;
  const Scalar base = kind == NodeKind::join ? y - Scalar(1) : y;
  Scalar remaining = y;
  for (Part j = 1; j < m; ++j) {
    if (closed_form) {
      Scalar dk = Scalar(j + 1, j) * base;
      Scalar dl = kind == NodeKind::join ? (y + Scalar(j)) / Scalar(j + 1) : y / Scalar(j + 1);
      if (trace) {
        trace->push_back({depth, kind == NodeKind::join ? Subcase::join_generic : Subcase::union_generic, true,
                          remaining, y, dk, dl, false});
      }
      permanent.push_back(std::move(dk));
      remaining = std::move(dl);
    } else {
      PairResult step = reduce_pair(kind, remaining, y);
      if (trace) trace->push_back({depth, step.subcase, true, remaining, y, step.d_k, step.d_l, step.both_removed});
      permanent.push_back(std::move(step.d_k));
      remaining = std::move(step.d_l);
    }
  }
  return remaining;
}

}  // namespace detail

/// Batches each node's own leaves (all start at x). Never throws for a valid cotree: when the
/// closed batch formula degenerates (x = 1 under a join, x = 0 under a union) it falls back to pairwise steps.
inline SpecializedLeaves specialize_leaves(const Cotree& c, const Scalar& x) {
  SpecializedLeaves out;
  out.remaining.resize(static_cast<std::size_t>(c.depth()));
  for (int depth = c.depth(); depth >= 1; --depth) {
    out.remaining[static_cast<std::size_t>(depth - 1)] =
        detail::batch_leaves(node_kind(depth), x, c.part(depth), depth, out.permanent, nullptr);
  }
  return out;
}

/// Diagonal congruent to A + xI. Depths are processed from r up to the root; at each depth the
/// node's own leaves are batched first, then the value carried from below (alpha) is paired with
/// the node's survivor (beta).
inline DiagOutcome diagonalize_full(const Cotree& c, const Scalar& x, bool with_trace = false) {
  DiagOutcome out;
  out.diagonal.reserve(static_cast<std::size_t>(c.vertex_count()));
  std::vector<TraceStep>* trace = with_trace ? &out.trace : nullptr;

  std::optional<Scalar> carry;
  for (int depth = c.depth(); depth >= 1; --depth) {
    const NodeKind kind = node_kind(depth);
    Scalar own = detail::batch_leaves(kind, x, c.part(depth), depth, out.diagonal, trace);
    if (!carry) {
      carry = std::move(own);
      continue;
    }
    PairResult step = reduce_pair(kind, *carry, own);
    if (trace) trace->push_back({depth, step.subcase, false, *carry, own, step.d_k, step.d_l, step.both_removed});
    out.diagonal.push_back(std::move(step.d_k));
    if (step.both_removed) {
      out.diagonal.push_back(std::move(step.d_l));
      carry.reset();
    } else {
      carry = std::move(step.d_l);
    }
  }
  if (carry) out.diagonal.push_back(std::move(*carry));

  for (const auto& d : out.diagonal) out.counts.add_sign(d.sign());
  return out;
}

/// Eigenvalues greater than, equal to and less than a.
inline CountTriple count_triple(const Cotree& c, const Scalar& a) { return diagonalize_full(c, -a).counts; }

/// Incremental evaluation of the r spine values. Permanents from leaf batching are counted by
/// sign without being formed: under a join they all have the sign of x - 1, under a union that of x.
/// Levels are pushed from depth r towards the root and may be popped again, so lattice walks
/// share prefixes.
class SpineEvaluator {
 public:
  SpineEvaluator(const Scalar& x, int depth)
      : x_(x), depth_(depth), sign_x_(x.sign()), sign_x_minus_one_((x - Scalar(1)).sign()) {
    if (depth < 1) throw PreconditionError("spine depth must be >= 1");
    levels_.reserve(static_cast<std::size_t>(depth));
  }

  /// Depth that the next push will fill.
  int next_depth() const noexcept { return depth_ - static_cast<int>(levels_.size()); }
  bool complete() const noexcept { return next_depth() == 0; }

  void push(Part a) {
    const int depth = next_depth();
    if (depth < 1) throw PreconditionError("spine already complete");
    const NodeKind kind = node_kind(depth);

    Level level = levels_.empty() ? Level{} : levels_.back();
    level.counts.add_sign(kind == NodeKind::join ? sign_x_minus_one_ : sign_x_, a - 1);
    Scalar own = kind == NodeKind::join ? (x_ + Scalar(a - 1)) / Scalar(a) : x_ / Scalar(a);
    if (!level.carry) {
      level.carry = std::move(own);
    } else {
      PairResult step = reduce_pair(kind, *level.carry, own);
      level.counts.add_sign(step.d_k.sign());
      if (step.both_removed) {
        level.counts.add_sign(step.d_l.sign());
        level.carry.reset();
      } else {
        level.carry = std::move(step.d_l);
      }
    }
    levels_.push_back(std::move(level));
  }

  void pop() { levels_.pop_back(); }

  /// Counts over everything pushed so far, including the value still being carried.
  CountTriple counts() const {
    if (levels_.empty()) return {};
    CountTriple out = levels_.back().counts;
    if (levels_.back().carry) out.add_sign(levels_.back().carry->sign());
    return out;
  }

 private:
  struct Level {
    std::optional<Scalar> carry;
    CountTriple counts;
  };

  Scalar x_;
  int depth_;
  int sign_x_;
  int sign_x_minus_one_;
  std::vector<Level> levels_;
};

inline CountTriple spine_count_triple(const Cotree& c, const Scalar& a) {
  SpineEvaluator ev(-a, c.depth());
  for (int depth = c.depth(); depth >= 1; --depth) ev.push(c.part(depth));
  return ev.counts();
}

/// Inertia (eigenvalues > 0, = 0, < 0) read off the cotree.
inline CountTriple inertia_closed_form(const Cotree& c) {
  CountTriple out;
  std::int64_t odd_sum = 0;
  for (int i = 1; i <= c.depth(); ++i) {
    if (i % 2 == 1) odd_sum += c.part(i);
    else out.equal += c.part(i) - 1;
  }
  const bool odd = c.depth() % 2 == 1;
  out.greater = c.union_count() + (odd ? 1 : 0);
  out.less = odd ? odd_sum - 1 : odd_sum;
  return out;
}

inline std::int64_t mult_minus_one(const Cotree& c) {
  std::int64_t m = 0;
  for (int i = 1; i <= c.depth(); i += 2) m += c.part(i) - 1;
  return m;
}

/// Number of eigenvalues >= -1: mult(-1) + mult(0) + #positive.
inline std::int64_t left_closed_form(const Cotree& c) {
  return c.vertex_count() - c.depth() + c.union_count() + (c.depth() % 2 == 1 ? 1 : 0);
}

namespace detail {

inline int bisection_cap(std::int64_t n, const Scalar& tol) {
  const Scalar ratio = Scalar(n) / tol;
  int k = 0;
  Scalar power(1);
  while (power < ratio) {
    power *= Scalar(2);
    ++k;
  }
  return k + 2;
}

}  // namespace detail

/// Smallest positive eigenvalue to within tol, by bisection on (0, n] with dyadic midpoints.
inline Scalar bisect_theta_plus(const Cotree& c, const Scalar& tol) {
  if (tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
  const std::int64_t target = inertia_closed_form(c).greater;
  if (target < 1) throw PreconditionError(c.to_string() + " has no positive eigenvalue");

  Scalar lo(0);
  Scalar hi(c.vertex_count());
  const Scalar width = tol * Scalar(2);
  const int cap = detail::bisection_cap(c.vertex_count(), tol);
  for (int it = 0; it < cap && hi - lo > width; ++it) {
    Scalar mid = midpoint(lo, hi);
    const CountTriple t = count_triple(c, mid);
    if (t.equal > 0 && t.greater + t.equal == target) return mid;
    if (t.greater == target) lo = std::move(mid);
    else hi = std::move(mid);
  }
  return midpoint(lo, hi);
}

/// Largest eigenvalue below -1 to within tol, by bisection on [-n, -1).
inline Scalar bisect_theta_minus(const Cotree& c, const Scalar& tol) {
  if (tol.sign() <= 0) throw PreconditionError("tolerance must be positive");
  const std::int64_t target = count_triple(c, Scalar(-1)).less;
  if (target == 0) throw PreconditionError(c.to_string() + " has no eigenvalue below -1");

  Scalar lo(-c.vertex_count());
  Scalar hi(-1);
  const Scalar width = tol * Scalar(2);
  const int cap = detail::bisection_cap(c.vertex_count(), tol);
  for (int it = 0; it < cap && hi - lo > width; ++it) {
    Scalar mid = midpoint(lo, hi);
    const CountTriple t = count_triple(c, mid);
    if (t.equal > 0 && t.less + t.equal == target) return mid;
    if (t.less == target) hi = std::move(mid);
    else lo = std::move(mid);
  }
  return midpoint(lo, hi);
}

}  // namespace threshold
