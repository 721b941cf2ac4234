#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "threshold/cotree.hpp"
#include "threshold/errors.hpp"
#include "threshold/recurrences.hpp"
#include "threshold/scalar.hpp"

namespace threshold {

/// How each a_i is picked above its strict lower bound.
class ChoicePolicy {
 public:
  /// Smallest admissible integer at every level (1 + floor(bound)).
  static ChoicePolicy initial() { return ChoicePolicy{}; }

  /// Fixed parts, given in cotree order a_1, ..., a_r.
  static ChoicePolicy fixed(std::vector<Part> parts) {
    ChoicePolicy p;
    p.parts_ = std::move(parts);
    return p;
  }

  bool is_initial() const noexcept { return !parts_.has_value(); }
  const std::optional<std::vector<Part>>& parts() const noexcept { return parts_; }

  Part choose(int depth, const Scalar& bound) const {
    if (!parts_) return std::max<Part>(floor_plus_one(bound), 1);
    const Part a = (*parts_)[static_cast<std::size_t>(depth - 1)];
    if (a < 1 || !(Scalar(a) > bound)) {
      throw PolicyError("a_" + std::to_string(depth) + " = " + std::to_string(a) + " does not exceed its bound " +
                        bound.to_string() + " (" + std::to_string(bound.to_double()) + ")");
    }
    return a;
  }

 private:
  std::optional<std::vector<Part>> parts_;
};

struct GenLevel {
  int depth = 0;
  Scalar bound;     // a_i must strictly exceed this
  Part chosen = 0;
  Scalar remaining;  // s_i
  std::optional<Scalar> permanent;  // p_i, absent at depth r
};

/// Levels in generation order, depth r first.
using GenTrace = std::vector<GenLevel>;

struct Generated {
  Cotree cotree;
  GenTrace trace;
};

namespace detail {

inline Scalar checked_div(const Scalar& num, const Scalar& den, const char* what) {
  if (den.sign() == 0) throw PoleError(std::string("zero denominator in ") + what);
  return num / den;
}

inline void check_policy_size(const ChoicePolicy& policy, int r) {
  if (policy.parts() && static_cast<int>(policy.parts()->size()) != r) {
    throw PolicyError("explicit policy has " + std::to_string(policy.parts()->size()) + " parts, expected r = " +
                      std::to_string(r));
  }
}

inline Generated assemble(int r, GenTrace trace) {
  std::vector<Part> parts(static_cast<std::size_t>(r));
  for (const auto& level : trace) parts[static_cast<std::size_t>(level.depth - 1)] = level.chosen;
  return {Cotree(std::move(parts)), std::move(trace)};
}

}  // namespace detail

/// Builds a threshold graph with no eigenvalue in (0, N].
inline Generated generate_right_free(const Scalar& n_bound, int r, const ChoicePolicy& policy = ChoicePolicy::initial()) {
  if (n_bound.sign() <= 0) throw PreconditionError("right generator needs N > 0, got " + n_bound.to_string());
  if (r < 1) throw PreconditionError("depth r must be >= 1");
  detail::check_policy_size(policy, r);

  const Scalar one(1);
  const Scalar n_plus_one = n_bound + one;
  GenTrace trace;
  trace.reserve(static_cast<std::size_t>(r));

  Scalar s;
  if (r % 2 == 1) {
    const Scalar bound = n_plus_one;
    const Part a = policy.choose(r, bound);
    s = one - n_plus_one / Scalar(a);
    trace.push_back({r, bound, a, s, std::nullopt});
  } else {
    const Scalar bound(1);
    const Part a = policy.choose(r, bound);
    s = -n_bound / Scalar(a);
    trace.push_back({r, bound, a, s, std::nullopt});
  }

  for (int i = r - 1; i >= 1; --i) {
    if (i % 2 == 1) {
      const Scalar bound = detail::checked_div(n_plus_one, one - detail::checked_div(one, s, "join bound"), "join bound");
      const Part a = policy.choose(i, bound);
      const Scalar beta = one - n_plus_one / Scalar(a);
      Scalar p = s + beta - Scalar(2);
      s = join_recurrence(s, beta);
      trace.push_back({i, bound, a, s, std::move(p)});
    } else {
      const Scalar bound = detail::checked_div(n_bound, s, "union bound");
      const Part a = policy.choose(i, bound);
      const Scalar beta = -n_bound / Scalar(a);
      Scalar p = s + beta;
      s = union_recurrence(s, beta);
      trace.push_back({i, bound, a, s, std::move(p)});
    }
  }
  return detail::assemble(r, std::move(trace));
}

/// Builds a threshold graph with no eigenvalue in [M, -1).
inline Generated generate_left_free(const Scalar& m_bound, int r, const ChoicePolicy& policy = ChoicePolicy::initial()) {
  if (!(m_bound < Scalar(-1))) throw PreconditionError("left generator needs M < -1, got " + m_bound.to_string());
  if (r < 1) throw PreconditionError("depth r must be >= 1");
  detail::check_policy_size(policy, r);

  const Scalar one(1);
  const Scalar m_plus_one = m_bound + one;
  GenTrace trace;
  trace.reserve(static_cast<std::size_t>(r));

  Scalar s;
  if (r % 2 == 1) {
    const Scalar bound(1);
    const Part a = policy.choose(r, bound);
    s = one - m_plus_one / Scalar(a);
    trace.push_back({r, bound, a, s, std::nullopt});
  } else {
    const Scalar bound = -m_bound;
    const Part a = policy.choose(r, bound);
    s = -m_bound / Scalar(a);
    trace.push_back({r, bound, a, s, std::nullopt});
  }

  for (int i = r - 1; i >= 1; --i) {
    if (i % 2 == 1) {
      const Scalar bound = detail::checked_div(-m_plus_one, one - s, "join bound");
      const Part a = policy.choose(i, bound);
      const Scalar beta = one - m_plus_one / Scalar(a);
      Scalar p = s + beta - Scalar(2);
      s = join_recurrence(s, beta);
      trace.push_back({i, bound, a, s, std::move(p)});
    } else {
      const Scalar bound = -m_bound + detail::checked_div(m_bound, s, "union bound");
      const Part a = policy.choose(i, bound);
      const Scalar beta = -m_bound / Scalar(a);
      Scalar p = s + beta;
      s = union_recurrence(s, beta);
      trace.push_back({i, bound, a, s, std::move(p)});
    }
  }
  return detail::assemble(r, std::move(trace));
}

}  // namespace threshold
