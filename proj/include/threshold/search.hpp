#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <stop_token>
#include <thread>
#include <vector>

#include "threshold/cotree.hpp"
#include "threshold/diagonalize.hpp"
#include "threshold/errors.hpp"
#include "threshold/verify.hpp"

namespace threshold {

struct SearchProgress {
  std::int64_t examined = 0;
  std::int64_t total = 0;
};

struct SearchOptions {
  int workers = 1;
  std::stop_token stop;
  std::function<void(const SearchProgress&)> progress;  // called from the calling thread
  std::chrono::milliseconds progress_interval{500};
};

struct SearchReport {
  Cotree base;
  Interval interval;
  std::uint64_t lattice_size_product = 0;  // prod a_i
  std::int64_t lattice_size = 0;           // prod_{i<r} a_i * (a_r - 1), the lattice actually walked
  std::int64_t examined = 0;
  std::vector<Cotree> counterexamples;     // free, strictly below base, ascending
  bool base_free = false;
  bool complete = false;
  double wall_seconds = 0;
  int workers = 1;
};

namespace detail {

class LatticeWalker {
 public:
  LatticeWalker(const Cotree& base, const Interval& iv, std::stop_token stop)
      : base_(base.parts().begin(), base.parts().end()),
        r_(base.depth()),
        interval_(iv),
        x_(-iv.bound),
        stop_(std::move(stop)),
        right_target_(base.union_count() + (r_ % 2 == 1 ? 1 : 0)) {}

  Part low(int depth) const noexcept { return depth == r_ ? 2 : 1; }
  Part high(int depth) const noexcept { return base_[static_cast<std::size_t>(depth - 1)]; }
  std::int64_t range(int depth) const noexcept { return high(depth) - low(depth) + 1; }
  int depth() const noexcept { return r_; }

  struct Result {
    std::int64_t examined = 0;
    std::vector<std::vector<Part>> counterexamples;
    bool stopped = false;
  };

  /// Walks every candidate whose deepest `prefix.size()` parts (depth r downwards) are fixed.
  void walk_block(const std::vector<Part>& prefix, Result& out) {
    SpineEvaluator ev(x_, r_);
    std::vector<Part> current(static_cast<std::size_t>(r_));
    std::int64_t sum = 0;
    int depth = r_;
    for (const Part a : prefix) {
      current[static_cast<std::size_t>(depth - 1)] = a;
      sum += a;
      ev.push(a);
      --depth;
    }
    if (depth == 0) {
      evaluate(ev, current, sum, out);
    } else {
      descend(depth, ev, current, sum, out);
    }
  }

 private:
  void descend(int depth, SpineEvaluator& ev, std::vector<Part>& current, std::int64_t sum, Result& out) {
    for (Part a = low(depth); a <= high(depth); ++a) {
      if (out.stopped) return;
      current[static_cast<std::size_t>(depth - 1)] = a;
      ev.push(a);
      if (depth == 1) evaluate(ev, current, sum + a, out);
      else descend(depth - 1, ev, current, sum + a, out);
      ev.pop();
    }
  }

  void evaluate(const SpineEvaluator& ev, const std::vector<Part>& current, std::int64_t n, Result& out) {
    ++out.examined;
    if ((out.examined & 0xfff) == 0 && stop_.stop_requested()) out.stopped = true;
    const CountTriple t = ev.counts();
    bool free;
    if (interval_.side == Interval::Side::right) {
      free = t.greater == right_target_;
    } else {
      free = t.equal == 0 && t.greater == n - r_ + right_target_;
    }
    if (free && current != base_) out.counterexamples.push_back(current);
  }

  std::vector<Part> base_;
  int r_;
  Interval interval_;
  Scalar x_;
  std::stop_token stop_;
  std::int64_t right_target_;
};

}  // namespace detail

/// Exhaustive walk over every cotree of the same depth below base, reporting the free ones.
inline SearchReport minimality_search(const Cotree& base, const Interval& iv, SearchOptions options = {}) {
  if (options.workers < 1) throw PreconditionError("workers must be >= 1");
  const auto started = std::chrono::steady_clock::now();

  SearchReport report{base, iv};
  report.workers = options.workers;
  report.base_free = is_free(base, iv);

  detail::LatticeWalker walker(base, iv, options.stop);
  const int r = base.depth();

  std::uint64_t product = 1;
  std::int64_t constrained = 1;
  for (int d = 1; d <= r; ++d) {
    if (__builtin_mul_overflow(product, static_cast<std::uint64_t>(base.part(d)), &product) ||
        __builtin_mul_overflow(constrained, walker.range(d), &constrained)) {
      throw CapacityError("lattice below " + base.to_string() + " exceeds 64-bit counting");
    }
  }
  report.lattice_size_product = product;
  report.lattice_size = constrained;

  // Fix the deepest levels as block prefixes until there are enough blocks to balance workers.
  const std::int64_t wanted_blocks = 64LL * options.workers;
  int prefix_levels = 0;
  std::int64_t blocks = 1;
  while (prefix_levels < r && blocks < wanted_blocks) {
    blocks *= walker.range(r - prefix_levels);
    ++prefix_levels;
  }

  auto prefix_of = [&](std::int64_t index) {
    std::vector<Part> prefix(static_cast<std::size_t>(prefix_levels));
    for (int k = prefix_levels - 1; k >= 0; --k) {
      const int d = r - k;
      const std::int64_t span = walker.range(d);
      prefix[static_cast<std::size_t>(k)] = walker.low(d) + index % span;
      index /= span;
    }
    return prefix;
  };

  std::atomic<std::int64_t> next_block{0};
  std::atomic<std::int64_t> examined{0};
  std::atomic<int> running{options.workers};
  std::vector<detail::LatticeWalker::Result> results(static_cast<std::size_t>(options.workers));

  auto work = [&](std::size_t slot) {
    detail::LatticeWalker local = walker;
    auto& out = results[slot];
    for (;;) {
      if (options.stop.stop_requested()) {
        out.stopped = true;
        break;
      }
      const std::int64_t block = next_block.fetch_add(1);
      if (block >= blocks) break;
      const std::int64_t before = out.examined;
      local.walk_block(prefix_of(block), out);
      examined.fetch_add(out.examined - before, std::memory_order_relaxed);
      if (out.stopped) break;
    }
    running.fetch_sub(1);
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(options.workers));
    for (int w = 0; w < options.workers; ++w) pool.emplace_back(work, static_cast<std::size_t>(w));
    if (options.progress) {
      auto last = std::chrono::steady_clock::now();
      while (running.load() > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
        if (std::chrono::steady_clock::now() - last >= options.progress_interval) {
          last = std::chrono::steady_clock::now();
          options.progress({examined.load(std::memory_order_relaxed), constrained});
        }
      }
      options.progress({examined.load(std::memory_order_relaxed), constrained});
    }
  }

  bool stopped = false;
  std::vector<std::vector<Part>> found;
  for (auto& res : results) {
    report.examined += res.examined;
    stopped = stopped || res.stopped;
    for (auto& parts : res.counterexamples) found.push_back(std::move(parts));
  }
  std::sort(found.begin(), found.end());
  for (auto& parts : found) report.counterexamples.emplace_back(std::move(parts));

  report.complete = !stopped && report.examined == constrained;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace threshold
