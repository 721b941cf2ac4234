#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "threshold/errors.hpp"

namespace threshold {

using Part = std::int64_t;

enum class NodeKind { join, disjoint_union };

/// Depth 1 is the root join; kinds alternate with depth.
constexpr NodeKind node_kind(int depth) noexcept {
  return depth % 2 == 1 ? NodeKind::join : NodeKind::disjoint_union;
}

/// Caterpillar cotree T(a_1, ..., a_r) of a connected threshold graph. The node at depth i
/// carries a_i leaves; a_i >= 1 for i < r and a_r >= 2.
class Cotree {
 public:
  explicit Cotree(std::vector<Part> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvariantError("cotree needs at least one level");
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
      if (parts_[i] < 1)
        throw InvariantError("a_" + std::to_string(i + 1) + " = " + std::to_string(parts_[i]) + " violates a_i >= 1");
    }
    if (parts_.back() < 2)
      throw InvariantError("a_r = " + std::to_string(parts_.back()) + " violates a_r >= 2");
  }

  Cotree(std::initializer_list<Part> parts) : Cotree(std::vector<Part>(parts)) {}

  std::span<const Part> parts() const noexcept { return parts_; }
  int depth() const noexcept { return static_cast<int>(parts_.size()); }

  /// Leaves at the node of the given depth (1-based).
  Part part(int depth) const { return parts_.at(static_cast<std::size_t>(depth - 1)); }

  std::int64_t vertex_count() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), std::int64_t{0});
  }

  int join_count() const noexcept { return (depth() + 1) / 2; }
  int union_count() const noexcept { return depth() / 2; }

  std::string to_string() const {
    std::string out = "T(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out + ')';
  }

  friend bool operator==(const Cotree&, const Cotree&) = default;
  friend auto operator<=>(const Cotree& a, const Cotree& b) { return a.parts_ <=> b.parts_; }

 private:
  std::vector<Part> parts_;
};

/// Parses `T(` INT (`,` INT)* `)`, whitespace allowed between tokens.
inline Cotree parse_cotree(std::string_view text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r')) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c) throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  };

  expect('T');
  expect('(');
  std::vector<Part> parts;
  for (;;) {
    skip_ws();
    const std::size_t start = i;
    Part value = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (value > (INT64_MAX - 9) / 10) throw ParseError("integer too large", start);
      value = value * 10 + (text[i++] - '0');
    }
    if (i == start) throw ParseError("expected integer", i);
    parts.push_back(value);
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    break;
  }
  expect(')');
  skip_ws();
  if (i != text.size()) throw ParseError("trailing characters after ')'", i);
  return Cotree(std::move(parts));
}

/// Creation sequence: bit i is 1 when vertex i is added dominating, 0 when added isolated.
/// The last bit must be 1 (connected graph). The first bit carries no information.
class BinarySequence {
 public:
  explicit BinarySequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw InvariantError("binary sequence is empty");
    for (auto b : bits_)
      if (b > 1) throw InvariantError("binary sequence entries must be 0 or 1");
    if (bits_.back() != 1) throw InvariantError("final bit is 0: the threshold graph is disconnected");
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t size() const noexcept { return bits_.size(); }

  std::string to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
  }

  /// Run-length form, e.g. "1^4 0^3 1^2".
  std::string to_run_length() const {
    std::string out;
    for (std::size_t i = 0; i < bits_.size();) {
      std::size_t j = i;
      while (j < bits_.size() && bits_[j] == bits_[i]) ++j;
      if (!out.empty()) out += ' ';
      out += std::to_string(bits_[i]) + '^' + std::to_string(j - i);
      i = j;
    }
    return out;
  }

  friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Accepts raw bits ("111100011", separators ',' and whitespace allowed) or run-length
/// blocks ("1^4 0^3 1^2").
inline BinarySequence parse_binary(std::string_view text) {
  std::vector<std::uint8_t> bits;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == ',' || c == '\t' || c == '(' || c == ')') {
      ++i;
      continue;
    }
    if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "' in binary sequence", i);
    const auto bit = static_cast<std::uint8_t>(c - '0');
    ++i;
    if (i < text.size() && text[i] == '^') {
      const std::size_t start = ++i;
      std::size_t count = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        count = count * 10 + static_cast<std::size_t>(text[i++] - '0');
        if (count > 100'000'000) throw ParseError("block length too large", start);
      }
      if (i == start) throw ParseError("expected block length after '^'", i);
      bits.insert(bits.end(), count, bit);
    } else {
      bits.push_back(bit);
    }
  }
  return BinarySequence(std::move(bits));
}

/// Blocks from the deepest node outwards; a block's bit is 1 under a join, 0 under a union.
inline BinarySequence cotree_to_binary(const Cotree& c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(static_cast<std::size_t>(c.vertex_count()));
  for (int depth = c.depth(); depth >= 1; --depth) {
    const std::uint8_t bit = node_kind(depth) == NodeKind::join ? 1 : 0;
    bits.insert(bits.end(), static_cast<std::size_t>(c.part(depth)), bit);
  }
  return BinarySequence(std::move(bits));
}

inline Cotree binary_to_cotree(const BinarySequence& b) {
  std::vector<std::uint8_t> bits(b.bits().begin(), b.bits().end());
  if (bits.size() >= 2) bits[0] = bits[1];  // a lone first vertex is both isolated and dominating

  std::vector<Part> blocks;
  for (std::size_t i = 0; i < bits.size();) {
    std::size_t j = i;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    blocks.push_back(static_cast<Part>(j - i));
    i = j;
  }
  std::reverse(blocks.begin(), blocks.end());
  return Cotree(std::move(blocks));
}

/// Dense symmetric 0/1 matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * n_ + j] != 0; }

  void connect(std::size_t i, std::size_t j) {
    cells_[i * n_ + j] = 1;
    cells_[j * n_ + i] = 1;
  }

  std::size_t degree(std::size_t i) const {
    return static_cast<std::size_t>(std::count(cells_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                                               cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_), 1));
  }

  std::size_t entry_count() const { return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1)); }

 private:
  std::size_t n_;
  std::vector<std::uint8_t> cells_;
};

/// Vertex i is adjacent to every earlier vertex exactly when bit i is 1.
inline AdjacencyMatrix build_adjacency(const BinarySequence& b) {
  const auto bits = b.bits();
  AdjacencyMatrix a(bits.size());
  for (std::size_t i = 1; i < bits.size(); ++i) {
    if (bits[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j) a.connect(i, j);
  }
  return a;
}

/// g ⪯ h: same depth and componentwise a_i <= b_i.
inline bool poset_leq(const Cotree& g, const Cotree& h) {
  if (g.depth() != h.depth()) return false;
  const auto a = g.parts();
  const auto b = h.parts();
  return std::equal(a.begin(), a.end(), b.begin(), [](Part x, Part y) { return x <= y; });
}

}  // namespace threshold
