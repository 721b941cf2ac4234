#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "support/random_cotree.hpp"
#include "threshold/cotree.hpp"

using namespace threshold;
using threshold::testing::Rng;

namespace {

std::vector<std::uint8_t> bits_of(const char* s) {
  std::vector<std::uint8_t> out;
  for (; *s; ++s) out.push_back(static_cast<std::uint8_t>(*s - '0'));
  return out;
}

}  // namespace

TEST(ParseCotree, Examples) {
  EXPECT_EQ(parse_cotree("T(2,3,4)"), Cotree({2, 3, 4}));
  EXPECT_EQ(parse_cotree("T(5)"), Cotree({5}));
  EXPECT_EQ(parse_cotree("  T ( 11, 4 ,46,3,35,2,2 ) "), Cotree({11, 4, 46, 3, 35, 2, 2}));
}

TEST(ParseCotree, InvariantViolationsAreDistinctFromSyntax) {
  EXPECT_THROW(parse_cotree("T(2,3,1)"), InvariantError);
  EXPECT_THROW(parse_cotree("T(0,3)"), InvariantError);
  EXPECT_THROW(parse_cotree("T(1)"), InvariantError);
}

TEST(ParseCotree, SyntaxErrorsCarryPosition) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"", 0}, {"(2,3)", 0}, {"T2,3)", 1}, {"T(2,3", 5}, {"T(2,,3)", 4}, {"T(2,3)x", 6}, {"T(-2)", 2}, {"T()", 2},
  };
  for (const auto& [text, pos] : cases) {
    try {
      parse_cotree(text);
      ADD_FAILURE() << "accepted " << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position(), pos) << text << ": " << e.what();
    }
  }
}

TEST(CotreeBasics, Counts) {
  const Cotree c{2, 3, 4};
  EXPECT_EQ(c.depth(), 3);
  EXPECT_EQ(c.vertex_count(), 9);
  EXPECT_EQ(c.join_count(), 2);
  EXPECT_EQ(c.union_count(), 1);
  EXPECT_EQ(c.to_string(), "T(2,3,4)");
  EXPECT_EQ(node_kind(1), NodeKind::join);
  EXPECT_EQ(node_kind(2), NodeKind::disjoint_union);
  EXPECT_EQ(Cotree({1, 1, 1, 1, 1, 1, 2}).union_count(), 3);
}

TEST(CotreeToBinary, Examples) {
  EXPECT_EQ(cotree_to_binary(Cotree{2, 3, 4}).to_string(), "111100011");
  EXPECT_EQ(cotree_to_binary(Cotree{2, 3, 4}).to_run_length(), "1^4 0^3 1^2");
  EXPECT_EQ(cotree_to_binary(Cotree{3}).to_string(), "111");
  // Depth 2 is a union, so its two leaves are added isolated: the path P3.
  EXPECT_EQ(cotree_to_binary(Cotree{1, 2}).to_string(), "001");
  EXPECT_EQ(cotree_to_binary(Cotree{1, 1, 1, 1, 1, 1, 2}).to_string(), "11010101");
}

TEST(BinaryToCotree, Examples) {
  EXPECT_EQ(binary_to_cotree(BinarySequence(bits_of("111100011"))), Cotree({2, 3, 4}));
  EXPECT_EQ(binary_to_cotree(BinarySequence(bits_of("11"))), Cotree({2}));
  EXPECT_EQ(binary_to_cotree(BinarySequence(bits_of("001"))), Cotree({1, 2}));
  // The first vertex has nothing to dominate, so its bit is irrelevant.
  EXPECT_EQ(binary_to_cotree(BinarySequence(bits_of("011100011"))), Cotree({2, 3, 4}));
  EXPECT_EQ(binary_to_cotree(BinarySequence(bits_of("101"))), Cotree({1, 2}));
}

TEST(BinaryToCotree, RejectsDisconnectedAndEmpty) {
  EXPECT_THROW(BinarySequence(bits_of("1010")), InvariantError);
  EXPECT_THROW(BinarySequence({}), InvariantError);
  EXPECT_THROW(parse_binary("1 0 1 0"), InvariantError);
  EXPECT_THROW(parse_binary(""), InvariantError);
  EXPECT_THROW(BinarySequence({1, 2, 1}), InvariantError);
}

TEST(ParseBinary, RawAndRunLengthForms) {
  EXPECT_EQ(parse_binary("111100011").to_string(), "111100011");
  EXPECT_EQ(parse_binary("1^4 0^3 1^2").to_string(), "111100011");
  EXPECT_EQ(parse_binary("(1,1,1,1,0,0,0,1,1)").to_string(), "111100011");
  EXPECT_EQ(parse_binary("1^4 000 1 1").to_string(), "111100011");
  EXPECT_THROW(parse_binary("1^x"), ParseError);
  EXPECT_THROW(parse_binary("12"), ParseError);
}

TEST(CotreeBinary, RoundTripProperty) {
  Rng rng(1);
  for (int i = 0; i < 3000; ++i) {
    const Cotree c = threshold::testing::random_cotree(rng, 12, 9);
    const BinarySequence b = cotree_to_binary(c);
    ASSERT_EQ(static_cast<std::int64_t>(b.size()), c.vertex_count());
    ASSERT_EQ(binary_to_cotree(b), c) << c.to_string();
    ASSERT_EQ(parse_binary(b.to_run_length()), b);
  }
}

TEST(Adjacency, CompleteGraphK2) {
  const AdjacencyMatrix a = build_adjacency(BinarySequence({1, 1}));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_FALSE(a(0, 0));
  EXPECT_TRUE(a(0, 1));
  EXPECT_TRUE(a(1, 0));
  EXPECT_FALSE(a(1, 1));
}

TEST(Adjacency, FigureOneGraph) {
  const AdjacencyMatrix a = build_adjacency(parse_binary("111100011"));
  // Vertices 5,6,7 (1-based) are isolated when added: their only neighbours are the final dominators 8, 9.
  for (std::size_t v : {4u, 5u, 6u}) {
    EXPECT_EQ(a.degree(v), 2u);
    EXPECT_TRUE(a(v, 7));
    EXPECT_TRUE(a(v, 8));
  }
  EXPECT_EQ(a.degree(7), 8u);
  EXPECT_EQ(a.degree(8), 8u);
  for (std::size_t v = 0; v < 4; ++v) EXPECT_EQ(a.degree(v), 5u);  // K4 plus the two dominators
}

TEST(Adjacency, DegreesMatchIndependentEdgeList) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Cotree c = threshold::testing::random_cotree(rng, 8, 6);
    const BinarySequence b = cotree_to_binary(c);
    const AdjacencyMatrix a = build_adjacency(b);

    // Edge list straight from the definition: a dominating vertex joins everything added before it.
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b.bits()[i] == 1)
        for (std::size_t j = 0; j < i; ++j) edges.insert({j, i});
    std::vector<std::size_t> degree(b.size(), 0);
    for (const auto& [u, v] : edges) {
      ++degree[u];
      ++degree[v];
    }

    ASSERT_EQ(a.size(), static_cast<std::size_t>(c.vertex_count()));
    EXPECT_EQ(a.entry_count(), 2 * edges.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a.degree(i), degree[i]);
      EXPECT_FALSE(a(i, i));
      for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a(i, j), a(j, i));
    }
  }
}

TEST(Adjacency, DegreeSequenceOfT234) {
  const AdjacencyMatrix a = build_adjacency(cotree_to_binary(Cotree{2, 3, 4}));
  std::multiset<std::size_t> degrees;
  for (std::size_t i = 0; i < a.size(); ++i) degrees.insert(a.degree(i));
  EXPECT_EQ(degrees, (std::multiset<std::size_t>{2, 2, 2, 5, 5, 5, 5, 8, 8}));
}

TEST(Poset, Examples) {
  EXPECT_TRUE(poset_leq(Cotree{2, 3, 4}, Cotree{2, 3, 4}));
  EXPECT_TRUE(poset_leq(Cotree{2, 3, 4}, Cotree{3, 3, 5}));
  EXPECT_FALSE(poset_leq(Cotree{2, 3, 4}, Cotree{2, 3}));
  EXPECT_FALSE(poset_leq(Cotree{2, 3, 4}, Cotree{1, 3, 4}));
}

TEST(Poset, PartialOrderProperties) {
  Rng rng(3);
  auto small = [&] { return threshold::testing::random_cotree(rng, 3, 3); };
  for (int i = 0; i < 3000; ++i) {
    const Cotree a = small(), b = small(), c = small();
    EXPECT_TRUE(poset_leq(a, a));
    if (poset_leq(a, b) && poset_leq(b, a)) EXPECT_EQ(a, b);
    if (poset_leq(a, b) && poset_leq(b, c)) EXPECT_TRUE(poset_leq(a, c));
  }
}

TEST(Poset, ExtensionsAreAbove) {
  Rng rng(4);
  for (int i = 0; i < 500; ++i) {
    const Cotree base = threshold::testing::random_cotree(rng, 9, 9);
    const Cotree ext = threshold::testing::random_extension(rng, base, 4);
    EXPECT_TRUE(poset_leq(base, ext));
    if (ext != base) EXPECT_FALSE(poset_leq(ext, base));
  }
}
