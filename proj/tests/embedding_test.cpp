#include "tfpack/embedding.hpp"

#include <random>

#include "gtest/gtest.h"
#include "test_support.hpp"
#include "tfpack/search.hpp"

namespace tfpack {
namespace {

using testing::complete_graph;
using testing::cycle_graph;
using testing::path_graph;
using testing::random_permutation;

std::vector<Embedding> all_embeddings(const Graph& g) {
  std::vector<Embedding> out;
  enumerate_embeddings(g, {}, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

Permutation doubling(int n) {
  std::vector<Vertex> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = (2 * i) % n;
  return Permutation(img);
}

TEST(ParseCycleType, Examples) {
  EXPECT_EQ(parse_cycle_type("C3+C4").lengths(), (std::vector<int>{3, 4}));
  EXPECT_EQ(parse_cycle_type("7").lengths(), (std::vector<int>{7}));
  EXPECT_EQ(parse_cycle_type("7+3+3").lengths(), (std::vector<int>{3, 3, 7}));
  EXPECT_EQ(parse_cycle_type(" C4 + 5 ").total(), 9);
  EXPECT_THROW(parse_cycle_type("C2+C3"), ParseError);
  EXPECT_THROW(parse_cycle_type("C3++C4"), ParseError);
  EXPECT_THROW(parse_cycle_type("Cx"), ParseError);
  EXPECT_THROW(parse_cycle_type(""), ParseError);
  EXPECT_THROW(parse_cycle_type("C"), ParseError);
}

TEST(ParseCycleType, RoundTripsThroughRender) {
  for (int n = 3; n <= 20; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      EXPECT_EQ(parse_cycle_type(render(ct)), ct) << render(ct);
    }
  }
  EXPECT_EQ(render(CycleType{7, 3, 3}), "C3+C3+C7");
}

TEST(Realize, Examples) {
  EXPECT_EQ(realize(CycleType{3}), complete_graph(3));
  const Graph g = realize(CycleType{3, 4});
  EXPECT_EQ(g.order(), 7);
  EXPECT_EQ(g.size(), 7);
  EXPECT_TRUE(is_regular(g, 2));
  EXPECT_EQ(analyze_connectivity(g).components.size(), 2u);
  const Graph five = realize(CycleType{3, 3, 3, 3, 3});
  EXPECT_EQ(five.order(), 15);
  EXPECT_EQ(analyze_connectivity(five).components.size(), 5u);
}

TEST(RecognizeTwoFactor, RoundTripAndFailure) {
  EXPECT_EQ(recognize_two_factor(realize(CycleType{3, 5})), (CycleType{3, 5}));
  EXPECT_FALSE(recognize_two_factor(path_graph(4)).has_value());
  EXPECT_FALSE(recognize_two_factor(complete_graph(4)).has_value());
}

TEST(RecognizeTwoFactor, RedCopyHasSameType) {
  const Graph g = realize(CycleType{4, 7});
  auto e = find_embedding(g, {});
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(recognize_two_factor(make_sum(g, *e).red), (CycleType{4, 7}));
}

TEST(RecognizeTwoFactor, InvariantUnderRelabeling) {
  std::mt19937 rng(21);
  for (int n = 3; n <= 16; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = apply_permutation(realize(ct), random_permutation(rng, n));
      EXPECT_EQ(recognize_two_factor(g), ct);
    }
  }
}

TEST(CheckEmbedding, IdentityViolatesEveryEdge) {
  const Graph g = realize(CycleType{3, 4});
  const auto check = check_embedding(g, Permutation::identity(7));
  EXPECT_FALSE(check.valid());
  EXPECT_EQ(check.violations.size(), 7u);
  EXPECT_THROW(check_embedding(g, Permutation::identity(6)), GraphError);
}

TEST(CheckEmbedding, DoublingOnSevenCycleIsValid) {
  const auto check = check_embedding(cycle_graph(7), doubling(7));
  EXPECT_TRUE(check.valid());
  EXPECT_TRUE(check.violations.empty());
}

TEST(CheckEmbedding, FourCycleHasNoEmbedding) {
  const Graph c4 = cycle_graph(4);
  std::vector<Vertex> p{0, 1, 2, 3};
  do {
    EXPECT_FALSE(check_embedding(c4, Permutation(p)).valid());
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(CheckEmbedding, DependsOnlyOnRedEdgeSet) {
  // The 12 automorphisms of C6: rotations and reflections.
  const Graph c6 = cycle_graph(6);
  std::vector<Permutation> auts;
  for (int r = 0; r < 6; ++r) {
    std::vector<Vertex> rot(6);
    std::vector<Vertex> ref(6);
    for (int i = 0; i < 6; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + r) % 6;
      ref[static_cast<std::size_t>(i)] = (r - i + 6) % 6;
    }
    auts.emplace_back(rot);
    auts.emplace_back(ref);
  }
  for (const auto& a : auts) ASSERT_EQ(apply_permutation(c6, a), c6);
  std::vector<Vertex> p{0, 1, 2, 3, 4, 5};
  do {
    const Permutation perm(p);
    const bool valid = check_embedding(c6, perm).valid();
    for (const auto& a : auts) {
      EXPECT_EQ(check_embedding(c6, compose(perm, a)).valid(), valid);
    }
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(MakeSum, FiveCycleSumIsK5) {
  const Graph c5 = cycle_graph(5);
  const auto embeddings = all_embeddings(c5);
  ASSERT_FALSE(embeddings.empty());
  for (const auto& e : embeddings) EXPECT_EQ(make_sum(c5, e).sum, complete_graph(5));
}

TEST(MakeSum, SixCycleSumComplementIsPerfectMatching) {
  const Graph c6 = cycle_graph(6);
  const auto embeddings = all_embeddings(c6);
  ASSERT_FALSE(embeddings.empty());
  for (const auto& e : embeddings) {
    const Graph co = complement(make_sum(c6, e).sum);
    EXPECT_EQ(co.size(), 3);
    EXPECT_TRUE(is_regular(co, 1));
  }
}

TEST(MakeSum, TriangleAndSquareSumIsFourRegular) {
  const Graph g = realize(CycleType{3, 4});
  auto e = find_embedding(g, {});
  ASSERT_TRUE(e.has_value());
  const PackingSum s = make_sum(g, *e);
  EXPECT_TRUE(is_regular(s.sum, 4));
  EXPECT_EQ(s.black, g);
}

TEST(MakeSum, EverySumOfATwoFactorIsFourRegular) {
  for (int n = 5; n <= 9; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      SearchConstraints c;
      c.limit = 200;
      enumerate_embeddings(g, c, [&](const Embedding& e) {
        const PackingSum s = make_sum(g, e);
        EXPECT_TRUE(is_regular(s.sum, 4)) << render(ct);
        EXPECT_EQ(s.sum.size(), 2 * g.size());
        EXPECT_EQ(recognize_two_factor(s.red), ct);
        return true;
      });
    }
  }
}

TEST(AreDistinct, SameEmbeddingIsNotDistinct) {
  const Graph c7 = cycle_graph(7);
  const Embedding e = Embedding::verified(c7, doubling(7));
  EXPECT_FALSE(are_distinct(c7, e, e));
}

TEST(AreDistinct, SevenCycleHasComplementClassesC7AndC3C4) {
  const Graph c7 = cycle_graph(7);
  const Embedding shift = Embedding::verified(c7, doubling(7));
  EXPECT_TRUE(are_isomorphic(complement(make_sum(c7, shift).sum), c7));
  SearchConstraints c;
  c.predicate = [](const PackingSum& s) {
    return are_isomorphic(complement(s.sum), realize(CycleType{3, 4}));
  };
  auto other = find_embedding(c7, c);
  ASSERT_TRUE(other.has_value());
  EXPECT_TRUE(are_distinct(c7, shift, *other));
}

TEST(AreDistinct, FiveCycleEmbeddingsAreAllEquivalent) {
  const Graph c5 = cycle_graph(5);
  const auto embeddings = all_embeddings(c5);
  for (const auto& e : embeddings) EXPECT_FALSE(are_distinct(c5, embeddings.front(), e));
}

TEST(AutomorphismCount, MatchesBruteForce) {
  for (int n = 3; n <= 8; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      std::vector<Vertex> p(static_cast<std::size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      std::uint64_t count = 0;
      do {
        if (apply_permutation(g, Permutation(p)) == g) ++count;
      } while (std::next_permutation(p.begin(), p.end()));
      EXPECT_EQ(automorphism_count(ct), count) << render(ct);
    }
  }
}

}  // namespace
}  // namespace tfpack
