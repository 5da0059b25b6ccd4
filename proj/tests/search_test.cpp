#include "tfpack/search.hpp"

#include <cstdlib>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_support.hpp"

namespace tfpack {
namespace {

using testing::cycle_graph;
using testing::random_graph;
using testing::random_permutation;

// Every permutation, filtered by the definition.
std::vector<Permutation> naive_embeddings(const Graph& g) {
  std::vector<Vertex> p(static_cast<std::size_t>(g.order()));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    bool ok = true;
    for (const Edge& e : g.edges()) {
      if (g.has_edge(p[static_cast<std::size_t>(e.u)], p[static_cast<std::size_t>(e.v)])) {
        ok = false;
        break;
      }
    }
    if (ok) out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Permutation> pruned_embeddings(const Graph& g, const SearchOptions& opt = {}) {
  std::vector<Permutation> out;
  enumerate_embeddings(
      g, {},
      [&](const Embedding& e) {
        out.push_back(e.perm());
        return true;
      },
      opt);
  return out;
}

std::set<CanonicalForm> forms(const SumClasses& s) {
  std::set<CanonicalForm> out;
  for (const auto& c : s.classes) out.insert(c.form);
  return out;
}

TEST(EnumerateEmbeddings, SmallCounts) {
  EXPECT_TRUE(pruned_embeddings(cycle_graph(3)).empty());
  EXPECT_TRUE(pruned_embeddings(cycle_graph(4)).empty());
  EXPECT_TRUE(pruned_embeddings(realize(CycleType{3, 3})).empty());
  EXPECT_EQ(pruned_embeddings(cycle_graph(5)).size(), 10u);
}

TEST(EnumerateEmbeddings, MatchesNaiveFilterOnCycleTypes) {
  for (int n = 3; n <= 7; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      EXPECT_EQ(pruned_embeddings(g), naive_embeddings(g)) << render(ct);
    }
  }
}

TEST(EnumerateEmbeddings, MatchesNaiveFilterOnRandomGraphs) {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = random_graph(rng, 3 + trial % 5, 0.3);
    EXPECT_EQ(pruned_embeddings(g), naive_embeddings(g)) << "trial " << trial;
  }
}

TEST(EnumerateEmbeddings, SymmetryReductionKeepsRawCount) {
  for (int n = 5; n <= 9; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      SearchOptions reduced;
      reduced.reduce_symmetry = true;
      const auto full = enumerate_embeddings(g, {}, [](const Embedding&) { return true; });
      const auto part = enumerate_embeddings(g, {}, [](const Embedding&) { return true; }, reduced);
      EXPECT_EQ(full.raw, part.raw) << render(ct);
      EXPECT_LE(part.visited, full.visited);
    }
  }
}

TEST(EnumerateEmbeddings, LimitStopsEarly) {
  SearchConstraints c;
  c.limit = 3;
  std::size_t seen = 0;
  const auto r = enumerate_embeddings(cycle_graph(8), c, [&](const Embedding&) {
    ++seen;
    return true;
  });
  EXPECT_EQ(seen, 3u);
  EXPECT_FALSE(r.exhausted);
  SearchConstraints bad;
  bad.limit = 0;
  EXPECT_THROW(enumerate_embeddings(cycle_graph(8), bad, [](const Embedding&) { return true; }),
               std::invalid_argument);
}

TEST(EnumerateEmbeddings, SoftLimit) {
  EXPECT_THROW(enumerate_embeddings(cycle_graph(15), {}, [](const Embedding&) { return false; }),
               SizeLimitError);
  SearchOptions o;
  o.override_soft_limit = true;
  EXPECT_NO_THROW(enumerate_embeddings(cycle_graph(15), {}, [](const Embedding&) { return false; }, o));
}

TEST(EnumerateRedTwoFactors, CountTimesAutomorphismsIsRawCount) {
  for (int n = 5; n <= 9; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      std::uint64_t copies = 0;
      std::set<std::vector<Mask>> distinct;
      enumerate_red_two_factors(g, [&](const std::vector<std::vector<Vertex>>& red) {
        ++copies;
        GraphBuilder b(n);
        for (const auto& c : red) {
          EXPECT_EQ(c.front(), *std::min_element(c.begin(), c.end()));
          for (std::size_t i = 0; i < c.size(); ++i) b.add_edge(c[i], c[(i + 1) % c.size()]);
        }
        const Graph r = b.build();
        EXPECT_EQ(recognize_two_factor(r), ct);
        distinct.insert(std::vector<Mask>(r.rows().begin(), r.rows().end()));
        return true;
      });
      EXPECT_EQ(distinct.size(), copies) << render(ct);
      EXPECT_EQ(copies * automorphism_count(ct), naive_embeddings(g).size()) << render(ct);
    }
  }
}

TEST(SumClasses, RoutesAgree) {
  for (int n = 5; n <= 10; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      const Graph g = realize(ct);
      SumClassOptions perm;
      perm.search.route = Route::permutations;
      perm.search.reduce_symmetry = true;
      SumClassOptions red;
      red.search.route = Route::red_copies;
      const auto a = sum_classes(g, perm);
      const auto b = sum_classes(g, red);
      EXPECT_EQ(forms(a), forms(b)) << render(ct);
      ASSERT_TRUE(a.raw && b.raw);
      EXPECT_EQ(*a.raw, *b.raw) << render(ct);
      EXPECT_EQ(b.route, Route::red_copies);
    }
  }
}

TEST(SumClasses, InvariantUnderRelabeling) {
  std::mt19937 rng(62);
  for (const CycleType& ct : {CycleType{7}, CycleType{3, 5}, CycleType{4, 4}, CycleType{3, 3, 3}}) {
    const Graph g = realize(ct);
    const Graph h = apply_permutation(g, random_permutation(rng, ct.total()));
    SumClassOptions perm;
    perm.search.route = Route::permutations;
    EXPECT_EQ(forms(sum_classes(g)), forms(sum_classes(h, perm))) << render(ct);
  }
}

TEST(SumClasses, SevenCycleHasTwoClasses) {
  const auto s = sum_classes(cycle_graph(7));
  EXPECT_EQ(s.classes.size(), 2u);
  EXPECT_TRUE(s.exhausted);
}

TEST(SumClasses, ClassLimitTruncates) {
  SumClassOptions o;
  o.class_limit = 1;
  const auto s = sum_classes(cycle_graph(8), o);
  EXPECT_EQ(s.classes.size(), 1u);
  EXPECT_FALSE(s.exhausted);
  EXPECT_FALSE(s.raw.has_value());
}

TEST(FindEmbedding, RespectsConstraints) {
  SearchConstraints c;
  c.k4 = Require::yes;
  const Graph g = cycle_graph(8);
  auto e = find_embedding(g, c);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(contains_k4(make_sum(g, *e).sum).has_value());
  c.k4 = Require::no;
  e = find_embedding(g, c);
  ASSERT_TRUE(e.has_value());
  EXPECT_FALSE(contains_k4(make_sum(g, *e).sum).has_value());
  // C5's only class is K5, which is non-planar.
  SearchConstraints planar_only;
  planar_only.planar = Require::yes;
  EXPECT_FALSE(find_embedding(cycle_graph(5), planar_only).has_value());
}

TEST(FindEmbedding, RoutesAgreeOnExistence) {
  for (int n = 5; n <= 9; ++n) {
    for (const CycleType& ct : cycle_types_of_order(n)) {
      for (auto inv : {Invariant::k4, Invariant::bipartite, Invariant::planar}) {
        for (Require req : {Require::yes, Require::no}) {
          SearchConstraints c;
          c[inv] = req;
          SearchOptions perm;
          perm.route = Route::permutations;
          const Graph g = realize(ct);
          EXPECT_EQ(find_embedding(g, c).has_value(), find_embedding(g, c, perm).has_value())
              << render(ct) << " " << name(inv) << " " << to_string(req);
        }
      }
    }
  }
}

TEST(FindDistinctEmbeddings, PairwiseDistinct) {
  const Graph g = realize(CycleType{3, 6});
  const auto es = find_distinct_embeddings(g, {}, 5);
  EXPECT_GE(es.size(), 2u);
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i + 1; j < es.size(); ++j) EXPECT_TRUE(are_distinct(g, es[i], es[j]));
  }
}

TEST(ClassifyByOracle, SmallTypes) {
  EXPECT_EQ(classify_by_oracle(CycleType{4}).verdict, Verdict::not_embeddable);
  EXPECT_EQ(classify_by_oracle(CycleType{3, 3}).verdict, Verdict::not_embeddable);
  EXPECT_EQ(classify_by_oracle(CycleType{5}).verdict, Verdict::uniquely_embeddable);
  EXPECT_EQ(classify_by_oracle(CycleType{6}).verdict, Verdict::uniquely_embeddable);
  EXPECT_EQ(classify_by_oracle(CycleType{3, 4}).verdict, Verdict::uniquely_embeddable);
  const auto c7 = classify_by_oracle(CycleType{7});
  EXPECT_EQ(c7.verdict, Verdict::multiply_embeddable);
  EXPECT_EQ(c7.witnesses.size(), 2u);
}

TEST(ClassifyByOracle, WitnessesAreValidAndDistinct) {
  for (const CycleType& ct : cycle_types_up_to(10)) {
    const auto c = classify_by_oracle(ct);
    const Graph g = realize(ct);
    for (const auto& w : c.witnesses) EXPECT_TRUE(check_embedding(g, w.perm()).valid());
    if (c.witnesses.size() == 2) {
      EXPECT_TRUE(are_distinct(g, c.witnesses[0], c.witnesses[1]));
    }
  }
}

TEST(ClassifyByTheorem, Table) {
  EXPECT_EQ(classify_by_theorem(CycleType{3}), Verdict::not_embeddable);
  EXPECT_EQ(classify_by_theorem(CycleType{3, 3, 3, 3}), Verdict::uniquely_embeddable);
  EXPECT_EQ(classify_by_theorem(CycleType{3, 3, 3, 3, 3}), Verdict::multiply_embeddable);
  EXPECT_EQ(classify_by_theorem(CycleType{4, 4}), Verdict::multiply_embeddable);
  EXPECT_EQ(parse_verdict("UniquelyEmbeddable"), Verdict::uniquely_embeddable);
  EXPECT_THROW(parse_verdict("Maybe"), ParseError);
}

TEST(CycleTypes, PartitionCounts) {
  // Partitions of n into parts >= 3.
  const std::vector<std::size_t> expected{1, 1, 1, 2, 2, 3, 4, 5, 6, 9};
  for (int n = 3; n <= 12; ++n) {
    EXPECT_EQ(cycle_types_of_order(n).size(), expected[static_cast<std::size_t>(n - 3)]) << n;
  }
  EXPECT_EQ(cycle_types_up_to(12).size(), 34u);
  EXPECT_TRUE(cycle_types_of_order(2).empty());
}

TEST(Census, SmallOrders) {
  const auto r3 = census(3);
  ASSERT_EQ(r3.rows.size(), 1u);
  EXPECT_EQ(r3.rows[0].oracle.verdict, Verdict::not_embeddable);
  const auto r7 = census(7);
  ASSERT_EQ(r7.rows.size(), 7u);
  EXPECT_EQ(r7.disagreements, 0u);
  for (std::size_t i = 1; i < r7.rows.size(); ++i) EXPECT_LT(r7.rows[i - 1].type, r7.rows[i].type);
  EXPECT_EQ(r7.rows.back().type, (CycleType{7}));
  EXPECT_FALSE(r7.rows.back().certificate.empty());
  EXPECT_THROW(census(2), std::invalid_argument);
  EXPECT_THROW(census(14), SizeLimitError);
}

TEST(Census, ParallelMatchesSerial) {
  CensusOptions par;
  par.jobs = 3;
  const auto a = census(9);
  const auto b = census(9, par);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].type, b.rows[i].type);
    EXPECT_EQ(a.rows[i].oracle.verdict, b.rows[i].oracle.verdict);
    EXPECT_EQ(a.rows[i].certificate, b.rows[i].certificate);
  }
}

TEST(SoftLimit, ReadsEnvironment) {
  ::setenv("TFPACK_SOFT_LIMIT", "20", 1);
  EXPECT_EQ(soft_limit(), 20);
  ::unsetenv("TFPACK_SOFT_LIMIT");
  EXPECT_EQ(soft_limit(), default_soft_limit);
}

}  // namespace
}  // namespace tfpack
