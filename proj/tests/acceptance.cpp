// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <thread>

#include "tfpack/constructive.hpp"
#include "tfpack/fixtures.hpp"
#include "tfpack/search.hpp"

using namespace tfpack;

namespace {

struct Verdict_ {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && v_.pass) {
      v_.pass = false;
      v_.detail = what;
    }
  }
  void note(std::string s) {
    if (v_.pass) v_.detail = std::move(s);
  }
  Verdict_ result() const { return v_; }

 private:
  Verdict_ v_;
};

Graph sum_of(const CycleType& ct, const Embedding& e) { return make_sum(realize(ct), e).sum; }

SearchOptions full() {
  SearchOptions o;
  o.override_soft_limit = true;
  return o;
}

Verdict_ non_embeddable() {
  Check c;
  for (const CycleType& ct : {CycleType{3}, CycleType{4}, CycleType{3, 3}}) {
    const auto r = enumerate_embeddings(realize(ct), {}, [](const Embedding&) { return true; }, full());
    c.expect(r.exhausted && r.visited == 0, render(ct) + " has an embedding");
  }
  c.note("C3, C4, 2C3: 0 embeddings");
  return c.result();
}

Verdict_ uniqueness() {
  Check c;
  std::string counts;
  for (const CycleType& ct : {CycleType{5}, CycleType{6}, CycleType{3, 4}, CycleType{3, 5}, CycleType{3, 3, 3},
                              CycleType{3, 3, 3, 3}}) {
    SumClassOptions opt;
    opt.search = full();
    const auto classes = sum_classes(realize(ct), opt);
    c.expect(classes.exhausted && classes.classes.size() == 1,
             render(ct) + " has " + std::to_string(classes.classes.size()) + " classes");
    if (!counts.empty()) counts += ", ";
    counts += render(ct) + "=" + std::to_string(classes.classes.size());
  }
  c.note(counts);
  return c.result();
}

Verdict_ small_cycle_sums() {
  Check c;
  const Graph c5 = realize(CycleType{5});
  const Graph k5 = complement(Graph(5));
  std::uint64_t n5 = 0;
  enumerate_embeddings(c5, {}, [&](const Embedding& e) {
    ++n5;
    c.expect(make_sum(c5, e).sum == k5, "a C5 sum is not K5");
    return true;
  });
  const Graph c6 = realize(CycleType{6});
  std::uint64_t n6 = 0;
  enumerate_embeddings(c6, {}, [&](const Embedding& e) {
    ++n6;
    const Graph comp = complement(make_sum(c6, e).sum);
    bool matching = comp.size() == 3;
    for (Vertex v = 0; v < 6; ++v) matching = matching && comp.degree(v) == 1;
    c.expect(matching, "a C6 sum complement is not a perfect matching");
    return true;
  });
  c.expect(n5 > 0 && n6 > 0, "no embeddings enumerated");
  c.note(std::to_string(n5) + " C5 and " + std::to_string(n6) + " C6 embeddings checked");
  return c.result();
}

Verdict_ seven_cycle() {
  Check c;
  SumClassOptions opt;
  opt.search = full();
  const CycleType ct{7};
  const auto classes = sum_classes(realize(ct), opt);
  c.expect(classes.classes.size() >= 2, "C7 has fewer than two classes");
  const auto two = two_distinct_embeddings(ct);
  c.expect(are_isomorphic(complement(sum_of(ct, two.first.result)), realize(CycleType{7})),
           "first witness complement is not C7");
  c.expect(are_isomorphic(complement(sum_of(ct, two.second.result)), realize(CycleType{3, 4})),
           "second witness complement is not C3+C4");
  c.note(std::to_string(classes.classes.size()) + " classes; complements C7 and C3+C4");
  return c.result();
}

Verdict_ census_twelve() {
  Check c;
  CensusOptions opt;
  opt.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const CensusReport r = census(12, opt);
  std::size_t multiply = 0;
  std::size_t truncated = 0;
  const std::vector<CycleType> listed{{3},    {4},    {3, 3},    {5},         {6},
                                      {3, 4}, {3, 5}, {3, 3, 3}, {3, 3, 3, 3}};
  for (const auto& row : r.rows) {
    c.expect(row.agreement, render(row.type) + ": theorem and oracle disagree");
    if (std::find(listed.begin(), listed.end(), row.type) != listed.end()) continue;
    c.expect(row.oracle.verdict == tfpack::Verdict::multiply_embeddable, render(row.type) + " not multiply");
    c.expect(row.oracle.witnesses.size() >= 2, render(row.type) + " lacks two witnesses");
    ++multiply;
    truncated += row.oracle.exhausted ? 0 : 1;
  }
  c.expect(r.disagreements == 0, "census reports disagreements");
  c.note(std::to_string(r.rows.size()) + " types, " + std::to_string(multiply) + " multiply (" +
         std::to_string(truncated) + " stopped after two classes), 0 disagreements");
  return c.result();
}

Verdict_ lemma7() {
  Check c;
  std::vector<std::pair<CycleType, int>> cases;
  for (int n = 8; n <= 14; ++n) cases.push_back({CycleType{n}, 0});
  cases.push_back({CycleType{4, 7}, 1});
  for (int p = 7; p <= 10; ++p) cases.push_back({CycleType{3, 3, p}, 2});
  for (const auto& [ct, idx] : cases) {
    const Embedding e = k4_embedding(ct, idx);
    c.expect(contains_k4(sum_of(ct, e)).has_value(), render(ct) + " sum has no K4");
  }
  c.note(std::to_string(cases.size()) + " types");
  return c.result();
}

Verdict_ rotations() {
  Check c;
  for (int n = 7; n <= 15; n += 2) {
    c.expect(!contains_k4(sum_of(CycleType{n}, rotate_embedding(n, 2))).has_value(),
             "shift 2 on C" + std::to_string(n) + " has K4");
  }
  for (int n = 8; n <= 16; n += 2) {
    const int r = choose_coprime_shift(n);
    c.expect(3 <= r && r <= n / 2 - 1 && std::gcd(r, n) == 1, "bad shift for C" + std::to_string(n));
    c.expect(!contains_k4(sum_of(CycleType{n}, rotate_embedding(n, r))).has_value(),
             "shift " + std::to_string(r) + " on C" + std::to_string(n) + " has K4");
  }
  c.note("odd 7..15 shift 2, even 8..16 prime shift");
  return c.result();
}

// Disconnected packings: random part packings placed on disjoint blocks
// after a random choice of split. With at most 12 vertices a sum has at
// most two components, so each needs one merge.
Verdict_ lemma1() {
  Check c;
  std::mt19937 rng(2024);
  std::vector<CycleType> types;
  for (const auto& ct : cycle_types_up_to(12)) {
    if (ct.cycle_count() >= 2) types.push_back(ct);
  }
  int made = 0;
  int merges = 0;
  for (int attempt = 0; made < 20 && attempt < 1000; ++attempt) {
    const CycleType ct = types[rng() % types.size()];
    const auto& l = ct.lengths();
    std::vector<std::vector<int>> splits;
    for (std::uint32_t mask = 1; mask + 1 < (1u << l.size()); ++mask) {
      std::vector<int> a, b;
      for (std::size_t i = 0; i < l.size(); ++i) ((mask >> i) & 1u ? a : b).push_back(l[i]);
      if (is_packable(CycleType(a)) && is_packable(CycleType(b))) splits.push_back(a);
    }
    if (splits.empty()) continue;
    const auto split = detail::make_split(ct, splits[rng() % splits.size()]);
    auto random_packing = [&](const CycleType& p) {
      const auto found = find_distinct_embeddings(realize(p), {}, 3, full());
      return found[rng() % found.size()];
    };
    Embedding cur = detail::place_parts(ct, split, random_packing(split.first), random_packing(split.second));
    int comps = component_count(sum_of(ct, cur));
    c.expect(comps >= 2, render(ct) + " packing is connected");
    while (comps > 1) {
      cur = merge_components(ct, cur);
      ++merges;
      const int next = component_count(sum_of(ct, cur));
      c.expect(next == comps - 1, render(ct) + ": component count did not drop by one");
      c.expect(*recognize_two_factor(make_sum(realize(ct), cur).red) == ct, render(ct) + ": red type changed");
      comps = next;
    }
    ++made;
  }
  c.expect(made == 20, "could not build 20 disconnected packings");
  c.note(std::to_string(made) + " packings, " + std::to_string(merges) + " merges");
  return c.result();
}

Verdict_ distinguishers() {
  Check c;
  for (const CycleType& ct : {CycleType{4, 4}, CycleType{4, 4, 4}}) {
    c.expect(is_bipartite(sum_of(ct, bxy_packing(ct, BxyVariant::bipartite))).bipartite,
             render(ct) + " bipartite packing is not bipartite");
    c.expect(!is_bipartite(sum_of(ct, bxy_packing(ct, BxyVariant::nonbipartite))).bipartite,
             render(ct) + " non-bipartite packing is bipartite");
  }
  const CycleType c36{3, 6};
  c.expect(planar(sum_of(c36, fixture("c3c6_planar").embedding)), "C3+C6 planar packing is not planar");
  c.expect(!planar(sum_of(c36, fixture("c3c6_nonplanar").embedding)), "C3+C6 non-planar packing is planar");
  SearchConstraints want_planar, want_nonplanar;
  want_planar.planar = Require::yes;
  want_nonplanar.planar = Require::no;
  c.expect(find_embedding(realize(c36), want_planar, full()).has_value(), "search finds no planar C3+C6");
  c.expect(find_embedding(realize(c36), want_nonplanar, full()).has_value(), "search finds no non-planar C3+C6");
  const CycleType c5{3, 3, 3, 3, 3};
  const int ta = max_triangle_subset(sum_of(c5, triangle_list_packing(c5, TriangleVariant::a)), 9).best_count;
  const int tb = max_triangle_subset(sum_of(c5, triangle_list_packing(c5, TriangleVariant::b)), 9).best_count;
  c.expect(ta <= 4 && tb >= 5, "5C3 triangle maxima " + std::to_string(ta) + ", " + std::to_string(tb));
  const CycleType c3334{3, 3, 3, 4};
  const auto cut = analyze_connectivity(sum_of(c3334, fixture("c3c3c3c4_cut").embedding));
  const auto two = analyze_connectivity(sum_of(c3334, fixture("c3c3c3c4_2conn").embedding));
  c.expect(cut.components.size() == 1 && !cut.cut_vertices.empty(), "3C3+C4 cut-vertex packing");
  c.expect(two.components.size() == 1 && two.cut_vertices.empty(), "3C3+C4 2-connected packing");
  c.note("5C3 triangle maxima " + std::to_string(ta) + " vs " + std::to_string(tb));
  return c.result();
}

Verdict_ ladders() {
  Check c;
  int checked = 0;
  for (const auto& spec : fixture_specs()) {
    if (!spec.ladder_length) continue;
    const LadderTemplate& t = ladder_template(spec.name);
    const bool k4_free = t.preserved[Invariant::k4] == Require::no;
    // K4-free families must work from l = 1; the others from their first length.
    const int from = k4_free ? 1 : t.l_first;
    for (int l = from; l < from + 3; ++l) {
      std::string why;
      auto x = try_ladder(t.base, t.base_embedding, t.designated_length, t.roles, l, &why);
      c.expect(x.has_value(), spec.name + " l=" + std::to_string(l) + ": " + why);
      if (!x) continue;
      c.expect(check_embedding(realize(x->type), x->embedding.perm()).valid(), spec.name + " invalid");
      const Graph s = sum_of(x->type, x->embedding);
      if (k4_free) c.expect(!contains_k4(s).has_value(), spec.name + " l=" + std::to_string(l) + " has K4");
      c.expect(t.preserved.holds(s), spec.name + " l=" + std::to_string(l) + " loses its claim");
      ++checked;
    }
  }
  c.note(std::to_string(checked) + " extensions");
  return c.result();
}

Verdict_ oracle_self_consistency() {
  Check c;
  std::vector<Graph> graphs;
  for (const auto& ct : cycle_types_up_to(7)) graphs.push_back(realize(ct));
  std::mt19937 rng(7);
  for (int i = 0; i < 30; ++i) {
    const int n = 3 + i % 5;
    std::bernoulli_distribution coin(0.35);
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        if (coin(rng)) b.add_edge(u, v);
      }
    }
    graphs.push_back(b.build());
  }
  std::uint64_t total = 0;
  for (const Graph& g : graphs) {
    std::vector<Permutation> naive;
    std::vector<Vertex> p(static_cast<std::size_t>(g.order()));
    std::iota(p.begin(), p.end(), 0);
    do {
      bool ok = true;
      for (const Edge& e : g.edges()) ok = ok && !g.has_edge(p[e.u], p[e.v]);
      if (ok) naive.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<Permutation> pruned;
    enumerate_embeddings(g, {}, [&](const Embedding& e) {
      pruned.push_back(e.perm());
      return true;
    });
    c.expect(naive == pruned, "mismatch on a graph of order " + std::to_string(g.order()));
    total += naive.size();
  }
  c.note(std::to_string(graphs.size()) + " graphs, " + std::to_string(total) + " embeddings");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict_()>>> criteria{
      {"non-embeddable C3, C4, 2C3", non_embeddable},
      {"uniquely embeddable types", uniqueness},
      {"C5 sum is K5, C6 sum complement is a matching", small_cycle_sums},
      {"C7 classes and witness complements", seven_cycle},
      {"census(12) agrees with the theorem", census_twelve},
      {"K4 extension", lemma7},
      {"rotation shifts", rotations},
      {"component merging", lemma1},
      {"distinguishing invariants", distinguishers},
      {"ladder extensions", ladders},
      {"pruned vs naive enumeration", oracle_self_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict_ v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s  %s (%s) [%.2fs]\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.c_str(), s);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
