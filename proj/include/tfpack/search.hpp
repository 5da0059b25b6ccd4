#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tfpack/canonical.hpp"
#include "tfpack/distinguish.hpp"
#include "tfpack/embedding.hpp"
#include "tfpack/graph.hpp"

namespace tfpack {

enum class Require { any, yes, no };

inline const char* to_string(Require r) {
  switch (r) {
    case Require::any: return "any";
    case Require::yes: return "yes";
    case Require::no: return "no";
  }
  return "?";
}

inline Require parse_require(std::string_view s) {
  if (s == "any") return Require::any;
  if (s == "yes") return Require::yes;
  if (s == "no") return Require::no;
  throw ParseError("expected yes|no|any, got '" + std::string(s) + "'");
}

// Filters applied to the packing sum at each leaf of the search.
struct SearchConstraints {
  Require k4 = Require::any;
  Require bipartite = Require::any;
  Require planar = Require::any;
  Require connected = Require::any;
  Require cut_vertex = Require::any;
  Require p4_neighborhood = Require::any;
  std::optional<std::uint64_t> limit;        // stop after visiting this many embeddings
  std::optional<std::size_t> class_limit;    // stop after this many distinct sum classes
  // Extra filter on the packing sum; must be isomorphism-invariant when
  // symmetry reduction is on.
  std::function<bool(const PackingSum&)> predicate;

  Require& operator[](Invariant inv) {
    switch (inv) {
      case Invariant::k4: return k4;
      case Invariant::bipartite: return bipartite;
      case Invariant::planar: return planar;
      case Invariant::connected: return connected;
      case Invariant::cut_vertex: return cut_vertex;
      case Invariant::p4_neighborhood: return p4_neighborhood;
    }
    return k4;
  }
  Require operator[](Invariant inv) const { return const_cast<SearchConstraints&>(*this)[inv]; }

  void validate() const {
    if ((limit && *limit == 0) || (class_limit && *class_limit == 0)) {
      throw std::invalid_argument("search limits must be positive when set");
    }
  }

  // Cheap invariants first, planarity last.
  bool accepts(const PackingSum& s) const {
    static constexpr std::array<Invariant, 6> order = {
        Invariant::connected, Invariant::bipartite, Invariant::k4,
        Invariant::cut_vertex, Invariant::p4_neighborhood, Invariant::planar};
    for (Invariant inv : order) {
      const Require r = (*this)[inv];
      if (r == Require::any) continue;
      if (evaluate(inv, s.sum) != (r == Require::yes)) return false;
    }
    return !predicate || predicate(s);
  }
};

inline constexpr int default_soft_limit = 14;

// TFPACK_SOFT_LIMIT raises (or lowers) the order guard for exhaustive runs.
inline int soft_limit() {
  if (const char* env = std::getenv("TFPACK_SOFT_LIMIT")) {
    try {
      const int v = std::stoi(env);
      if (v > 0 && v <= max_order) return v;
    } catch (const std::exception&) {
    }
  }
  return default_soft_limit;
}

enum class Route { automatic, permutations, red_copies };

struct SearchOptions {
  bool override_soft_limit = false;
  // Permutation route only: restrict the image of vertex 0 to orbit
  // representatives of Aut(G). Only used when G is a 2-factor.
  bool reduce_symmetry = false;
  Route route = Route::automatic;
};

struct EnumerationResult {
  bool exhausted = true;
  std::uint64_t visited = 0;  // embeddings delivered to the callback
  std::uint64_t raw = 0;      // visited, re-weighted by orbit sizes under reduction
};

namespace detail {

inline void check_soft_limit(int n, const SearchOptions& opt, const char* what) {
  if (!opt.override_soft_limit && n > soft_limit()) {
    throw SizeLimitError(std::string(what) + ": order " + std::to_string(n) +
                         " exceeds soft limit " + std::to_string(soft_limit()) +
                         " (override or set TFPACK_SOFT_LIMIT)");
  }
}

// Tracks limits and distinct classes shared by both search routes.
class LeafGate {
 public:
  explicit LeafGate(const SearchConstraints& c) : c_(c) {}

  // Records an accepted leaf.
  void admit(const PackingSum& s) {
    ++accepted_;
    if (c_.class_limit) classes_.insert(canonical_form(s.sum));
  }
  bool limit_reached() const {
    if (c_.limit && accepted_ >= *c_.limit) return true;
    if (c_.class_limit && classes_.size() >= *c_.class_limit) return true;
    return false;
  }
  std::uint64_t accepted() const { return accepted_; }

 private:
  const SearchConstraints& c_;
  std::uint64_t accepted_ = 0;
  std::set<CanonicalForm> classes_;
};

}  // namespace detail

// Every permutation σ of V(g) with σ*(E) ∩ E = ∅ that satisfies the
// constraints, in lexicographic order of (σ(0), σ(1), ...). Images are
// assigned vertex by vertex; a branch dies as soon as an edge between
// assigned vertices lands on an edge of g. `visit` may return false to stop.
inline EnumerationResult enumerate_embeddings(const Graph& g, const SearchConstraints& constraints,
                                              const std::function<bool(const Embedding&)>& visit,
                                              const SearchOptions& options = {}) {
  constraints.validate();
  detail::check_soft_limit(g.order(), options, "enumerate_embeddings");
  const int n = g.order();
  EnumerationResult result;
  detail::LeafGate gate(constraints);

  // Orbit representatives for σ(0): vertices of equal-length cycles are
  // interchangeable under Aut of a 2-factor.
  std::vector<std::pair<Vertex, std::uint64_t>> first_choices;
  auto cycles = options.reduce_symmetry ? two_factor_cycles(g) : std::nullopt;
  if (cycles) {
    std::map<std::size_t, std::pair<Vertex, std::uint64_t>> by_len;
    for (const auto& c : *cycles) {
      auto [it, fresh] = by_len.try_emplace(c.size(), c.front(), 0);
      it->second.first = std::min(it->second.first, *std::min_element(c.begin(), c.end()));
      it->second.second += c.size();
    }
    for (auto& [len, rep] : by_len) first_choices.push_back(rep);
    std::sort(first_choices.begin(), first_choices.end());
  } else {
    for (Vertex v = 0; v < n; ++v) first_choices.emplace_back(v, 1);
  }

  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  bool stop = false;
  std::uint64_t weight = 1;

  std::function<void(Vertex, Mask)> assign = [&](Vertex u, Mask used) {
    if (stop) return;
    if (u == n) {
      Permutation p(image);
      auto check = check_embedding(g, p);
      if (!check.valid()) throw std::logic_error("search produced an invalid embedding");
      const PackingSum s = make_sum(g, *check.embedding);
      if (constraints.accepts(s)) {
        gate.admit(s);
        ++result.visited;
        result.raw += weight;
        if (!visit(*check.embedding)) {
          stop = true;
          result.exhausted = false;
          return;
        }
        if (gate.limit_reached()) {
          stop = true;
          result.exhausted = false;
        }
      }
      return;
    }
    Mask forbidden = 0;
    for_each_bit(g.neighbors(u) & low_bits(u),
                 [&](Vertex x) { forbidden |= g.neighbors(image[static_cast<std::size_t>(x)]); });
    const Mask candidates = g.vertex_mask() & ~used & ~forbidden;
    for_each_bit(candidates, [&](Vertex w) {
      if (stop) return;
      image[static_cast<std::size_t>(u)] = w;
      assign(u + 1, used | bit(w));
    });
    image[static_cast<std::size_t>(u)] = -1;
  };

  if (n == 0) {
    return result;
  }
  for (auto [w, orbit] : first_choices) {
    if (stop) break;
    weight = orbit;
    image[0] = w;
    assign(1, bit(w));
  }
  return result;
}

// All red 2-factors R inside the complement of the 2-factor g with the same
// cycle type, each exactly once (cycles start at their lowest vertex; the
// second vertex is below the last). Each R is the edge image of exactly
// |Aut(g)| embeddings. `visit` receives R's cycles and may return false.
inline bool enumerate_red_two_factors(const Graph& g,
                                      const std::function<bool(const std::vector<std::vector<Vertex>>&)>& visit) {
  auto black_cycles = two_factor_cycles(g);
  if (!black_cycles) throw GraphError("enumerate_red_two_factors needs a 2-factor");
  const int n = g.order();
  const Graph host = complement(g);
  std::map<int, int> remaining;
  for (const auto& c : *black_cycles) ++remaining[static_cast<int>(c.size())];

  std::vector<std::vector<Vertex>> cycles;
  std::vector<Vertex> path;
  bool stop = false;

  std::function<void(Mask)> next_cycle;

  // Extend the open path inside `free_set` until it has `len` vertices.
  std::function<void(Mask, int)> extend = [&](Mask free_set, int len) {
    if (stop) return;
    const Vertex start = path.front();
    const Vertex last = path.back();
    if (static_cast<int>(path.size()) == len) {
      if (!host.has_edge(last, start) || path[1] > last) return;
      cycles.push_back(path);
      next_cycle(free_set);
      cycles.pop_back();
      return;
    }
    for_each_bit(host.neighbors(last) & free_set, [&](Vertex w) {
      if (stop) return;
      // The second vertex must stay below a neighbour of start that is
      // still free, otherwise the closing orientation test cannot pass.
      if (path.size() == 1 && (host.neighbors(start) & free_set & ~low_bits(w + 1)) == 0) return;
      path.push_back(w);
      extend(free_set & ~bit(w), len);
      path.pop_back();
    });
  };

  next_cycle = [&](Mask free_set) {
    if (stop) return;
    if (free_set == 0) {
      if (!visit(cycles)) stop = true;
      return;
    }
    // Every free vertex still needs two free host neighbours.
    bool feasible = true;
    for_each_bit(free_set, [&](Vertex v) {
      if (std::popcount(host.neighbors(v) & free_set) < 2) feasible = false;
    });
    if (!feasible) return;
    const Vertex start = std::countr_zero(free_set);
    // The enclosing cycle's path is still live further up the stack.
    std::vector<Vertex> outer = std::move(path);
    for (auto& [len, count] : remaining) {
      if (count == 0 || len > std::popcount(free_set)) continue;
      --count;
      path.assign(1, start);
      extend(free_set & ~bit(start), len);
      ++count;
      if (stop) break;
    }
    path = std::move(outer);
  };

  if (n > 0) next_cycle(g.vertex_mask());
  return !stop;
}

struct SumClass {
  CanonicalForm form;
  Embedding representative;  // first embedding seen in this class
  std::uint64_t copies = 0;  // red copies (or raw embeddings on the permutation route)
};

struct SumClasses {
  std::vector<SumClass> classes;  // sorted by canonical form
  bool exhausted = true;
  std::uint64_t reduced = 0;                 // red 2-factors / permutations visited
  std::optional<std::uint64_t> raw;          // embeddings as permutations, when exhausted
  Route route = Route::permutations;
};

namespace detail {

inline bool use_red_route(const Graph& g, Route r) {
  if (r == Route::permutations) return false;
  const bool two_factor = two_factor_cycles(g).has_value();
  if (r == Route::red_copies && !two_factor) throw GraphError("red-copy route needs a 2-factor");
  return two_factor;
}

// Red copies of a 2-factor, turned into embeddings and sums, filtered.
inline bool for_each_red_embedding(const Graph& g, const SearchConstraints& constraints,
                                   const std::function<bool(const Embedding&, const PackingSum&)>& visit) {
  const auto black_cycles = *two_factor_cycles(g);
  return enumerate_red_two_factors(g, [&](const std::vector<std::vector<Vertex>>& red) {
    const Permutation p = cycle_matching_permutation(g.order(), black_cycles, red);
    const Embedding e = Embedding::verified(g, p);
    const PackingSum s = make_sum(g, e);
    if (!constraints.accepts(s)) return true;
    return visit(e, s);
  });
}

}  // namespace detail

struct SumClassOptions {
  std::optional<std::size_t> class_limit;
  SearchOptions search;
};

// Isomorphism classes of G ⊕ σ(G) over all embeddings σ, deduplicated by
// canonical form as they are found.
inline SumClasses sum_classes(const Graph& g, const SumClassOptions& opt = {}) {
  detail::check_soft_limit(g.order(), opt.search, "sum_classes");
  SumClasses out;
  std::map<CanonicalForm, SumClass> found;
  const bool red = detail::use_red_route(g, opt.search.route);
  out.route = red ? Route::red_copies : Route::permutations;

  auto record = [&](const Embedding& e, const Graph& sum, std::uint64_t weight) {
    ++out.reduced;
    CanonicalForm f = canonical_form(sum);
    auto it = found.find(f);
    if (it == found.end()) {
      found.emplace(f, SumClass{f, e, weight});
    } else {
      it->second.copies += weight;
    }
    return !(opt.class_limit && found.size() >= *opt.class_limit);
  };

  std::uint64_t raw = 0;
  if (red) {
    out.exhausted = detail::for_each_red_embedding(
        g, SearchConstraints{}, [&](const Embedding& e, const PackingSum& s) { return record(e, s.sum, 1); });
    raw = out.reduced * automorphism_count(*recognize_two_factor(g));
  } else {
    SearchConstraints none;
    auto r = enumerate_embeddings(
        g, none, [&](const Embedding& e) { return record(e, make_sum(g, e).sum, 1); }, opt.search);
    out.exhausted = r.exhausted;
    raw = r.raw;
  }
  if (out.exhausted) out.raw = raw;
  for (auto& [f, c] : found) out.classes.push_back(std::move(c));
  return out;
}

// First embedding (in the route's deterministic order) whose sum satisfies
// the constraints.
inline std::optional<Embedding> find_embedding(const Graph& g, const SearchConstraints& constraints,
                                               const SearchOptions& options = {}) {
  constraints.validate();
  std::optional<Embedding> hit;
  if (detail::use_red_route(g, options.route)) {
    detail::check_soft_limit(g.order(), options, "find_embedding");
    detail::for_each_red_embedding(g, constraints, [&](const Embedding& e, const PackingSum&) {
      hit = e;
      return false;
    });
  } else {
    enumerate_embeddings(
        g, constraints,
        [&](const Embedding& e) {
          hit = e;
          return false;
        },
        options);
  }
  return hit;
}

// Up to `count` embeddings from pairwise distinct sum classes satisfying the
// constraints, in discovery order.
inline std::vector<Embedding> find_distinct_embeddings(const Graph& g, const SearchConstraints& constraints,
                                                       std::size_t count, const SearchOptions& options = {}) {
  constraints.validate();
  detail::check_soft_limit(g.order(), options, "find_distinct_embeddings");
  std::vector<Embedding> out;
  std::set<CanonicalForm> seen;
  auto take = [&](const Embedding& e, const Graph& sum) {
    if (seen.insert(canonical_form(sum)).second) out.push_back(e);
    return out.size() < count;
  };
  if (detail::use_red_route(g, options.route)) {
    detail::for_each_red_embedding(g, constraints,
                                   [&](const Embedding& e, const PackingSum& s) { return take(e, s.sum); });
  } else {
    enumerate_embeddings(
        g, constraints, [&](const Embedding& e) { return take(e, make_sum(g, e).sum); }, options);
  }
  return out;
}

enum class Verdict { not_embeddable, uniquely_embeddable, multiply_embeddable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::not_embeddable: return "NotEmbeddable";
    case Verdict::uniquely_embeddable: return "UniquelyEmbeddable";
    case Verdict::multiply_embeddable: return "MultiplyEmbeddable";
  }
  return "?";
}

inline Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::not_embeddable, Verdict::uniquely_embeddable, Verdict::multiply_embeddable}) {
    if (s == to_string(v)) return v;
  }
  throw ParseError("unknown verdict '" + std::string(s) + "'");
}

struct Classification {
  Verdict verdict = Verdict::not_embeddable;
  std::vector<Embedding> witnesses;  // 0, 1, or 2 (distinct classes)
  std::size_t class_count = 0;       // exact when exhausted
  bool exhausted = true;
  std::uint64_t reduced = 0;
  std::optional<std::uint64_t> raw;
};

struct ClassifyOptions {
  // Keep enumerating after two classes are known, for exact class counts.
  bool exhaustive = false;
  SearchOptions search;
};

inline Classification classify_by_oracle(const CycleType& ct, const ClassifyOptions& opt = {}) {
  detail::check_soft_limit(ct.total(), opt.search, "classify_by_oracle");
  const Graph g = realize(ct);
  SumClassOptions sc;
  sc.search = opt.search;
  sc.search.override_soft_limit = true;
  if (!opt.exhaustive) sc.class_limit = 2;
  SumClasses classes = sum_classes(g, sc);

  Classification out;
  out.class_count = classes.classes.size();
  out.exhausted = classes.exhausted;
  out.reduced = classes.reduced;
  out.raw = classes.raw;
  // Witnesses in discovery-independent (canonical) order.
  for (std::size_t i = 0; i < classes.classes.size() && i < 2; ++i) {
    out.witnesses.push_back(classes.classes[i].representative);
  }
  if (out.class_count == 0) {
    out.verdict = Verdict::not_embeddable;
  } else if (out.class_count == 1) {
    if (!classes.exhausted) throw std::logic_error("single class reported from a truncated search");
    out.verdict = Verdict::uniquely_embeddable;
  } else {
    out.verdict = Verdict::multiply_embeddable;
  }
  return out;
}

inline Verdict classify_by_theorem(const CycleType& ct) {
  const auto& l = ct.lengths();
  using V = std::vector<int>;
  if (l == V{3} || l == V{4} || l == V{3, 3}) return Verdict::not_embeddable;
  if (l == V{5} || l == V{6} || l == V{3, 4} || l == V{3, 5} || l == V{3, 3, 3} || l == V{3, 3, 3, 3}) {
    return Verdict::uniquely_embeddable;
  }
  return Verdict::multiply_embeddable;
}

// Partitions of n into parts >= 3, each sorted ascending, in lexicographic order.
inline std::vector<CycleType> cycle_types_of_order(int n) {
  std::vector<CycleType> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int min_part) {
    if (left == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = min_part; p <= left; ++p) {
      if (left - p != 0 && left - p < p) continue;
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  if (n >= 3) rec(n, 3);
  return out;
}

inline std::vector<CycleType> cycle_types_up_to(int n_max) {
  std::vector<CycleType> out;
  for (int n = 3; n <= n_max; ++n) {
    auto part = cycle_types_of_order(n);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

struct CensusRow {
  CycleType type;
  Verdict theorem = Verdict::not_embeddable;
  Classification oracle;
  bool agreement = false;
  std::string certificate;  // separating invariant for two witnesses
  double seconds = 0.0;
};

struct CensusReport {
  int n_max = 0;
  std::vector<CensusRow> rows;  // sorted by (total, lengths)
  std::size_t disagreements = 0;
};

struct CensusOptions {
  int jobs = 1;
  bool exhaustive = false;
  bool override_soft_limit = false;
};

inline constexpr int census_default_max = 13;

inline CensusRow census_row(const CycleType& ct, const CensusOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CensusRow row;
  row.type = ct;
  row.theorem = classify_by_theorem(ct);
  ClassifyOptions co;
  co.exhaustive = opt.exhaustive;
  co.search.override_soft_limit = true;
  row.oracle = classify_by_oracle(ct, co);
  row.agreement = row.theorem == row.oracle.verdict;
  if (row.oracle.witnesses.size() >= 2) {
    const Graph g = realize(ct);
    const Graph s1 = make_sum(g, row.oracle.witnesses[0]).sum;
    const Graph s2 = make_sum(g, row.oracle.witnesses[1]).sum;
    auto c = separating_invariant(s1, s2, census_invariants);
    row.certificate = c ? c->describe() : "canonical only";
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

// Every cycle type of total order 3..n_max, classified both ways.
inline CensusReport census(int n_max, const CensusOptions& opt = {}) {
  if (n_max < 3) throw std::invalid_argument("census needs n_max >= 3");
  if (n_max > census_default_max && !opt.override_soft_limit) {
    throw SizeLimitError("census above order " + std::to_string(census_default_max) +
                         " needs an explicit override");
  }
  CensusReport report;
  report.n_max = n_max;
  const auto types = cycle_types_up_to(n_max);
  report.rows.resize(types.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&]() {
    for (std::size_t i = next++; i < types.size(); i = next++) {
      try {
        report.rows[i] = census_row(types[i], opt);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (const auto& row : report.rows) {
    if (!row.agreement) ++report.disagreements;
  }
  return report;
}

}  // namespace tfpack
