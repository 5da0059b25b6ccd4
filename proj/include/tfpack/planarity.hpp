#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "tfpack/graph.hpp"

namespace tfpack {

inline constexpr int planarity_max_order = 24;

enum class KuratowskiKind { k5, k33 };

inline const char* to_string(KuratowskiKind k) { return k == KuratowskiKind::k5 ? "K5" : "K3,3"; }

// Subdivision of K5 or K3,3 inside a graph. For K3,3 the first three branch
// vertices form one side. Each path runs branch-to-branch and lists every
// vertex it visits, endpoints included.
struct KuratowskiWitness {
  KuratowskiKind kind = KuratowskiKind::k5;
  std::vector<Vertex> branch;
  std::vector<std::vector<Vertex>> paths;
};

struct PlanarityResult {
  bool planar = true;
  std::optional<KuratowskiWitness> witness;
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

inline bool boyer_myrvold_planar(int n, const std::vector<Edge>& edges) {
  BoostGraph bg(static_cast<std::size_t>(n));
  for (const Edge& e : edges) boost::add_edge(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v), bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

// Every non-planar graph contains a Kuratowski subdivision, which has
// cyclomatic number 4 (K3,3) or 6 (K5). Lower totals are planar.
inline bool trivially_planar(const Graph& g) {
  if (g.size() < 9) return true;
  const int cyclomatic = g.size() - g.order() + component_count(g);
  return cyclomatic <= 3;
}

inline bool euler_rejects(const Graph& g) { return g.order() >= 3 && g.size() > 3 * g.order() - 6; }

inline void check_planarity_limit(const Graph& g) {
  if (g.order() > planarity_max_order) {
    throw SizeLimitError("planarity supports order <= " + std::to_string(planarity_max_order));
  }
}

// Reduce a non-planar edge set to a minimal non-planar one and read off the
// subdivided K5 / K3,3.
inline KuratowskiWitness extract_witness(const Graph& g) {
  const int n = g.order();
  std::vector<Edge> kept = g.edges();
  for (std::size_t i = kept.size(); i-- > 0;) {
    std::vector<Edge> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!boyer_myrvold_planar(n, trial)) kept = std::move(trial);
  }
  GraphBuilder b(n);
  for (const Edge& e : kept) b.add_edge(e);
  const Graph h = b.build();

  KuratowskiWitness w;
  std::vector<bool> is_branch(static_cast<std::size_t>(n), false);
  for (Vertex v = 0; v < n; ++v) {
    if (h.degree(v) >= 3) {
      w.branch.push_back(v);
      is_branch[static_cast<std::size_t>(v)] = true;
    }
  }
  if (w.branch.size() == 5) {
    w.kind = KuratowskiKind::k5;
  } else if (w.branch.size() == 6) {
    w.kind = KuratowskiKind::k33;
  } else {
    throw std::logic_error("minimal non-planar subgraph has " + std::to_string(w.branch.size()) +
                           " branch vertices");
  }

  // Trace each branch-to-branch path once (from its lower endpoint).
  std::vector<std::vector<bool>> joined(w.branch.size(), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (Vertex s : w.branch) {
    for_each_bit(h.neighbors(s), [&](Vertex first) {
      std::vector<Vertex> path{s, first};
      Vertex prev = s;
      Vertex cur = first;
      while (!is_branch[static_cast<std::size_t>(cur)]) {
        const Vertex next = std::countr_zero(h.neighbors(cur) & ~bit(prev));
        prev = cur;
        cur = next;
        path.push_back(cur);
      }
      if (s < cur) w.paths.push_back(std::move(path));
    });
  }

  if (w.kind == KuratowskiKind::k33) {
    // Side containing the lowest branch vertex first.
    std::vector<Vertex> side_a{w.branch[0]};
    std::vector<Vertex> side_b;
    for (const auto& p : w.paths) {
      if (p.front() == w.branch[0]) side_b.push_back(p.back());
      if (p.back() == w.branch[0]) side_b.push_back(p.front());
    }
    for (Vertex v : w.branch) {
      if (v != w.branch[0] && std::find(side_b.begin(), side_b.end(), v) == side_b.end()) {
        side_a.push_back(v);
      }
    }
    std::sort(side_b.begin(), side_b.end());
    w.branch = side_a;
    w.branch.insert(w.branch.end(), side_b.begin(), side_b.end());
  }
  return w;
}

}  // namespace detail

// Decision only; no witness extraction.
inline bool planar(const Graph& g) {
  detail::check_planarity_limit(g);
  if (detail::trivially_planar(g)) return true;
  if (detail::euler_rejects(g)) return false;
  return detail::boyer_myrvold_planar(g.order(), g.edges());
}

inline PlanarityResult is_planar(const Graph& g) {
  if (planar(g)) return PlanarityResult{true, std::nullopt};
  return PlanarityResult{false, detail::extract_witness(g)};
}

// Independent structural check of a witness against g.
inline bool verify_kuratowski(const Graph& g, const KuratowskiWitness& w) {
  const std::size_t need_branch = w.kind == KuratowskiKind::k5 ? 5 : 6;
  const std::size_t need_paths = w.kind == KuratowskiKind::k5 ? 10 : 9;
  if (w.branch.size() != need_branch || w.paths.size() != need_paths) return false;
  Mask branch = 0;
  for (Vertex v : w.branch) {
    if (v < 0 || v >= g.order() || (branch & bit(v)) != 0) return false;
    branch |= bit(v);
  }
  Mask interior = 0;
  std::vector<std::pair<Vertex, Vertex>> ends;
  for (const auto& p : w.paths) {
    if (p.size() < 2) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g.has_edge(p[i], p[i + 1])) return false;
    }
    if ((branch & bit(p.front())) == 0 || (branch & bit(p.back())) == 0) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      if ((branch & bit(p[i])) != 0 || (interior & bit(p[i])) != 0) return false;
      interior |= bit(p[i]);
    }
    ends.emplace_back(std::min(p.front(), p.back()), std::max(p.front(), p.back()));
  }
  std::vector<std::pair<Vertex, Vertex>> want;
  if (w.kind == KuratowskiKind::k5) {
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        want.emplace_back(std::min(w.branch[i], w.branch[j]), std::max(w.branch[i], w.branch[j]));
      }
    }
  } else {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 3; j < 6; ++j) {
        want.emplace_back(std::min(w.branch[i], w.branch[j]), std::max(w.branch[i], w.branch[j]));
      }
    }
  }
  std::sort(ends.begin(), ends.end());
  std::sort(want.begin(), want.end());
  return ends == want;
}

}  // namespace tfpack
