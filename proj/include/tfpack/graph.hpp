#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tfpack/errors.hpp"

namespace tfpack {

using Vertex = int;
using Mask = std::uint32_t;

// Adjacency rows are single machine words.
inline constexpr int max_order = 32;

inline constexpr Mask bit(Vertex v) { return Mask{1} << v; }

inline constexpr Mask low_bits(int n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Calls f(v) for every set bit of m in ascending order.
template <typename F>
inline void for_each_bit(Mask m, F&& f) {
  while (m != 0) {
    const int v = std::countr_zero(m);
    m &= m - 1;
    f(v);
  }
}

// Unordered pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::string to_string(Edge e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

class GraphBuilder;

// Small simple undirected graph on vertices 0..n-1. Immutable once built;
// use GraphBuilder or the free functions below to derive new graphs.
class Graph {
 public:
  Graph() = default;

  // Edgeless graph of order n.
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > max_order) {
      throw GraphError("graph order " + std::to_string(n) + " outside [0, " +
                       std::to_string(max_order) + "]");
    }
  }

  int order() const { return n_; }
  int size() const { return m_; }

  bool has_edge(Vertex a, Vertex b) const {
    return a != b && (adj_[static_cast<std::size_t>(a)] & bit(b)) != 0;
  }
  Mask neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(Vertex v) const { return std::popcount(neighbors(v)); }
  Mask vertex_mask() const { return low_bits(n_); }
  std::span<const Mask> rows() const { return adj_; }

  // All edges in ascending (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < n_; ++u) {
      for_each_bit(neighbors(u) & ~low_bits(u + 1),
                   [&](Vertex v) { out.emplace_back(u, v); });
    }
    return out;
  }

  std::vector<int> degree_sequence() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
    std::sort(d.begin(), d.end());
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  friend class GraphBuilder;

  int n_ = 0;
  int m_ = 0;
  std::vector<Mask> adj_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : g_(n) {}
  explicit GraphBuilder(const Graph& g) : g_(g) {}

  int order() const { return g_.n_; }
  bool has_edge(Vertex a, Vertex b) const {
    check(a);
    check(b);
    return g_.has_edge(a, b);
  }

  // Throws on loops, out-of-range endpoints and duplicates.
  GraphBuilder& add_edge(Vertex a, Vertex b) {
    check(a);
    check(b);
    if (a == b) throw GraphError("loop edge at vertex " + std::to_string(a));
    if (g_.has_edge(a, b)) throw GraphError("duplicate edge " + to_string(Edge(a, b)));
    link(a, b);
    return *this;
  }
  GraphBuilder& add_edge(Edge e) { return add_edge(e.u, e.v); }

  GraphBuilder& remove_edge(Vertex a, Vertex b) {
    check(a);
    check(b);
    if (!g_.has_edge(a, b)) throw GraphError("missing edge " + to_string(Edge(a, b)));
    g_.adj_[static_cast<std::size_t>(a)] &= ~bit(b);
    g_.adj_[static_cast<std::size_t>(b)] &= ~bit(a);
    --g_.m_;
    return *this;
  }
  GraphBuilder& remove_edge(Edge e) { return remove_edge(e.u, e.v); }

  Graph build() const { return g_; }

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= g_.n_) {
      throw GraphError("endpoint " + std::to_string(v) + " out of range for order " +
                       std::to_string(g_.n_));
    }
  }
  void link(Vertex a, Vertex b) {
    g_.adj_[static_cast<std::size_t>(a)] |= bit(b);
    g_.adj_[static_cast<std::size_t>(b)] |= bit(a);
    ++g_.m_;
  }

  Graph g_;
};

inline Graph build_graph(int n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  for (const Edge& e : edges) b.add_edge(e.u, e.v);
  return b.build();
}

inline Graph build_graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return b.build();
}

// Bijection on 0..n-1; image[i] is where vertex i goes.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    std::vector<bool> seen(image_.size(), false);
    for (Vertex x : image_) {
      if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)]) {
        throw GraphError("not a permutation of 0.." + std::to_string(n - 1));
      }
      seen[static_cast<std::size_t>(x)] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<Vertex> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return Permutation(std::move(p));
  }

  int size() const { return static_cast<int>(image_.size()); }
  Vertex operator()(Vertex v) const { return image_[static_cast<std::size_t>(v)]; }
  std::span<const Vertex> images() const { return image_; }
  const std::vector<Vertex>& vector() const { return image_; }

  Permutation inverse() const {
    std::vector<Vertex> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
      inv[static_cast<std::size_t>(image_[i])] = static_cast<Vertex>(i);
    }
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != static_cast<Vertex>(i)) return false;
    }
    return true;
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> image_;
};

// (outer ∘ inner)(v) = outer(inner(v)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw GraphError("permutation length mismatch");
  std::vector<Vertex> p(static_cast<std::size_t>(inner.size()));
  for (Vertex v = 0; v < inner.size(); ++v) p[static_cast<std::size_t>(v)] = outer(inner(v));
  return Permutation(std::move(p));
}

inline Graph complement(const Graph& g) {
  const int n = g.order();
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) b.add_edge(u, v);
    }
  }
  return b.build();
}

// Union of two edge-disjoint graphs on the same vertex set.
inline Graph edge_sum(const Graph& g1, const Graph& g2) {
  if (g1.order() != g2.order()) {
    throw GraphError("edge sum of graphs with orders " + std::to_string(g1.order()) +
                     " and " + std::to_string(g2.order()));
  }
  GraphBuilder b(g1);
  for (const Edge& e : g2.edges()) {
    if (g1.has_edge(e.u, e.v)) throw GraphError("overlapping edge " + to_string(e));
    b.add_edge(e);
  }
  return b.build();
}

// g2's vertices are shifted by g1.order().
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
  const int shift = g1.order();
  GraphBuilder b(g1.order() + g2.order());
  for (const Edge& e : g1.edges()) b.add_edge(e);
  for (const Edge& e : g2.edges()) b.add_edge(e.u + shift, e.v + shift);
  return b.build();
}

inline Graph apply_permutation(const Graph& g, const Permutation& p) {
  if (p.size() != g.order()) {
    throw GraphError("permutation of length " + std::to_string(p.size()) +
                     " applied to graph of order " + std::to_string(g.order()));
  }
  GraphBuilder b(g.order());
  for (const Edge& e : g.edges()) b.add_edge(p(e.u), p(e.v));
  return b.build();
}

// Subgraph induced by `keep`, relabeled 0..k-1 in the order given.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  const int k = static_cast<int>(keep.size());
  GraphBuilder b(k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g.has_edge(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)])) {
        b.add_edge(i, j);
      }
    }
  }
  return b.build();
}

inline bool is_regular(const Graph& g, int d) {
  for (Vertex v = 0; v < g.order(); ++v) {
    if (g.degree(v) != d) return false;
  }
  return true;
}

// Vertices reachable from `start` inside `allowed`.
inline Mask reach(const Graph& g, Vertex start, Mask allowed) {
  Mask seen = bit(start) & allowed;
  Mask frontier = seen;
  while (frontier != 0) {
    Mask next = 0;
    for_each_bit(frontier, [&](Vertex v) { next |= g.neighbors(v); });
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

// Connected components of the subgraph induced by `allowed`, as masks ordered
// by their lowest vertex.
inline std::vector<Mask> component_masks(const Graph& g, Mask allowed) {
  std::vector<Mask> out;
  Mask left = allowed;
  while (left != 0) {
    const Mask c = reach(g, std::countr_zero(left), allowed);
    out.push_back(c);
    left &= ~c;
  }
  return out;
}

inline int component_count(const Graph& g) {
  return static_cast<int>(component_masks(g, g.vertex_mask()).size());
}

inline bool is_connected(const Graph& g) { return component_count(g) <= 1; }

struct Connectivity {
  std::vector<std::vector<Vertex>> components;  // sorted, ordered by lowest vertex
  std::vector<Vertex> cut_vertices;             // ascending
};

inline Connectivity analyze_connectivity(const Graph& g) {
  const int n = g.order();
  Connectivity out;
  for (Mask c : component_masks(g, g.vertex_mask())) {
    std::vector<Vertex> comp;
    for_each_bit(c, [&](Vertex v) { comp.push_back(v); });
    out.components.push_back(std::move(comp));
  }

  // Tarjan low-link articulation points.
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> cut(static_cast<std::size_t>(n), false);
  int timer = 0;
  std::function<void(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    const auto vi = static_cast<std::size_t>(v);
    disc[vi] = low[vi] = timer++;
    int children = 0;
    for_each_bit(g.neighbors(v), [&](Vertex w) {
      const auto wi = static_cast<std::size_t>(w);
      if (disc[wi] < 0) {
        ++children;
        dfs(w, v);
        low[vi] = std::min(low[vi], low[wi]);
        if (parent >= 0 && low[wi] >= disc[vi]) cut[vi] = true;
      } else if (w != parent) {
        low[vi] = std::min(low[vi], disc[wi]);
      }
    });
    if (parent < 0 && children > 1) cut[vi] = true;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (disc[static_cast<std::size_t>(v)] < 0) dfs(v, -1);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (cut[static_cast<std::size_t>(v)]) out.cut_vertices.push_back(v);
  }
  return out;
}

}  // namespace tfpack
