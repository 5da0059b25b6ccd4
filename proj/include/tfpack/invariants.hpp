#pragma once

#include <array>
#include <optional>
#include <queue>
#include <vector>

#include "tfpack/graph.hpp"

namespace tfpack {

// Some 4-set inducing K4, lexicographically first.
inline std::optional<std::array<Vertex, 4>> contains_k4(const Graph& g) {
  const int n = g.order();
  for (Vertex a = 0; a < n; ++a) {
    const Mask na = g.neighbors(a) & ~low_bits(a + 1);
    std::optional<std::array<Vertex, 4>> found;
    for_each_bit(na, [&](Vertex b) {
      if (found) return;
      const Mask nab = na & g.neighbors(b) & ~low_bits(b + 1);
      for_each_bit(nab, [&](Vertex c) {
        if (found) return;
        const Mask nabc = nab & g.neighbors(c) & ~low_bits(c + 1);
        if (nabc != 0) found = std::array<Vertex, 4>{a, b, c, std::countr_zero(nabc)};
      });
    });
    if (found) return found;
  }
  return std::nullopt;
}

struct BipartiteResult {
  bool bipartite = false;
  std::vector<int> coloring;    // 0/1 per vertex when bipartite
  std::vector<Vertex> odd_cycle;  // closed walk v0 v1 ... v_{k-1} (k odd) otherwise
};

inline BipartiteResult is_bipartite(const Graph& g) {
  const int n = g.order();
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  for (Vertex s = 0; s < n; ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      const auto vi = static_cast<std::size_t>(v);
      std::optional<Vertex> clash;
      for_each_bit(g.neighbors(v), [&](Vertex w) {
        const auto wi = static_cast<std::size_t>(w);
        if (color[wi] < 0) {
          color[wi] = 1 - color[vi];
          parent[wi] = v;
          depth[wi] = depth[vi] + 1;
          q.push(w);
        } else if (color[wi] == color[vi] && !clash) {
          clash = w;
        }
      });
      if (clash) {
        // Walk both endpoints up the BFS tree to their common ancestor.
        Vertex a = v;
        Vertex b = *clash;
        std::vector<Vertex> left{a};
        std::vector<Vertex> right{b};
        while (a != b) {
          if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
            a = parent[static_cast<std::size_t>(a)];
            left.push_back(a);
          } else {
            b = parent[static_cast<std::size_t>(b)];
            right.push_back(b);
          }
        }
        right.pop_back();  // common ancestor already in `left`
        BipartiteResult out;
        out.odd_cycle = std::move(left);
        out.odd_cycle.insert(out.odd_cycle.end(), right.rbegin(), right.rend());
        return out;
      }
    }
  }
  return BipartiteResult{true, std::move(color), {}};
}

// A vertex whose open neighbourhood induces a path on four vertices.
inline std::optional<Vertex> has_p4_neighborhood_vertex(const Graph& g) {
  for (Vertex v = 0; v < g.order(); ++v) {
    const Mask nb = g.neighbors(v);
    if (std::popcount(nb) != 4) continue;
    int edges = 0;
    int leaves = 0;
    bool bad = false;
    for_each_bit(nb, [&](Vertex w) {
      const int d = std::popcount(g.neighbors(w) & nb);
      edges += d;
      if (d == 1) ++leaves;
      if (d == 0 || d > 2) bad = true;
    });
    // Four vertices, three edges, degrees 1-2-2-1, no isolated vertex: P4
    // (a triangle plus an isolated vertex is excluded by d == 0).
    if (!bad && edges == 6 && leaves == 2) return v;
  }
  return std::nullopt;
}

inline constexpr int triangle_subset_max_order = 18;

struct TriangleSubsetResult {
  int best_count = 0;
  std::vector<Vertex> witness;  // lexicographically first optimal subset
};

// Maximum number of triangles induced by a vertex subset of the given size.
inline TriangleSubsetResult max_triangle_subset(const Graph& g, int subset_size) {
  const int n = g.order();
  if (n > triangle_subset_max_order) {
    throw SizeLimitError("max_triangle_subset supports order <= " +
                         std::to_string(triangle_subset_max_order));
  }
  if (subset_size < 0 || subset_size > n) {
    throw SizeLimitError("subset size " + std::to_string(subset_size) + " outside [0, " +
                         std::to_string(n) + "]");
  }
  std::vector<Mask> triangles;
  for (const Edge& e : g.edges()) {
    for_each_bit(g.neighbors(e.u) & g.neighbors(e.v) & ~low_bits(e.v + 1),
                 [&](Vertex w) { triangles.push_back(bit(e.u) | bit(e.v) | bit(w)); });
  }
  TriangleSubsetResult out;
  out.best_count = -1;
  std::vector<Vertex> pick(static_cast<std::size_t>(subset_size));
  std::function<void(int, Vertex, Mask)> rec = [&](int depth, Vertex from, Mask chosen) {
    if (depth == subset_size) {
      int count = 0;
      for (Mask t : triangles) count += (t & chosen) == t ? 1 : 0;
      if (count > out.best_count) {
        out.best_count = count;
        out.witness = pick;
      }
      return;
    }
    for (Vertex v = from; v <= n - (subset_size - depth); ++v) {
      pick[static_cast<std::size_t>(depth)] = v;
      rec(depth + 1, v + 1, chosen | bit(v));
    }
  };
  rec(0, 0, 0);
  return out;
}

inline bool has_cut_vertex(const Graph& g) { return !analyze_connectivity(g).cut_vertices.empty(); }

}  // namespace tfpack
