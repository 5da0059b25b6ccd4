#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tfpack/embedding.hpp"
#include "tfpack/graph.hpp"

namespace tfpack::testing {

inline Graph random_graph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) b.add_edge(u, v);
    }
  }
  return b.build();
}

inline Permutation random_permutation(std::mt19937& rng, int n) {
  std::vector<Vertex> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return Permutation(std::move(p));
}

inline Graph cycle_graph(int n) { return realize(CycleType{n}); }

inline Graph path_graph(int n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return b.build();
}

inline Graph complete_graph(int n) { return complement(Graph(n)); }

inline Graph complete_bipartite(int a, int b) {
  GraphBuilder g(a + b);
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = a; v < a + b; ++v) g.add_edge(u, v);
  }
  return g.build();
}

// Every edge replaced by a path of length two through a new vertex.
inline Graph subdivide_all(const Graph& g) {
  const auto edges = g.edges();
  GraphBuilder b(g.order() + static_cast<int>(edges.size()));
  Vertex next = g.order();
  for (const Edge& e : edges) {
    b.add_edge(e.u, next);
    b.add_edge(next, e.v);
    ++next;
  }
  return b.build();
}

}  // namespace tfpack::testing
