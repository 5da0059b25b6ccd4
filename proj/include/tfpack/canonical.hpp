#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tfpack/graph.hpp"

namespace tfpack {

inline constexpr int canonical_max_order = 24;

// Adjacency rows of the canonically relabeled graph. Equal iff the source
// graphs are isomorphic.
struct CanonicalForm {
  int n = 0;
  std::vector<Mask> rows;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;

  // Compact hex rendering, one row per group of 8 digits.
  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = std::to_string(n) + ":";
    for (Mask r : rows) {
      for (int shift = 28; shift >= 0; shift -= 4) s += digits[(r >> shift) & 0xF];
    }
    return s;
  }
};

namespace detail {

// Ordered partition of the vertex set. Cells are kept in a label-invariant
// order, which is what makes the leaf encodings canonical.
using Cells = std::vector<std::vector<Vertex>>;

inline Mask cell_mask(const std::vector<Vertex>& cell) {
  Mask m = 0;
  for (Vertex v : cell) m |= bit(v);
  return m;
}

// Refine to the coarsest equitable partition finer than `cells`.
inline void refine(const Graph& g, Cells& cells) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < cells.size() && !changed; ++s) {
      const Mask splitter = cell_mask(cells[s]);
      Cells next;
      next.reserve(cells.size() + 4);
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::vector<std::pair<int, Vertex>> keyed;
        keyed.reserve(cell.size());
        for (Vertex v : cell) keyed.emplace_back(std::popcount(g.neighbors(v) & splitter), v);
        std::sort(keyed.begin(), keyed.end());
        std::size_t begin = 0;
        for (std::size_t i = 1; i <= keyed.size(); ++i) {
          if (i == keyed.size() || keyed[i].first != keyed[begin].first) {
            std::vector<Vertex> part;
            for (std::size_t j = begin; j < i; ++j) part.push_back(keyed[j].second);
            next.push_back(std::move(part));
            begin = i;
          }
        }
      }
      if (next.size() != cells.size()) changed = true;
      cells = std::move(next);
    }
  }
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.order()) {}

  CanonicalForm run() {
    Cells root;
    if (n_ > 0) {
      std::vector<Vertex> all(static_cast<std::size_t>(n_));
      std::iota(all.begin(), all.end(), 0);
      // Degree ordering is the first refinement step.
      root.push_back(std::move(all));
      refine(g_, root);
    }
    std::vector<Vertex> prefix;
    descend(root, prefix);
    return CanonicalForm{n_, best_rows_};
  }

  // Permutation taking g to its canonical relabeling (vertex -> position).
  const std::vector<Vertex>& best_labeling() const { return best_label_; }

 private:
  static constexpr std::size_t max_stored_automorphisms = 256;

  void descend(Cells& cells, std::vector<Vertex>& prefix) {
    auto target = std::find_if(cells.begin(), cells.end(),
                               [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
      leaf(cells);
      return;
    }
    const std::size_t ti = static_cast<std::size_t>(target - cells.begin());
    std::vector<Vertex> members = cells[ti];
    std::sort(members.begin(), members.end());
    std::vector<Vertex> explored;
    for (Vertex w : members) {
      if (!explored.empty() && pruned(w, explored, prefix)) continue;
      explored.push_back(w);
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != ti) {
          child.push_back(cells[i]);
          continue;
        }
        child.push_back({w});
        std::vector<Vertex> rest;
        for (Vertex x : cells[i]) {
          if (x != w) rest.push_back(x);
        }
        child.push_back(std::move(rest));
      }
      refine(g_, child);
      prefix.push_back(w);
      descend(child, prefix);
      prefix.pop_back();
    }
  }

  // True when w lies in the orbit of an explored sibling under the stored
  // automorphisms that fix the prefix pointwise.
  bool pruned(Vertex w, const std::vector<Vertex>& explored,
              const std::vector<Vertex>& prefix) const {
    std::vector<Vertex> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        auto& p = parent[static_cast<std::size_t>(x)];
        p = parent[static_cast<std::size_t>(p)];
        x = p;
      }
      return x;
    };
    bool any = false;
    for (const auto& aut : automorphisms_) {
      bool fixes = true;
      for (Vertex v : prefix) {
        if (aut[static_cast<std::size_t>(v)] != v) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      any = true;
      for (Vertex v = 0; v < n_; ++v) {
        const Vertex a = find(v);
        const Vertex b = find(aut[static_cast<std::size_t>(v)]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    }
    if (!any) return false;
    const Vertex rw = find(w);
    return std::any_of(explored.begin(), explored.end(),
                       [&](Vertex e) { return find(e) == rw; });
  }

  void leaf(const Cells& cells) {
    std::vector<Vertex> label(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
      label[static_cast<std::size_t>(cells[i][0])] = static_cast<Vertex>(i);
    }
    std::vector<Mask> rows(static_cast<std::size_t>(n_), 0);
    for (Vertex u = 0; u < n_; ++u) {
      Mask r = 0;
      for_each_bit(g_.neighbors(u), [&](Vertex v) { r |= bit(label[static_cast<std::size_t>(v)]); });
      rows[static_cast<std::size_t>(label[static_cast<std::size_t>(u)])] = r;
    }
    if (first_label_.empty()) {
      first_label_ = label;
      first_rows_ = rows;
      best_label_ = label;
      best_rows_ = std::move(rows);
      return;
    }
    if (rows == first_rows_) {
      record_automorphism(first_label_, label);
    } else if (rows == best_rows_) {
      record_automorphism(best_label_, label);
    } else if (rows < best_rows_) {
      best_rows_ = std::move(rows);
      best_label_ = std::move(label);
    }
  }

  // Both labelings produce the same relabeled graph, so
  // a^{-1} ∘ b is an automorphism.
  void record_automorphism(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (automorphisms_.size() >= max_stored_automorphisms) return;
    std::vector<Vertex> inv_a(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) inv_a[static_cast<std::size_t>(a[static_cast<std::size_t>(v)])] = v;
    std::vector<Vertex> aut(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) {
      aut[static_cast<std::size_t>(v)] = inv_a[static_cast<std::size_t>(b[static_cast<std::size_t>(v)])];
    }
    automorphisms_.push_back(std::move(aut));
  }

  const Graph& g_;
  int n_;
  std::vector<Vertex> first_label_;
  std::vector<Mask> first_rows_;
  std::vector<Vertex> best_label_;
  std::vector<Mask> best_rows_;
  std::vector<std::vector<Vertex>> automorphisms_;
};

inline void check_canonical_limit(const Graph& g) {
  if (g.order() > canonical_max_order) {
    throw SizeLimitError("canonical labeling supports order <= " +
                         std::to_string(canonical_max_order) + ", got " +
                         std::to_string(g.order()));
  }
}

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
  detail::check_canonical_limit(g);
  return detail::CanonicalSearch(g).run();
}

// Canonical form plus the relabeling that produced it.
inline std::pair<CanonicalForm, Permutation> canonical_labeling(const Graph& g) {
  detail::check_canonical_limit(g);
  detail::CanonicalSearch search(g);
  CanonicalForm form = search.run();
  return {std::move(form), Permutation(search.best_labeling())};
}

inline bool are_isomorphic(const Graph& g1, const Graph& g2) {
  detail::check_canonical_limit(g1);
  detail::check_canonical_limit(g2);
  if (g1.order() != g2.order() || g1.size() != g2.size()) return false;
  if (g1.degree_sequence() != g2.degree_sequence()) return false;
  return canonical_form(g1) == canonical_form(g2);
}

}  // namespace tfpack
