#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tfpack/canonical.hpp"
#include "tfpack/graph.hpp"

namespace tfpack {

// Multiset of cycle lengths (each >= 3), kept sorted ascending. Names a
// 2-factor up to isomorphism.
class CycleType {
 public:
  CycleType() = default;

  explicit CycleType(std::vector<int> lengths) : lengths_(std::move(lengths)) {
    for (int len : lengths_) {
      if (len < 3) {
        throw ParseError("cycle length " + std::to_string(len) + " < 3");
      }
    }
    std::sort(lengths_.begin(), lengths_.end());
    for (int len : lengths_) total_ += len;
  }
  CycleType(std::initializer_list<int> lengths) : CycleType(std::vector<int>(lengths)) {}

  const std::vector<int>& lengths() const { return lengths_; }
  int total() const { return total_; }
  int cycle_count() const { return static_cast<int>(lengths_.size()); }
  bool empty() const { return lengths_.empty(); }

  // Canonical rendering, e.g. "C3+C3+C7".
  std::string render() const {
    std::string s;
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
      if (i > 0) s += '+';
      s += 'C' + std::to_string(lengths_[i]);
    }
    return s;
  }

  // First vertex of each cycle block in the realized layout.
  std::vector<Vertex> block_offsets() const {
    std::vector<Vertex> out;
    Vertex at = 0;
    for (int len : lengths_) {
      out.push_back(at);
      at += len;
    }
    return out;
  }

  friend auto operator<=>(const CycleType& a, const CycleType& b) {
    if (auto c = a.total_ <=> b.total_; c != 0) return c;
    return a.lengths_ <=> b.lengths_;
  }
  friend bool operator==(const CycleType& a, const CycleType& b) {
    return a.lengths_ == b.lengths_;
  }

 private:
  std::vector<int> lengths_;
  int total_ = 0;
};

// Grammar: term ('+' term)*, term = 'C' digits | digits; whitespace ignored.
inline CycleType parse_cycle_type(std::string_view text) {
  std::vector<int> lengths;
  std::string term;
  auto flush = [&]() {
    if (term.empty()) throw ParseError("empty term in cycle type '" + std::string(text) + "'");
    std::string_view t = term;
    if (t.front() == 'C' || t.front() == 'c') t.remove_prefix(1);
    if (t.empty() || t.size() > 3 ||
        !std::all_of(t.begin(), t.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
      throw ParseError("malformed term '" + term + "' in cycle type '" + std::string(text) + "'");
    }
    const int len = std::stoi(std::string(t));
    if (len < 3) {
      throw ParseError("cycle length " + std::to_string(len) + " < 3 in '" + std::string(text) + "'");
    }
    lengths.push_back(len);
    term.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) != 0) continue;
    if (ch == '+') {
      flush();
    } else {
      term += ch;
    }
  }
  flush();
  return CycleType(std::move(lengths));
}

inline std::string render(const CycleType& ct) { return ct.render(); }

// Cycle i occupies a consecutive vertex block, in cycle order.
inline Graph realize(const CycleType& ct) {
  GraphBuilder b(ct.total());
  Vertex start = 0;
  for (int len : ct.lengths()) {
    for (int i = 0; i < len; ++i) b.add_edge(start + i, start + (i + 1) % len);
    start += len;
  }
  return b.build();
}

// Cycles of a 2-regular graph, each starting at its lowest vertex and
// continuing to the smaller of its two neighbours; cycles ordered by lowest
// vertex. nullopt when g is not 2-regular.
inline std::optional<std::vector<std::vector<Vertex>>> two_factor_cycles(const Graph& g) {
  if (g.order() == 0 || !is_regular(g, 2)) return std::nullopt;
  std::vector<std::vector<Vertex>> cycles;
  Mask left = g.vertex_mask();
  while (left != 0) {
    const Vertex start = std::countr_zero(left);
    std::vector<Vertex> cyc{start};
    Vertex prev = start;
    Vertex cur = std::countr_zero(g.neighbors(start));
    while (cur != start) {
      cyc.push_back(cur);
      const Mask next = g.neighbors(cur) & ~bit(prev);
      prev = cur;
      cur = std::countr_zero(next);
    }
    for (Vertex v : cyc) left &= ~bit(v);
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

inline std::optional<CycleType> recognize_two_factor(const Graph& g) {
  auto cycles = two_factor_cycles(g);
  if (!cycles) return std::nullopt;
  std::vector<int> lengths;
  for (const auto& c : *cycles) lengths.push_back(static_cast<int>(c.size()));
  return CycleType(std::move(lengths));
}

// |Aut| of the 2-factor: each C_L contributes 2L, equal-length cycles permute.
inline std::uint64_t automorphism_count(const CycleType& ct) {
  std::uint64_t out = 1;
  std::map<int, int> mult;
  for (int len : ct.lengths()) {
    out *= static_cast<std::uint64_t>(2 * len);
    ++mult[len];
  }
  for (auto [len, k] : mult) {
    for (int i = 2; i <= k; ++i) out *= static_cast<std::uint64_t>(i);
  }
  return out;
}

// An edge of g whose image under the permutation is again an edge of g.
struct Violation {
  Edge black;
  Edge image;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

class Embedding;
struct EmbeddingCheck;
EmbeddingCheck check_embedding(const Graph& g, const Permutation& p);

// A permutation whose edge image is disjoint from the graph's edge set.
// Only obtainable through check_embedding, so every value is valid for the
// graph it was checked against.
class Embedding {
 public:
  const Permutation& perm() const { return perm_; }
  int order() const { return perm_.size(); }

  // Throws ConstructionError when p is not an embedding of g.
  static Embedding verified(const Graph& g, const Permutation& p);

  friend auto operator<=>(const Embedding&, const Embedding&) = default;

 private:
  friend EmbeddingCheck check_embedding(const Graph& g, const Permutation& p);
  explicit Embedding(Permutation p) : perm_(std::move(p)) {}

  Permutation perm_;
};

struct EmbeddingCheck {
  std::optional<Embedding> embedding;
  std::vector<Violation> violations;  // every clash, in edge order

  bool valid() const { return embedding.has_value(); }
};

inline EmbeddingCheck check_embedding(const Graph& g, const Permutation& p) {
  if (p.size() != g.order()) {
    throw GraphError("permutation of length " + std::to_string(p.size()) +
                     " checked against graph of order " + std::to_string(g.order()));
  }
  EmbeddingCheck out;
  for (const Edge& e : g.edges()) {
    const Edge img(p(e.u), p(e.v));
    if (g.has_edge(img.u, img.v)) out.violations.push_back({e, img});
  }
  if (out.violations.empty()) out.embedding = Embedding(p);
  return out;
}

inline Embedding Embedding::verified(const Graph& g, const Permutation& p) {
  auto check = check_embedding(g, p);
  if (!check.valid()) {
    const auto& v = check.violations.front();
    throw ConstructionError("permutation is not an embedding: edge " + to_string(v.black) +
                            " maps onto edge " + to_string(v.image) + " (" +
                            std::to_string(check.violations.size()) + " clashes)");
  }
  return *std::move(check.embedding);
}

// G ⊕ σ(G), keeping the black and red edge sets apart.
struct PackingSum {
  Graph black;
  Graph red;
  Graph sum;
};

inline PackingSum make_sum(const Graph& g, const Embedding& e) {
  Graph red = apply_permutation(g, e.perm());
  Graph sum = edge_sum(g, red);
  return PackingSum{g, std::move(red), std::move(sum)};
}

inline bool are_distinct(const Graph& g, const Embedding& e1, const Embedding& e2) {
  return canonical_form(make_sum(g, e1).sum) != canonical_form(make_sum(g, e2).sum);
}

// Permutation sending black cycle j (in the given traversal order) onto a red
// cycle of the same length, position by position. Cycles are matched by
// length, in listed order. Used to turn a red 2-factor back into a σ.
inline Permutation cycle_matching_permutation(int n, const std::vector<std::vector<Vertex>>& black_cycles,
                                              const std::vector<std::vector<Vertex>>& red_cycles) {
  std::vector<Vertex> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(red_cycles.size(), false);
  for (const auto& bc : black_cycles) {
    std::size_t match = red_cycles.size();
    for (std::size_t j = 0; j < red_cycles.size(); ++j) {
      if (!used[j] && red_cycles[j].size() == bc.size()) {
        match = j;
        break;
      }
    }
    if (match == red_cycles.size()) throw ConstructionError("red cycle type differs from black");
    used[match] = true;
    for (std::size_t i = 0; i < bc.size(); ++i) {
      image[static_cast<std::size_t>(bc[i])] = red_cycles[match][i];
    }
  }
  return Permutation(std::move(image));
}

// Cycles of realize(ct) in block order.
inline std::vector<std::vector<Vertex>> realized_cycles(const CycleType& ct) {
  std::vector<std::vector<Vertex>> out;
  Vertex at = 0;
  for (int len : ct.lengths()) {
    std::vector<Vertex> c(static_cast<std::size_t>(len));
    std::iota(c.begin(), c.end(), at);
    out.push_back(std::move(c));
    at += len;
  }
  return out;
}

}  // namespace tfpack
