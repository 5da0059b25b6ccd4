#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfpack/embedding.hpp"

namespace tfpack {

// Edge roles of a ladder rewrite on a base packing. The black edges pc-qc
// and pd-qd lie on the growing black cycle; r-s is a red edge on a red cycle
// of the same length.
struct LadderRoles {
  Vertex r = 0;
  Vertex s = 0;
  Vertex pc = 0;
  Vertex qc = 0;
  Vertex pd = 0;
  Vertex qd = 0;

  friend bool operator==(const LadderRoles&, const LadderRoles&) = default;
};

struct Extended {
  CycleType type;
  Embedding embedding;
};

namespace detail {

inline const std::vector<Vertex>* cycle_containing(const std::vector<std::vector<Vertex>>& cycles, Vertex v) {
  for (const auto& c : cycles) {
    if (std::find(c.begin(), c.end(), v) != c.end()) return &c;
  }
  return nullptr;
}

}  // namespace detail

// Subdivide pc-qc into pc c1..cl qc and pd-qd into pd d1..dl qd, and replace
// the red edge r-s by the red path r c1 d1 c2 d2 .. cl dl s. The designated
// cycle grows by 2l in both colours. The result is relabelled onto the
// realized layout of the longer type and re-checked. On failure returns
// nullopt and, when `why` is given, the reason.
inline std::optional<Extended> try_ladder(const CycleType& base, const Embedding& e, int designated_length,
                                          const LadderRoles& ro, int l, std::string* why = nullptr) {
  auto fail = [&](std::string msg) -> std::optional<Extended> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  if (l < 1) return fail("ladder needs l >= 1");
  const int n = base.total();
  const int m = n + 2 * l;
  if (m > max_order) return fail("extended order exceeds " + std::to_string(max_order));
  if (e.order() != n) return fail("embedding order does not match the base type");
  for (Vertex v : {ro.r, ro.s, ro.pc, ro.qc, ro.pd, ro.qd}) {
    if (v < 0 || v >= n) return fail("role vertex out of range");
  }

  const Graph black = realize(base);
  const Graph red = apply_permutation(black, e.perm());
  const auto black_cycles = *two_factor_cycles(black);
  const auto red_cycles = *two_factor_cycles(red);

  if (!black.has_edge(ro.pc, ro.qc) || !black.has_edge(ro.pd, ro.qd)) return fail("roles pc-qc / pd-qd must be black");
  if (Edge(ro.pc, ro.qc) == Edge(ro.pd, ro.qd)) return fail("the two black edges must differ");
  const auto* grow = detail::cycle_containing(black_cycles, ro.pc);
  if (static_cast<int>(grow->size()) != designated_length) return fail("black edges are not on the designated cycle");
  if (detail::cycle_containing(black_cycles, ro.pd) != grow) return fail("black edges lie on different cycles");
  if (!red.has_edge(ro.r, ro.s)) return fail("role r-s must be red");
  if (static_cast<int>(detail::cycle_containing(red_cycles, ro.r)->size()) != designated_length) {
    return fail("red edge is not on a cycle of the designated length");
  }

  auto c = [&](int i) { return n + i - 1; };      // c1..cl
  auto d = [&](int i) { return n + l + i - 1; };  // d1..dl

  GraphBuilder nb(m);
  for (const Edge& x : black.edges()) {
    if (x != Edge(ro.pc, ro.qc) && x != Edge(ro.pd, ro.qd)) nb.add_edge(x);
  }
  std::vector<Vertex> pc_path{ro.pc};
  std::vector<Vertex> pd_path{ro.pd};
  for (int i = 1; i <= l; ++i) {
    pc_path.push_back(c(i));
    pd_path.push_back(d(i));
  }
  pc_path.push_back(ro.qc);
  pd_path.push_back(ro.qd);
  for (const auto* p : {&pc_path, &pd_path}) {
    for (std::size_t i = 0; i + 1 < p->size(); ++i) nb.add_edge((*p)[i], (*p)[i + 1]);
  }

  GraphBuilder nr(m);
  for (const Edge& x : red.edges()) {
    if (x != Edge(ro.r, ro.s)) nr.add_edge(x);
  }
  std::vector<Vertex> rung{ro.r};
  for (int i = 1; i <= l; ++i) {
    rung.push_back(c(i));
    rung.push_back(d(i));
  }
  rung.push_back(ro.s);
  for (std::size_t i = 0; i + 1 < rung.size(); ++i) nr.add_edge(rung[i], rung[i + 1]);
  const Graph b2 = nb.build();
  const Graph r2 = nr.build();

  std::vector<int> lengths = base.lengths();
  *std::find(lengths.begin(), lengths.end(), designated_length) += 2 * l;
  const CycleType grown(lengths);

  // Relabel so the black copy is exactly realize(grown).
  const auto new_cycles = *two_factor_cycles(b2);
  std::vector<Vertex> to(static_cast<std::size_t>(m), -1);
  std::vector<bool> used(new_cycles.size(), false);
  for (const auto& block : realized_cycles(grown)) {
    for (std::size_t j = 0; j < new_cycles.size(); ++j) {
      if (used[j] || new_cycles[j].size() != block.size()) continue;
      used[j] = true;
      for (std::size_t i = 0; i < block.size(); ++i) to[static_cast<std::size_t>(new_cycles[j][i])] = block[i];
      break;
    }
  }
  const Permutation relabel(to);
  const Graph r3 = apply_permutation(r2, relabel);
  const auto rc = two_factor_cycles(r3);
  if (!rc || recognize_two_factor(r3) != grown) return fail("red copy is no longer of the grown type");
  const Graph g2 = realize(grown);
  auto check = check_embedding(g2, cycle_matching_permutation(m, realized_cycles(grown), *rc));
  if (!check.valid()) {
    return fail("red edge " + to_string(check.violations.front().image) + " lands on a black edge");
  }
  return Extended{grown, *check.embedding};
}

inline Extended ladder_extend(const CycleType& base, const Embedding& e, int designated_length,
                              const LadderRoles& roles, int l) {
  std::string why;
  auto out = try_ladder(base, e, designated_length, roles, l, &why);
  if (!out) throw ConstructionError("ladder_extend: " + why);
  return std::move(*out);
}

}  // namespace tfpack
