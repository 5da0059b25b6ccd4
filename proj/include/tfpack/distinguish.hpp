#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "tfpack/canonical.hpp"
#include "tfpack/graph.hpp"
#include "tfpack/invariants.hpp"
#include "tfpack/planarity.hpp"

namespace tfpack {

// Boolean isomorphism invariants used to tell packing sums apart.
enum class Invariant { k4, bipartite, planar, connected, cut_vertex, p4_neighborhood };

inline constexpr std::array<Invariant, 6> all_invariants = {
    Invariant::k4,        Invariant::bipartite,  Invariant::planar,
    Invariant::connected, Invariant::cut_vertex, Invariant::p4_neighborhood};

// The distinguishers the census reports, in priority order.
inline constexpr std::array<Invariant, 5> census_invariants = {
    Invariant::k4, Invariant::bipartite, Invariant::planar, Invariant::cut_vertex,
    Invariant::p4_neighborhood};

inline std::string_view name(Invariant inv) {
  switch (inv) {
    case Invariant::k4: return "k4";
    case Invariant::bipartite: return "bipartite";
    case Invariant::planar: return "planar";
    case Invariant::connected: return "connected";
    case Invariant::cut_vertex: return "cut_vertex";
    case Invariant::p4_neighborhood: return "p4_neighborhood";
  }
  return "?";
}

inline std::optional<Invariant> invariant_from_name(std::string_view s) {
  for (Invariant inv : all_invariants) {
    if (name(inv) == s) return inv;
  }
  return std::nullopt;
}

inline bool evaluate(Invariant inv, const Graph& g) {
  switch (inv) {
    case Invariant::k4: return contains_k4(g).has_value();
    case Invariant::bipartite: return is_bipartite(g).bipartite;
    case Invariant::planar: return planar(g);
    case Invariant::connected: return is_connected(g);
    case Invariant::cut_vertex: return has_cut_vertex(g);
    case Invariant::p4_neighborhood: return has_p4_neighborhood_vertex(g).has_value();
  }
  return false;
}

// Why two sums are non-isomorphic.
struct Certificate {
  std::string invariant;  // invariant name, "triangles9", or "canonical"
  std::string first;
  std::string second;

  std::string describe() const {
    if (invariant == "canonical") return "canonical forms differ: " + first + " vs " + second;
    return invariant + ": " + first + " vs " + second;
  }
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// First invariant in `order` that separates the two graphs.
inline std::optional<Certificate> separating_invariant(const Graph& a, const Graph& b,
                                                       std::span<const Invariant> order) {
  for (Invariant inv : order) {
    const bool va = evaluate(inv, a);
    const bool vb = evaluate(inv, b);
    if (va != vb) {
      return Certificate{std::string(name(inv)), va ? "yes" : "no", vb ? "yes" : "no"};
    }
  }
  return std::nullopt;
}

// Boolean invariants, then the nine-vertex triangle maximum, then canonical
// forms. Returns nullopt only when the graphs are isomorphic.
inline std::optional<Certificate> distinguish(const Graph& a, const Graph& b) {
  if (auto c = separating_invariant(a, b, all_invariants)) return c;
  if (a.order() == b.order() && a.order() >= 9 && a.order() <= triangle_subset_max_order) {
    const int ta = max_triangle_subset(a, 9).best_count;
    const int tb = max_triangle_subset(b, 9).best_count;
    if (ta != tb) return Certificate{"triangles9", std::to_string(ta), std::to_string(tb)};
  }
  const CanonicalForm fa = canonical_form(a);
  const CanonicalForm fb = canonical_form(b);
  if (fa == fb) return std::nullopt;
  return Certificate{"canonical", fa.hex(), fb.hex()};
}

}  // namespace tfpack
