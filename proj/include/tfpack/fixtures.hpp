#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tfpack/distinguish.hpp"
#include "tfpack/fixture_data.hpp"
#include "tfpack/ladder.hpp"
#include "tfpack/search.hpp"

namespace tfpack {

// Properties a fixture's packing sum is declared to have.
struct Claims {
  std::array<Require, all_invariants.size()> require{};
  std::optional<CycleType> complement;  // complement of the sum is this 2-factor

  Require& operator[](Invariant inv) { return require[static_cast<std::size_t>(inv)]; }
  Require operator[](Invariant inv) const { return require[static_cast<std::size_t>(inv)]; }

  // Name of the first claim the sum violates, if any.
  std::optional<std::string> first_failure(const Graph& sum) const {
    for (Invariant inv : all_invariants) {
      const Require r = (*this)[inv];
      if (r == Require::any) continue;
      if (evaluate(inv, sum) != (r == Require::yes)) return std::string(name(inv)) + "=" + to_string(r);
    }
    if (complement && !are_isomorphic(tfpack::complement(sum), realize(*complement))) {
      return "complement=" + render(*complement);
    }
    return std::nullopt;
  }
  bool holds(const Graph& sum) const { return !first_failure(sum).has_value(); }

  // Only the listed invariants.
  Claims restricted_to(const std::vector<Invariant>& keep) const {
    Claims out;
    for (Invariant inv : keep) out[inv] = (*this)[inv];
    return out;
  }

  SearchConstraints constraints() const {
    SearchConstraints c;
    for (Invariant inv : all_invariants) c[inv] = (*this)[inv];
    if (complement) {
      const Graph target = realize(*complement);
      c.predicate = [target](const PackingSum& s) { return are_isomorphic(tfpack::complement(s.sum), target); };
    }
    return c;
  }

  friend bool operator==(const Claims&, const Claims&) = default;
};

// A packing known only from a drawing, recovered by constrained
// search. Ladder bases also carry the length of the cycle that grows and
// the claims the extension keeps.
struct FixtureSpec {
  std::string name;
  CycleType type;
  Claims claims;
  std::optional<int> ladder_length;
  std::vector<Invariant> preserved;
};

namespace detail {

inline Claims claims_of(std::initializer_list<std::pair<Invariant, Require>> items) {
  Claims c;
  for (auto [inv, r] : items) c[inv] = r;
  return c;
}

}  // namespace detail

inline const std::vector<FixtureSpec>& fixture_specs() {
  using I = Invariant;
  constexpr Require yes = Require::yes;
  constexpr Require no = Require::no;
  using detail::claims_of;
  static const std::vector<FixtureSpec> specs = [&] {
    std::vector<FixtureSpec> s;
    Claims c7;
    c7.complement = CycleType{3, 4};
    s.push_back({"c7_c3c4", CycleType{7}, c7, std::nullopt, {}});
    s.push_back({"c3c6_planar", CycleType{3, 6}, claims_of({{I::planar, yes}}), 6, {I::planar}});
    s.push_back({"c3c6_nonplanar", CycleType{3, 6}, claims_of({{I::planar, no}}), 6, {I::planar}});
    s.push_back({"c3c7_planar", CycleType{3, 7}, claims_of({{I::planar, yes}}), 7, {I::planar}});
    s.push_back({"c3c7_nonplanar", CycleType{3, 7}, claims_of({{I::planar, no}}), 7, {I::planar}});
    s.push_back({"c4c5_planar", CycleType{4, 5}, claims_of({{I::planar, yes}}), 5, {I::planar}});
    s.push_back({"c4c5_nonplanar", CycleType{4, 5}, claims_of({{I::planar, no}, {I::k4, yes}}), 5, {I::planar}});
    s.push_back({"c4c6_planar", CycleType{4, 6}, claims_of({{I::planar, yes}}), 6, {I::planar}});
    s.push_back({"c4c6_nonplanar", CycleType{4, 6}, claims_of({{I::planar, no}, {I::k4, yes}}), 6, {I::planar}});
    s.push_back({"c4c7_k4free", CycleType{4, 7}, claims_of({{I::k4, no}}), std::nullopt, {}});
    s.push_back({"c3c4c4_k4", CycleType{3, 4, 4}, claims_of({{I::k4, yes}}), std::nullopt, {}});
    s.push_back({"c3c4c4_k4free", CycleType{3, 4, 4}, claims_of({{I::k4, no}}), std::nullopt, {}});
    s.push_back({"c3c3c4_k4", CycleType{3, 3, 4}, claims_of({{I::k4, yes}}), std::nullopt, {}});
    s.push_back({"c3c3c4_k4free", CycleType{3, 3, 4}, claims_of({{I::k4, no}}), std::nullopt, {}});
    s.push_back({"c3c3c5_p4", CycleType{3, 3, 5}, claims_of({{I::p4_neighborhood, yes}}), std::nullopt, {}});
    s.push_back({"c3c3c5_nop4", CycleType{3, 3, 5}, claims_of({{I::p4_neighborhood, no}}), std::nullopt, {}});
    s.push_back({"c3c3c3c4_cut", CycleType{3, 3, 3, 4},
                 claims_of({{I::connected, yes}, {I::cut_vertex, yes}}), std::nullopt, {}});
    s.push_back({"c3c3c3c4_2conn", CycleType{3, 3, 3, 4},
                 claims_of({{I::connected, yes}, {I::cut_vertex, no}}), std::nullopt, {}});
    s.push_back({"c3c3c7_k4free", CycleType{3, 3, 7}, claims_of({{I::k4, no}}), 7, {I::k4}});
    s.push_back({"c3c3c8_k4free", CycleType{3, 3, 8}, claims_of({{I::k4, no}}), 8, {I::k4}});
    return s;
  }();
  return specs;
}

inline const FixtureSpec& fixture_spec(std::string_view name) {
  for (const auto& s : fixture_specs()) {
    if (s.name == name) return s;
  }
  throw FixtureError("unknown fixture '" + std::string(name) + "'");
}

// A ladder family: base packing, roles, and the first l that is valid.
struct LadderTemplate {
  std::string name;
  CycleType base;
  Embedding base_embedding;
  int designated_length = 0;
  LadderRoles roles;
  int l_first = 1;
  Claims preserved;

  CycleType type_for(int l) const {
    std::vector<int> lengths = base.lengths();
    *std::find(lengths.begin(), lengths.end(), designated_length) += 2 * l;
    return CycleType(lengths);
  }
  Extended extend(int l) const { return ladder_extend(base, base_embedding, designated_length, roles, l); }
};

struct Fixture {
  FixtureSpec spec;
  Embedding embedding;
  std::optional<LadderTemplate> ladder;
};

inline Permutation parse_permutation(std::string_view text) {
  std::vector<Vertex> image;
  std::istringstream in{std::string(text)};
  Vertex v = 0;
  while (in >> v) image.push_back(v);
  if (!in.eof()) throw FixtureError("malformed permutation '" + std::string(text) + "'");
  return Permutation(std::move(image));
}

inline std::string format_permutation(const Permutation& p) {
  std::string out;
  for (Vertex v : p.images()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

// Checks a stored packing against its spec: valid embedding, declared
// claims, and for ladders the claims kept over three extensions.
inline Fixture validate_fixture(const FixtureSpec& spec, const Permutation& perm,
                                const std::optional<std::pair<LadderRoles, int>>& ladder) {
  const Graph g = realize(spec.type);
  if (perm.size() != g.order()) throw FixtureError(spec.name + ": permutation has the wrong length");
  auto check = check_embedding(g, perm);
  if (!check.valid()) {
    throw FixtureError(spec.name + ": not an embedding, red edge " + to_string(check.violations.front().image) +
                       " is black");
  }
  const Embedding e = *check.embedding;
  if (auto bad = spec.claims.first_failure(make_sum(g, e).sum)) {
    throw FixtureError(spec.name + ": declared claim " + *bad + " does not hold");
  }
  Fixture out{spec, e, std::nullopt};
  if (spec.ladder_length) {
    if (!ladder) throw FixtureError(spec.name + ": ladder roles missing");
    LadderTemplate t{spec.name,          spec.type, e, *spec.ladder_length, ladder->first, ladder->second,
                     spec.claims.restricted_to(spec.preserved)};
    for (int l = t.l_first; l < t.l_first + 3; ++l) {
      std::string why;
      auto x = try_ladder(t.base, e, t.designated_length, t.roles, l, &why);
      if (!x) throw FixtureError(spec.name + ": ladder l=" + std::to_string(l) + " fails: " + why);
      if (auto bad = t.preserved.first_failure(make_sum(realize(x->type), x->embedding).sum)) {
        throw FixtureError(spec.name + ": ladder l=" + std::to_string(l) + " loses " + *bad);
      }
    }
    out.ladder = std::move(t);
  }
  return out;
}

// Frozen fixtures compiled into the library, validated on first use.
inline const Fixture& fixture(std::string_view name) {
  static std::mutex mutex;
  static std::map<std::string, Fixture, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(name); it != cache.end()) return it->second;
  const FixtureSpec& spec = fixture_spec(name);
  for (const auto& row : frozen::fixture_rows) {
    if (row.name != name) continue;
    std::optional<std::pair<LadderRoles, int>> ladder;
    for (const auto& lr : frozen::ladder_rows) {
      if (lr.name == name) ladder = std::pair{LadderRoles{lr.r, lr.s, lr.pc, lr.qc, lr.pd, lr.qd}, lr.l_first};
    }
    auto [it, fresh] = cache.emplace(std::string(name), validate_fixture(spec, parse_permutation(row.permutation), ladder));
    return it->second;
  }
  throw FixtureError("fixture '" + std::string(name) + "' has not been generated (run `tfpack fixtures regen`)");
}

inline const LadderTemplate& ladder_template(std::string_view name) {
  const Fixture& f = fixture(name);
  if (!f.ladder) throw FixtureError("fixture '" + std::string(name) + "' is not a ladder base");
  return *f.ladder;
}

// Search for a figure-only packing: the first red copy (in enumeration
// order) whose sum satisfies the claims.
inline std::optional<Embedding> search_fixture(const FixtureSpec& spec) {
  SearchOptions opt;
  opt.override_soft_limit = true;
  return find_embedding(realize(spec.type), spec.claims.constraints(), opt);
}

struct LadderSearchResult {
  Embedding base;
  LadderRoles roles;
  int l_first = 1;
};

// Joint search over base packings with the declared claims and role
// assignments whose extensions for l_first..l_first+2 validate and keep the
// preserved claims.
inline std::optional<LadderSearchResult> search_ladder(const FixtureSpec& spec, int l_first) {
  if (!spec.ladder_length) throw FixtureError(spec.name + " is not a ladder base");
  const int len = *spec.ladder_length;
  const Graph g = realize(spec.type);
  const Claims keep = spec.claims.restricted_to(spec.preserved);
  const auto black_cycles = *two_factor_cycles(g);

  auto oriented_edges = [len](const std::vector<std::vector<Vertex>>& cycles) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const auto& c : cycles) {
      if (static_cast<int>(c.size()) != len) continue;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const Vertex a = c[i];
        const Vertex b = c[(i + 1) % c.size()];
        out.emplace_back(a, b);
        out.emplace_back(b, a);
      }
    }
    return out;
  };
  // One black cycle at a time so both black edges share it.
  std::vector<std::vector<std::pair<Vertex, Vertex>>> black_by_cycle;
  for (const auto& c : black_cycles) {
    if (static_cast<int>(c.size()) == len) black_by_cycle.push_back(oriented_edges({c}));
  }

  std::optional<LadderSearchResult> found;
  detail::for_each_red_embedding(g, spec.claims.constraints(), [&](const Embedding& e, const PackingSum& s) {
    const auto red = oriented_edges(*two_factor_cycles(s.red));
    for (auto [r, rs] : red) {
      for (const auto& black : black_by_cycle) {
        for (auto [pc, qc] : black) {
          for (auto [pd, qd] : black) {
            if (Edge(pc, qc) == Edge(pd, qd)) continue;
            const LadderRoles roles{r, rs, pc, qc, pd, qd};
            std::vector<Extended> xs;
            for (int l = l_first; l < l_first + 3; ++l) {
              auto x = try_ladder(spec.type, e, len, roles, l);
              if (!x) break;
              xs.push_back(std::move(*x));
            }
            if (xs.size() != 3) continue;
            const bool kept = std::all_of(xs.begin(), xs.end(), [&](const Extended& x) {
              return keep.holds(make_sum(realize(x.type), x.embedding).sum);
            });
            if (kept) {
              found = LadderSearchResult{e, roles, l_first};
              return false;
            }
          }
        }
      }
    }
    return true;
  });
  return found;
}

}  // namespace tfpack
