#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tfpack/distinguish.hpp"
#include "tfpack/fixtures.hpp"
#include "tfpack/ladder.hpp"
#include "tfpack/search.hpp"

namespace tfpack {

inline bool is_packable(const CycleType& ct) { return classify_by_theorem(ct) != Verdict::not_embeddable; }

namespace detail {

inline Embedding from_red_cycles(const CycleType& ct, const std::vector<std::vector<Vertex>>& red) {
  const Permutation p = cycle_matching_permutation(ct.total(), realized_cycles(ct), red);
  return Embedding::verified(realize(ct), p);
}

inline void require_type(const CycleType& ct, const CycleType& want, const char* what) {
  if (ct != want) throw ConstructionError(std::string(what) + " builds " + render(want) + ", not " + render(ct));
}

}  // namespace detail

// i -> r*i mod n on C_n; the red edges are exactly {i, i+r}.
inline Embedding rotate_embedding(int n, int r) {
  if (n < 3) throw ConstructionError("cycle length must be at least 3");
  const int rr = ((r % n) + n) % n;
  if (std::gcd(rr, n) != 1) {
    throw ConstructionError("shift " + std::to_string(r) + " is not coprime to " + std::to_string(n) +
                            " (gcd " + std::to_string(std::gcd(rr, n)) + ")");
  }
  if (rr == 1 || rr == n - 1) throw ConstructionError("shift of +-1 puts every red edge on a black edge");
  std::vector<Vertex> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = static_cast<Vertex>((1LL * rr * i) % n);
  return Embedding::verified(realize(CycleType{n}), Permutation(std::move(image)));
}

// r = n - p for the largest prime p with n/2 < p <= n - 3.
inline int choose_coprime_shift(int n) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("choose_coprime_shift needs an even n >= 8");
  auto prime = [](int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
      if (p % d == 0) return false;
    }
    return true;
  };
  for (int p = n - 3; p > n / 2; --p) {
    if (prime(p)) return n - p;
  }
  throw std::logic_error("no prime in (n/2, n-3] for n = " + std::to_string(n));
}

// Removes a1..a4 (consecutive on the chosen cycle, starting at `offset`),
// embeds the remainder by search, and closes the red path as
// x' a3 a1 a4 a2 y'. The black path a1a2a3a4 and red a1a3, a1a4, a2a4 make
// {a1..a4} a K4. cycle_index < 0 picks the last (longest) cycle.
inline Embedding k4_embedding(const CycleType& ct, int cycle_index = -1, int offset = 0) {
  const int k = ct.cycle_count();
  const int ci = cycle_index < 0 ? k - 1 : cycle_index;
  if (ci >= k) throw ConstructionError("cycle index " + std::to_string(ci) + " out of range");
  const auto block = realized_cycles(ct)[static_cast<std::size_t>(ci)];
  const int len = static_cast<int>(block.size());
  if (len < 5) throw ConstructionError("k4_embedding needs a cycle of length >= 5");
  auto at = [&](int i) { return block[static_cast<std::size_t>(((offset + i) % len + len) % len)]; };
  const std::array<Vertex, 4> a{at(0), at(1), at(2), at(3)};

  const Graph g = realize(ct);
  Mask removed = 0;
  for (Vertex v : a) removed |= bit(v);
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < g.order(); ++v) {
    if ((removed & bit(v)) == 0) kept.push_back(v);
  }
  const Graph rest = induced_subgraph(g, kept);
  SearchOptions opt;
  opt.override_soft_limit = true;
  const auto sub = find_embedding(rest, {}, opt);
  if (!sub) {
    throw ConstructionError("k4_embedding: the remainder (order " + std::to_string(rest.order()) + ", size " +
                            std::to_string(rest.size()) + ") is not embeddable");
  }
  std::vector<Vertex> image(static_cast<std::size_t>(g.order()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    image[static_cast<std::size_t>(kept[i])] = kept[static_cast<std::size_t>(sub->perm()(static_cast<Vertex>(i)))];
  }
  image[static_cast<std::size_t>(a[0])] = a[2];
  image[static_cast<std::size_t>(a[1])] = a[0];
  image[static_cast<std::size_t>(a[2])] = a[3];
  image[static_cast<std::size_t>(a[3])] = a[1];
  Embedding e = Embedding::verified(g, Permutation(std::move(image)));
  const Graph sum = make_sum(g, e).sum;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (!sum.has_edge(a[i], a[j])) throw std::logic_error("k4_embedding: removed path does not span a K4");
    }
  }
  return e;
}

namespace detail {

// Lowest vertex of `comp` whose two red edges can go without splitting it.
inline Vertex red_detachable(const PackingSum& s, const std::vector<Vertex>& comp) {
  Mask cm = 0;
  for (Vertex v : comp) cm |= bit(v);
  for (Vertex v : comp) {
    GraphBuilder b(s.sum);
    for_each_bit(s.red.neighbors(v), [&](Vertex w) { b.remove_edge(v, w); });
    if (reach(b.build(), v, cm) == cm) return v;
  }
  throw std::logic_error("component without a detachable vertex");
}

}  // namespace detail

// (y1 y2) composed after σ: y1 and y2 trade red neighbourhoods.
inline Embedding swap_red(const CycleType& ct, const Embedding& e, Vertex y1, Vertex y2) {
  const int n = ct.total();
  if (e.order() != n) throw ConstructionError("embedding order does not match " + render(ct));
  if (y1 < 0 || y2 < 0 || y1 >= n || y2 >= n || y1 == y2) throw ConstructionError("bad merge vertices");
  std::vector<Vertex> t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[static_cast<std::size_t>(y1)], t[static_cast<std::size_t>(y2)]);
  return Embedding::verified(realize(ct), compose(Permutation(std::move(t)), e.perm()));
}

struct MergeChoice {
  Vertex y1 = 0;
  Vertex y2 = 0;
};

// The vertices swapped by one merge step: detachable vertices of the first
// two components.
inline MergeChoice merge_choice(const CycleType& ct, const Embedding& e) {
  const PackingSum s = make_sum(realize(ct), e);
  const auto comps = analyze_connectivity(s.sum).components;
  if (comps.size() < 2) throw ConstructionError("merge_components: the sum is already connected");
  return MergeChoice{detail::red_detachable(s, comps[0]), detail::red_detachable(s, comps[1])};
}

// One step: one fewer component, same red cycle type.
inline Embedding merge_components(const CycleType& ct, const Embedding& e) {
  const MergeChoice m = merge_choice(ct, e);
  return swap_red(ct, e, m.y1, m.y2);
}

enum class TriangleVariant { standard, a, b };

inline std::string to_string(TriangleVariant v) {
  switch (v) {
    case TriangleVariant::standard: return "";
    case TriangleVariant::a: return "A";
    case TriangleVariant::b: return "B";
  }
  return "";
}

inline TriangleVariant parse_triangle_variant(std::string_view s) {
  if (s.empty()) return TriangleVariant::standard;
  if (s == "A" || s == "a") return TriangleVariant::a;
  if (s == "B" || s == "b") return TriangleVariant::b;
  throw ParseError("unknown triangle variant '" + std::string(s) + "'");
}

// Black triangles T_i = {a_i, b_i, c_i} on consecutive labels; red
// triangles as listed for 3C3, 4C3 and the two 5C3 packings.
inline Embedding triangle_list_packing(const CycleType& ct, TriangleVariant variant = TriangleVariant::standard) {
  auto a = [](int i) { return 3 * (i - 1); };
  auto b = [](int i) { return 3 * (i - 1) + 1; };
  auto c = [](int i) { return 3 * (i - 1) + 2; };
  using Tri = std::vector<std::vector<Vertex>>;
  Tri red;
  const auto& l = ct.lengths();
  const bool triangles = std::all_of(l.begin(), l.end(), [](int x) { return x == 3; });
  const int k = ct.cycle_count();
  if (!triangles || k < 3 || k > 5) throw ConstructionError("triangle lists exist for 3C3, 4C3 and 5C3 only");
  if ((k == 5) == (variant == TriangleVariant::standard)) {
    throw ConstructionError(k == 5 ? "5C3 needs variant A or B" : "variants apply to 5C3 only");
  }
  if (k == 3) {
    red = Tri{{a(1), a(2), a(3)}, {b(1), b(2), b(3)}, {c(1), c(2), c(3)}};
  } else if (k == 4) {
    red = Tri{{a(1), a(2), a(3)}, {b(2), b(3), b(4)}, {c(1), c(3), c(4)}, {b(1), c(2), a(4)}};
  } else if (variant == TriangleVariant::a) {
    red = Tri{{a(1), a(2), a(3)}, {b(1), a(4), a(5)}, {c(1), c(2), b(5)}, {b(2), b(3), b(4)}, {c(3), c(4), c(5)}};
  } else {
    red = Tri{{a(1), a(2), a(3)}, {b(1), b(2), b(3)}, {c(1), b(4), b(5)}, {c(2), a(4), a(5)}, {c(3), c(4), c(5)}};
  }
  return detail::from_red_cycles(ct, red);
}

enum class BxyVariant { bipartite, nonbipartite };

inline std::string to_string(BxyVariant v) { return v == BxyVariant::bipartite ? "bipartite" : "nonbipartite"; }

inline BxyVariant parse_bxy_variant(std::string_view s) {
  if (s == "bipartite") return BxyVariant::bipartite;
  if (s == "nonbipartite" || s == "non-bipartite") return BxyVariant::nonbipartite;
  throw ParseError("unknown B(X,Y) variant '" + std::string(s) + "'");
}

// Black cycles B({x_{2i-1},x_{2i}},{y_{2i-1},y_{2i}}) laid out as x y x y,
// so x_i = 2(i-1) and y_i = 2i-1. B({p,q},{r,s}) is the cycle p r q s.
inline Embedding bxy_packing(const CycleType& ct, BxyVariant variant) {
  auto x = [](int i) { return 2 * (i - 1); };
  auto y = [](int i) { return 2 * i - 1; };
  auto B = [](Vertex p, Vertex q, Vertex r, Vertex s) { return std::vector<Vertex>{p, r, q, s}; };
  std::vector<std::vector<Vertex>> red;
  const bool bip = variant == BxyVariant::bipartite;
  if (ct == CycleType{4, 4}) {
    if (bip) {
      red = {B(x(1), x(2), y(3), y(4)), B(x(3), x(4), y(1), y(2))};
    } else {
      red = {B(x(2), y(2), x(3), y(3)), B(x(1), y(1), x(4), y(4))};
    }
  } else if (ct == CycleType{4, 4, 4}) {
    if (bip) {
      red = {B(x(1), x(2), y(3), y(4)), B(x(3), x(4), y(5), y(6)), B(x(5), x(6), y(1), y(2))};
    } else {
      red = {B(x(2), y(2), x(3), y(3)), B(x(4), y(4), x(5), y(5)), B(x(1), y(1), x(6), y(6))};
    }
  } else {
    throw ConstructionError("B(X,Y) packings exist for 2C4 and 3C4 only");
  }
  return detail::from_red_cycles(ct, red);
}

// The written-out unique packings of C3+C4 and C3+C5.
inline Embedding unique_packing(const CycleType& ct) {
  if (ct == CycleType{3, 4}) {
    // u1 u2 u3 = 0 1 2; y1 y2 x2 x1 = 3 4 5 6.
    const Vertex u1 = 0, u2 = 1, u3 = 2, y1 = 3, y2 = 4, x2 = 5, x1 = 6;
    return detail::from_red_cycles(ct, {{u1, x1, y2}, {u2, y1, u3, x2}});
  }
  if (ct == CycleType{3, 5}) {
    // u1 u2 u3 = 0 1 2; y1 y2 z x2 x1 = 3 4 5 6 7.
    const Vertex u1 = 0, u2 = 1, u3 = 2, y1 = 3, y2 = 4, z = 5, x2 = 6, x1 = 7;
    return detail::from_red_cycles(ct, {{u3, x2, y2}, {z, y1, u1, x1, u2}});
  }
  throw ConstructionError("written-out unique packings exist for C3+C4 and C3+C5 only");
}

// Red C6 alternating across the two black triangles; two red triangles on
// alternate positions of the black C6.
inline Embedding cross_packing_33_6() {
  const CycleType ct{3, 3, 6};
  return detail::from_red_cycles(ct, {{0, 3, 1, 4, 2, 5}, {6, 8, 10}, {7, 9, 11}});
}

namespace detail {

// Indices (into ct's sorted lengths) of the sub-multiset `part`.
inline std::vector<std::size_t> part_indices(const CycleType& ct, const std::vector<int>& part) {
  std::vector<std::size_t> out;
  std::vector<bool> used(ct.lengths().size(), false);
  for (int len : part) {
    bool hit = false;
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (!used[i] && ct.lengths()[i] == len) {
        used[i] = hit = true;
        out.push_back(i);
        break;
      }
    }
    if (!hit) throw ConstructionError("split part is not a sub-multiset of " + render(ct));
  }
  std::sort(out.begin(), out.end());
  if (out.empty() || out.size() == used.size()) throw ConstructionError("split must leave two non-empty parts");
  return out;
}

struct Split {
  CycleType first;
  CycleType second;
  std::vector<Vertex> first_vertices;  // part-local label -> ct label
  std::vector<Vertex> second_vertices;
};

inline Split make_split(const CycleType& ct, const std::vector<int>& part) {
  const auto idx = part_indices(ct, part);
  const auto blocks = realized_cycles(ct);
  Split s;
  std::vector<int> l1, l2;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const bool first = std::find(idx.begin(), idx.end(), i) != idx.end();
    (first ? l1 : l2).push_back(ct.lengths()[i]);
    auto& verts = first ? s.first_vertices : s.second_vertices;
    verts.insert(verts.end(), blocks[i].begin(), blocks[i].end());
  }
  s.first = CycleType(l1);
  s.second = CycleType(l2);
  return s;
}

inline Embedding place_parts(const CycleType& ct, const Split& s, const Embedding& e1, const Embedding& e2) {
  std::vector<Vertex> image(static_cast<std::size_t>(ct.total()));
  for (std::size_t i = 0; i < s.first_vertices.size(); ++i) {
    image[static_cast<std::size_t>(s.first_vertices[i])] =
        s.first_vertices[static_cast<std::size_t>(e1.perm()(static_cast<Vertex>(i)))];
  }
  for (std::size_t i = 0; i < s.second_vertices.size(); ++i) {
    image[static_cast<std::size_t>(s.second_vertices[i])] =
        s.second_vertices[static_cast<std::size_t>(e2.perm()(static_cast<Vertex>(i)))];
  }
  return Embedding::verified(realize(ct), Permutation(std::move(image)));
}

inline void require_packable_parts(const Split& s) {
  for (const CycleType* p : {&s.first, &s.second}) {
    if (!is_packable(*p)) throw ConstructionError("split part " + render(*p) + " is not packable");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Traces

struct TraceStep {
  std::string op;
  nlohmann::json params = nlohmann::json::object();

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ConstructionTrace {
  CycleType type;
  std::vector<TraceStep> steps;
  Embedding result;

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& s : steps) out.push_back(s.op);
    return out;
  }
};

using Plan = std::vector<TraceStep>;

namespace step {

inline TraceStep rotation(int r) { return {"rotation", {{"r", r}}}; }
inline TraceStep k4(int cycle_index, int offset) { return {"k4", {{"cycle", cycle_index}, {"offset", offset}}}; }
inline TraceStep unique() { return {"unique", nlohmann::json::object()}; }
inline TraceStep triangles(TriangleVariant v) { return {"triangles", {{"variant", to_string(v)}}}; }
inline TraceStep bxy(BxyVariant v) { return {"bxy", {{"variant", to_string(v)}}}; }
inline TraceStep cross() { return {"cross", nlohmann::json::object()}; }
inline TraceStep fixture(std::string name) { return {"fixture", {{"name", std::move(name)}}}; }
inline TraceStep ladder(std::string name, int l) { return {"ladder", {{"template", std::move(name)}, {"l", l}}}; }
inline TraceStep search(const SearchConstraints& c) {
  nlohmann::json req = nlohmann::json::object();
  for (Invariant inv : all_invariants) {
    if (c[inv] != Require::any) req[std::string(name(inv))] = to_string(c[inv]);
  }
  return {"search", {{"require", req}}};
}
// Iterated merging until the sum is connected; expands into merge steps.
inline TraceStep connect() { return {"connect", nlohmann::json::object()}; }
inline TraceStep merge(MergeChoice m) { return {"merge", {{"y1", m.y1}, {"y2", m.y2}}}; }

}  // namespace step

inline nlohmann::json plan_to_json(const Plan& plan) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : plan) out.push_back({{"op", s.op}, {"params", s.params}});
  return out;
}

inline Plan plan_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("trace steps must be an array");
  Plan out;
  for (const auto& s : j) {
    if (!s.is_object() || !s.contains("op") || !s["op"].is_string()) throw ParseError("trace step needs an op");
    out.push_back({s["op"].get<std::string>(), s.value("params", nlohmann::json::object())});
  }
  return out;
}

ConstructionTrace execute(const CycleType& ct, const Plan& plan);

namespace detail {

inline SearchConstraints constraints_from_json(const nlohmann::json& req) {
  SearchConstraints c;
  for (auto it = req.begin(); it != req.end(); ++it) {
    auto inv = invariant_from_name(it.key());
    if (!inv) throw ConstructionError("unknown invariant '" + it.key() + "'");
    c[*inv] = parse_require(it.value().get<std::string>());
  }
  return c;
}

inline int int_param(const TraceStep& s, const char* key) {
  if (!s.params.contains(key) || !s.params[key].is_number_integer()) {
    throw ConstructionError("step '" + s.op + "' needs integer parameter '" + key + "'");
  }
  return s.params[key].get<int>();
}

inline std::string string_param(const TraceStep& s, const char* key) {
  if (!s.params.contains(key) || !s.params[key].is_string()) {
    throw ConstructionError("step '" + s.op + "' needs string parameter '" + key + "'");
  }
  return s.params[key].get<std::string>();
}

// Runs one creating step; `recorded` receives the fully expanded step.
inline Embedding run_step(const CycleType& ct, const TraceStep& s, TraceStep& recorded) {
  recorded = s;
  if (s.op == "rotation") {
    if (ct.cycle_count() != 1) throw ConstructionError("rotation applies to a single cycle");
    return rotate_embedding(ct.total(), int_param(s, "r"));
  }
  if (s.op == "k4") return k4_embedding(ct, int_param(s, "cycle"), int_param(s, "offset"));
  if (s.op == "unique") return unique_packing(ct);
  if (s.op == "triangles") return triangle_list_packing(ct, parse_triangle_variant(string_param(s, "variant")));
  if (s.op == "bxy") return bxy_packing(ct, parse_bxy_variant(string_param(s, "variant")));
  if (s.op == "cross") {
    require_type(ct, CycleType{3, 3, 6}, "cross packing");
    return cross_packing_33_6();
  }
  if (s.op == "fixture") {
    const Fixture& f = tfpack::fixture(string_param(s, "name"));
    require_type(ct, f.spec.type, ("fixture " + f.spec.name).c_str());
    return f.embedding;
  }
  if (s.op == "ladder") {
    const LadderTemplate& t = ladder_template(string_param(s, "template"));
    const int l = int_param(s, "l");
    require_type(ct, t.type_for(l), ("ladder " + t.name).c_str());
    return t.extend(l).embedding;
  }
  if (s.op == "search") {
    SearchOptions opt;
    opt.override_soft_limit = true;
    auto e = find_embedding(realize(ct), constraints_from_json(s.params.value("require", nlohmann::json::object())),
                            opt);
    if (!e) throw ConstructionError("search found no embedding of " + render(ct) + " with the given constraints");
    return *e;
  }
  if (s.op == "divide") {
    const auto part = s.params.at("first").get<std::vector<int>>();
    const Split split = make_split(ct, part);
    require_packable_parts(split);
    const auto& parts = s.params.at("parts");
    const ConstructionTrace t1 = execute(split.first, plan_from_json(parts.at(0)));
    const ConstructionTrace t2 = execute(split.second, plan_from_json(parts.at(1)));
    recorded.params["parts"] = nlohmann::json::array({plan_to_json(t1.steps), plan_to_json(t2.steps)});
    return place_parts(ct, split, t1.result, t2.result);
  }
  throw ConstructionError("unknown construction step '" + s.op + "'");
}

}  // namespace detail

// Runs a plan from the realized 2-factor. The returned trace holds the
// expanded steps (connect becomes explicit merges, nested plans become
// their executed steps), so executing trace.steps again gives the same
// result.
inline ConstructionTrace execute(const CycleType& ct, const Plan& plan) {
  std::optional<Embedding> cur;
  std::vector<TraceStep> done;
  for (const TraceStep& s : plan) {
    if (s.op == "merge" || s.op == "connect") {
      if (!cur) throw ConstructionError("'" + s.op + "' needs an earlier construction step");
      if (s.op == "merge") {
        cur = swap_red(ct, *cur, detail::int_param(s, "y1"), detail::int_param(s, "y2"));
        done.push_back(s);
        continue;
      }
      while (!is_connected(make_sum(realize(ct), *cur).sum)) {
        const MergeChoice m = merge_choice(ct, *cur);
        cur = swap_red(ct, *cur, m.y1, m.y2);
        done.push_back(step::merge(m));
      }
      continue;
    }
    if (cur) throw ConstructionError("step '" + s.op + "' must come first");
    TraceStep recorded;
    cur = detail::run_step(ct, s, recorded);
    done.push_back(std::move(recorded));
  }
  if (!cur) throw ConstructionError("empty construction plan");
  return ConstructionTrace{ct, std::move(done), std::move(*cur)};
}

inline Embedding replay(const ConstructionTrace& t) { return execute(t.type, t.steps).result; }

inline nlohmann::json trace_to_json(const ConstructionTrace& t) {
  return {{"cycle_type", render(t.type)},
          {"steps", plan_to_json(t.steps)},
          {"permutation", t.result.perm().vector()}};
}

// Re-validates the stored permutation against the cycle type.
inline ConstructionTrace trace_from_json(const nlohmann::json& j) {
  const CycleType ct = parse_cycle_type(j.at("cycle_type").get<std::string>());
  const auto perm = j.at("permutation").get<std::vector<Vertex>>();
  return ConstructionTrace{ct, plan_from_json(j.at("steps")), Embedding::verified(realize(ct), Permutation(perm))};
}

// ---------------------------------------------------------------------------
// Case dispatch

struct TwoPlans {
  Plan first;
  Plan second;
  std::string preferred;  // invariant that should separate the sums
};

Plan plan_any(const CycleType& ct);

namespace detail {

inline Plan divide_plan(const CycleType& ct, const std::vector<int>& part) {
  const Split split = make_split(ct, part);
  require_packable_parts(split);
  nlohmann::json parts = nlohmann::json::array({plan_to_json(plan_any(split.first)), plan_to_json(plan_any(split.second))});
  return {TraceStep{"divide", {{"first", part}, {"parts", parts}}}};
}

// First sub-multiset (by index mask) that splits ct into two packable parts.
inline std::optional<std::vector<int>> packable_split(const CycleType& ct) {
  const auto& l = ct.lengths();
  const std::size_t k = l.size();
  for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
    std::vector<int> a, b;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1u ? a : b).push_back(l[i]);
    if (is_packable(CycleType(a)) && is_packable(CycleType(b))) return a;
  }
  return std::nullopt;
}

inline TwoPlans divide_and_merge(const CycleType& ct, const std::vector<int>& part) {
  Plan first = divide_plan(ct, part);
  Plan second = first;
  second.push_back(step::connect());
  return {first, second, "connected"};
}

inline TwoPlans fixture_pair(const char* a, const char* b, const char* preferred) {
  return {{step::fixture(a)}, {step::fixture(b)}, preferred};
}

inline TwoPlans ladder_pair(const char* a, const char* b, int l) {
  return {{step::ladder(a, l)}, {step::ladder(b, l)}, "planar"};
}

}  // namespace detail

inline void require_multiply_embeddable(const CycleType& ct) {
  const Verdict v = classify_by_theorem(ct);
  if (v == Verdict::not_embeddable) throw ConstructionError(render(ct) + " is not embeddable");
  if (v == Verdict::uniquely_embeddable) {
    throw ConstructionError(render(ct) + " is uniquely embeddable; it has no two distinct embeddings");
  }
}

// The case analysis: which two constructions give distinct sums for ct.
inline TwoPlans plan_two(const CycleType& ct) {
  require_multiply_embeddable(ct);
  const auto& l = ct.lengths();
  const int k = ct.cycle_count();
  using V = std::vector<int>;
  using detail::divide_and_merge;
  using detail::fixture_pair;
  using detail::ladder_pair;

  if (k == 1) {
    const int n = l[0];
    if (n == 7) return {{step::rotation(2)}, {step::fixture("c7_c3c4")}, ""};
    return {{step::k4(0, 0)}, {step::rotation(n % 2 ? 2 : choose_coprime_shift(n))}, "k4"};
  }
  if (k == 2) {
    const int a = l[0];
    const int b = l[1];
    if (a >= 5) return divide_and_merge(ct, {a});
    if (a == 3) {
      if (b == 6) return fixture_pair("c3c6_planar", "c3c6_nonplanar", "planar");
      if (b == 7) return fixture_pair("c3c7_planar", "c3c7_nonplanar", "planar");
      if (b % 2 == 0) return ladder_pair("c3c6_planar", "c3c6_nonplanar", (b - 6) / 2);
      return ladder_pair("c3c7_planar", "c3c7_nonplanar", (b - 7) / 2);
    }
    if (b == 4) return {{step::bxy(BxyVariant::bipartite)}, {step::bxy(BxyVariant::nonbipartite)}, "bipartite"};
    if (b == 5) return fixture_pair("c4c5_planar", "c4c5_nonplanar", "planar");
    if (b == 6) return fixture_pair("c4c6_planar", "c4c6_nonplanar", "planar");
    if (b == 7) return {{step::k4(1, 0)}, {step::fixture("c4c7_k4free")}, "k4"};
    if (b % 2 == 0) return ladder_pair("c4c6_planar", "c4c6_nonplanar", (b - 6) / 2);
    return ladder_pair("c4c5_planar", "c4c5_nonplanar", (b - 5) / 2);
  }
  if (k == 3) {
    if (l == V{3, 3, 4}) return fixture_pair("c3c3c4_k4", "c3c3c4_k4free", "k4");
    if (l == V{3, 3, 5}) return fixture_pair("c3c3c5_p4", "c3c3c5_nop4", "p4_neighborhood");
    if (l == V{3, 3, 6}) return {{step::cross()}, {step::cross(), step::connect()}, "connected"};
    if (l[0] == 3 && l[1] == 3) {
      const int p = l[2];
      if (p == 7 || p == 8) return {{step::k4(2, 0)}, {step::fixture(p == 7 ? "c3c3c7_k4free" : "c3c3c8_k4free")}, "k4"};
      if (p % 2) return {{step::k4(2, 0)}, {step::ladder("c3c3c7_k4free", (p - 7) / 2)}, "k4"};
      return {{step::k4(2, 0)}, {step::ladder("c3c3c8_k4free", (p - 8) / 2)}, "k4"};
    }
    if (l == V{3, 4, 4}) return fixture_pair("c3c4c4_k4", "c3c4c4_k4free", "k4");
    if (l == V{4, 4, 4}) return {{step::bxy(BxyVariant::bipartite)}, {step::bxy(BxyVariant::nonbipartite)}, "bipartite"};
    return divide_and_merge(ct, {l[0], l[1]});
  }
  if (k == 4) {
    if (l == V{3, 3, 3, 4}) return fixture_pair("c3c3c3c4_cut", "c3c3c3c4_2conn", "cut_vertex");
    auto part = detail::packable_split(ct);
    if (!part) throw std::logic_error("no packable split of " + render(ct));
    return divide_and_merge(ct, *part);
  }
  if (k == 5 && l == V{3, 3, 3, 3, 3}) {
    return {{step::triangles(TriangleVariant::a)}, {step::triangles(TriangleVariant::b)}, "triangles9"};
  }
  return divide_and_merge(ct, {l[0], l[1], l[2]});
}

// One construction for any embeddable type.
inline Plan plan_any(const CycleType& ct) {
  using V = std::vector<int>;
  const auto& l = ct.lengths();
  switch (classify_by_theorem(ct)) {
    case Verdict::not_embeddable:
      throw ConstructionError(render(ct) + " is not embeddable");
    case Verdict::uniquely_embeddable:
      if (l == V{5}) return {step::rotation(2)};
      if (l == V{6}) return {step::search({})};
      if (l == V{3, 4} || l == V{3, 5}) return {step::unique()};
      return {step::triangles(TriangleVariant::standard)};
    case Verdict::multiply_embeddable:
      break;
  }
  return plan_two(ct).first;
}

inline ConstructionTrace any_embedding(const CycleType& ct) { return execute(ct, plan_any(ct)); }

// Packs the parts of the split separately on their own blocks; the sum has
// at least two components.
inline Embedding divide_and_pack(const CycleType& ct, const std::vector<int>& first_part) {
  return execute(ct, detail::divide_plan(ct, first_part)).result;
}

struct TwoEmbeddings {
  ConstructionTrace first;
  ConstructionTrace second;
  Certificate certificate;
};

// Why the two sums differ: the preferred invariant when it separates them,
// otherwise the general distinguisher.
inline std::optional<Certificate> certify(const Graph& s1, const Graph& s2, const std::string& preferred) {
  if (auto inv = invariant_from_name(preferred)) {
    const bool a = evaluate(*inv, s1);
    const bool b = evaluate(*inv, s2);
    if (a != b) return Certificate{preferred, a ? "yes" : "no", b ? "yes" : "no"};
  } else if (preferred == "triangles9" && s1.order() >= 9 && s1.order() <= triangle_subset_max_order) {
    const int a = max_triangle_subset(s1, 9).best_count;
    const int b = max_triangle_subset(s2, 9).best_count;
    if (a != b) return Certificate{preferred, std::to_string(a), std::to_string(b)};
  }
  return distinguish(s1, s2);
}

inline TwoEmbeddings two_distinct_embeddings(const CycleType& ct) {
  const TwoPlans plans = plan_two(ct);
  ConstructionTrace t1 = execute(ct, plans.first);
  ConstructionTrace t2 = execute(ct, plans.second);
  const Graph g = realize(ct);
  auto cert = certify(make_sum(g, t1.result).sum, make_sum(g, t2.result).sum, plans.preferred);
  if (!cert) throw ConstructionError("constructions for " + render(ct) + " gave isomorphic sums");
  return TwoEmbeddings{std::move(t1), std::move(t2), std::move(*cert)};
}

}  // namespace tfpack
