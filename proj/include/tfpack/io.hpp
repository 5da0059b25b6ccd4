#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tfpack/constructive.hpp"
#include "tfpack/fixtures.hpp"
#include "tfpack/search.hpp"

namespace tfpack {

inline constexpr const char* schema_version = "1";

// ---------------------------------------------------------------------------
// Result documents

struct EmbeddingRecord {
  std::string label;
  Embedding embedding;
  std::vector<TraceStep> steps;  // empty when the embedding came from search

  friend bool operator==(const EmbeddingRecord& a, const EmbeddingRecord& b) {
    return a.label == b.label && a.embedding.perm() == b.embedding.perm() && a.steps == b.steps;
  }
};

struct ResultDocument {
  std::string schema = schema_version;
  std::string command;
  std::optional<CycleType> cycle_type;
  nlohmann::json data = nlohmann::json::object();  // command-specific fields
  std::vector<EmbeddingRecord> embeddings;
  std::vector<std::string> certificates;
  std::optional<nlohmann::json> timings;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

inline nlohmann::json to_json(const ResultDocument& d) {
  nlohmann::json j;
  j["schema_version"] = d.schema;
  j["command"] = d.command;
  if (d.cycle_type) j["cycle_type"] = render(*d.cycle_type);
  if (!d.data.empty()) j["data"] = d.data;
  if (!d.embeddings.empty()) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : d.embeddings) {
      nlohmann::json x{{"label", e.label}, {"permutation", e.embedding.perm().vector()}};
      if (!e.steps.empty()) {
        x["trace"] = plan_to_json(e.steps);
        std::vector<std::string> names;
        for (const auto& s : e.steps) names.push_back(s.op);
        x["steps"] = names;
      }
      list.push_back(std::move(x));
    }
    j["embeddings"] = std::move(list);
  }
  if (!d.certificates.empty()) j["certificates"] = d.certificates;
  if (d.timings) j["timings"] = *d.timings;
  return j;
}

// Embeddings are re-validated against the cycle type, and traces replayed.
inline ResultDocument result_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("result document must be a JSON object");
  if (j.value("schema_version", "") != schema_version) {
    throw FixtureError("unsupported schema_version '" + j.value("schema_version", "") + "'");
  }
  ResultDocument d;
  d.command = j.at("command").get<std::string>();
  if (j.contains("cycle_type")) d.cycle_type = parse_cycle_type(j["cycle_type"].get<std::string>());
  d.data = j.value("data", nlohmann::json::object());
  for (const auto& x : j.value("embeddings", nlohmann::json::array())) {
    if (!d.cycle_type) throw FixtureError("embeddings without a cycle type");
    const Graph g = realize(*d.cycle_type);
    std::optional<EmbeddingCheck> check;
    try {
      check = check_embedding(g, Permutation(x.at("permutation").get<std::vector<Vertex>>()));
    } catch (const GraphError& e) {
      throw FixtureError(std::string("stored permutation: ") + e.what());
    }
    if (!check->valid()) throw FixtureError("stored permutation is not an embedding");
    EmbeddingRecord rec{x.value("label", ""), *check->embedding, {}};
    if (x.contains("trace")) {
      rec.steps = plan_from_json(x["trace"]);
      if (execute(*d.cycle_type, rec.steps).result.perm() != rec.embedding.perm()) {
        throw FixtureError("stored trace does not reproduce its permutation");
      }
    }
    d.embeddings.push_back(std::move(rec));
  }
  d.certificates = j.value("certificates", std::vector<std::string>{});
  if (j.contains("timings")) d.timings = j["timings"];
  return d;
}

inline std::string dump(const ResultDocument& d) { return to_json(d).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// DOT

struct ColoredEdges {
  int order = 0;
  std::vector<Edge> black;
  std::vector<Edge> red;

  friend bool operator==(const ColoredEdges&, const ColoredEdges&) = default;
};

inline void write_dot(std::ostream& out, const PackingSum& s) {
  out << "graph packing {\n  node [shape=circle];\n";
  for (Vertex v = 0; v < s.sum.order(); ++v) out << "  " << v << ";\n";
  for (const Edge& e : s.black.edges()) out << "  " << e.u << " -- " << e.v << " [color=black, style=solid];\n";
  for (const Edge& e : s.red.edges()) out << "  " << e.u << " -- " << e.v << " [color=red, style=dashed];\n";
  out << "}\n";
}

inline std::string to_dot(const PackingSum& s) {
  std::ostringstream o;
  write_dot(o, s);
  return o.str();
}

// Reads back what write_dot emits.
inline ColoredEdges parse_dot(std::istream& in) {
  static const std::regex node(R"(^\s*(\d+)\s*;\s*$)");
  static const std::regex edge(R"(^\s*(\d+)\s*--\s*(\d+)\s*\[color=(black|red), style=(solid|dashed)\];\s*$)");
  ColoredEdges out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (line.rfind("graph ", 0) == 0) {
      header = true;
    } else if (std::regex_match(line, m, node)) {
      out.order = std::max(out.order, std::stoi(m[1]) + 1);
    } else if (std::regex_match(line, m, edge)) {
      const bool black = m[3] == "black";
      if (black != (m[4] == "solid")) throw ParseError("edge colour and style disagree: " + line);
      (black ? out.black : out.red).push_back(Edge(std::stoi(m[1]), std::stoi(m[2])));
    } else if (line.find_first_not_of(" \t") != std::string::npos && line.find("node [") == std::string::npos &&
               line != "}") {
      throw ParseError("unexpected DOT line: " + line);
    }
  }
  if (!header) throw ParseError("missing graph header");
  return out;
}

inline ColoredEdges colored_edges(const PackingSum& s) { return {s.sum.order(), s.black.edges(), s.red.edges()}; }

// ---------------------------------------------------------------------------
// Fixture files

inline nlohmann::json claims_to_json(const Claims& c) {
  nlohmann::json j = nlohmann::json::object();
  for (Invariant inv : all_invariants) {
    if (c[inv] != Require::any) j[std::string(name(inv))] = to_string(c[inv]);
  }
  if (c.complement) j["complement"] = render(*c.complement);
  return j;
}

inline Claims claims_from_json(const nlohmann::json& j) {
  Claims c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "complement") {
      c.complement = parse_cycle_type(it.value().get<std::string>());
      continue;
    }
    auto inv = invariant_from_name(it.key());
    if (!inv) throw FixtureError("unknown claim '" + it.key() + "'");
    c[*inv] = parse_require(it.value().get<std::string>());
  }
  return c;
}

inline nlohmann::json fixture_to_json(const Fixture& f) {
  nlohmann::json j{{"schema_version", schema_version},
                   {"name", f.spec.name},
                   {"cycle_type", render(f.spec.type)},
                   {"permutation", f.embedding.perm().vector()},
                   {"claims", claims_to_json(f.spec.claims)}};
  if (f.ladder) {
    const LadderRoles& r = f.ladder->roles;
    j["ladder"] = {{"designated_length", f.ladder->designated_length},
                   {"l_first", f.ladder->l_first},
                   {"roles", {{"r", r.r}, {"s", r.s}, {"pc", r.pc}, {"qc", r.qc}, {"pd", r.pd}, {"qd", r.qd}}}};
  }
  return j;
}

// Schema check, then full re-validation of the permutation and every claim.
inline Fixture fixture_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("schema_version", "") != schema_version) {
    throw FixtureError("fixture schema mismatch");
  }
  const FixtureSpec& spec = fixture_spec(j.at("name").get<std::string>());
  if (parse_cycle_type(j.at("cycle_type").get<std::string>()) != spec.type) {
    throw FixtureError(spec.name + ": cycle type does not match the registered fixture");
  }
  if (claims_from_json(j.at("claims")) != spec.claims) {
    throw FixtureError(spec.name + ": declared claims do not match the registered fixture");
  }
  std::optional<std::pair<LadderRoles, int>> ladder;
  if (j.contains("ladder")) {
    const auto& l = j["ladder"];
    if (!spec.ladder_length || l.at("designated_length").get<int>() != *spec.ladder_length) {
      throw FixtureError(spec.name + ": ladder data does not match the registered fixture");
    }
    const auto& r = l.at("roles");
    ladder = std::pair{LadderRoles{r.at("r").get<Vertex>(), r.at("s").get<Vertex>(), r.at("pc").get<Vertex>(),
                                   r.at("qc").get<Vertex>(), r.at("pd").get<Vertex>(), r.at("qd").get<Vertex>()},
                       l.at("l_first").get<int>()};
  }
  std::optional<Permutation> perm;
  try {
    perm = Permutation(j.at("permutation").get<std::vector<Vertex>>());
  } catch (const GraphError& e) {
    throw FixtureError(spec.name + ": " + e.what());
  }
  return validate_fixture(spec, *perm, ladder);
}

inline void save_fixture(const Fixture& f, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << fixture_to_json(f).dump(2) << "\n";
}

inline Fixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FixtureError(path.string() + ": " + e.what());
  }
  return fixture_from_json(j);
}

// Source of fixture_data.hpp.
inline std::string fixture_header(const std::vector<Fixture>& fixtures) {
  std::ostringstream o;
  std::size_t ladders = 0;
  for (const auto& f : fixtures) ladders += f.ladder ? 1 : 0;
  o << "#pragma once\n\n// Generated by `tfpack fixtures regen`. Do not edit by hand.\n\n"
    << "#include <array>\n#include <string_view>\n\nnamespace tfpack::frozen {\n\n"
    << "struct FixtureRow {\n  std::string_view name;\n  std::string_view permutation;\n};\n\n"
    << "struct LadderRow {\n  std::string_view name;\n  int r, s, pc, qc, pd, qd;\n  int l_first;\n};\n\n"
    << "inline constexpr std::array<FixtureRow, " << fixtures.size() << "> fixture_rows{{\n";
  for (const auto& f : fixtures) {
    o << "    {\"" << f.spec.name << "\", \"" << format_permutation(f.embedding.perm()) << "\"},\n";
  }
  o << "}};\n\ninline constexpr std::array<LadderRow, " << ladders << "> ladder_rows{{\n";
  for (const auto& f : fixtures) {
    if (!f.ladder) continue;
    const LadderRoles& r = f.ladder->roles;
    o << "    {\"" << f.spec.name << "\", " << r.r << ", " << r.s << ", " << r.pc << ", " << r.qc << ", " << r.pd
      << ", " << r.qd << ", " << f.ladder->l_first << "},\n";
  }
  o << "}};\n\n}  // namespace tfpack::frozen\n";
  return o.str();
}

// Recomputes one fixture from its spec. Ladder bases try l_first = 1 and
// then 2.
inline Fixture regenerate_fixture(const FixtureSpec& spec) {
  if (spec.ladder_length) {
    for (int l_first : {1, 2}) {
      if (auto hit = search_ladder(spec, l_first)) {
        return validate_fixture(spec, hit->base.perm(), std::pair{hit->roles, hit->l_first});
      }
    }
    throw FixtureError(spec.name + ": no base packing with a working ladder");
  }
  auto e = search_fixture(spec);
  if (!e) throw FixtureError(spec.name + ": no packing satisfies the declared claims");
  return validate_fixture(spec, e->perm(), std::nullopt);
}

}  // namespace tfpack
