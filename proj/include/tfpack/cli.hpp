#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "tfpack/constructive.hpp"
#include "tfpack/io.hpp"
#include "tfpack/search.hpp"

namespace tfpack::cli {

enum ExitCode { ok = 0, usage = 1, internal = 2, disagreement = 3 };

enum class Mode { theorem, oracle, both };

inline Mode parse_mode(std::string_view s) {
  if (s == "theorem") return Mode::theorem;
  if (s == "oracle") return Mode::oracle;
  if (s == "both") return Mode::both;
  throw ParseError("unknown mode '" + std::string(s) + "'");
}

struct Outcome {
  ResultDocument doc;
  int exit_code = ok;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline nlohmann::json witnesses_json(const Classification& c) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : c.witnesses) out.push_back(w.perm().vector());
  return out;
}

}  // namespace detail

inline Outcome cmd_classify(const CycleType& ct, Mode mode, bool timings = false) {
  detail::Stopwatch clock;
  Outcome out;
  out.doc.command = "classify";
  out.doc.cycle_type = ct;
  auto& data = out.doc.data;
  data["mode"] = mode == Mode::theorem ? "theorem" : mode == Mode::oracle ? "oracle" : "both";
  std::optional<Verdict> theorem;
  if (mode != Mode::oracle) {
    theorem = classify_by_theorem(ct);
    data["theorem"] = to_string(*theorem);
  }
  if (mode != Mode::theorem) {
    ClassifyOptions opt;
    opt.search.override_soft_limit = true;
    const Classification c = classify_by_oracle(ct, opt);
    data["oracle"] = to_string(c.verdict);
    data["exhausted"] = c.exhausted;
    data["classes_found"] = c.class_count;
    const Graph g = realize(ct);
    for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
      out.doc.embeddings.push_back({"witness " + std::to_string(i + 1), c.witnesses[i], {}});
    }
    if (c.witnesses.size() == 2) {
      if (auto cert = distinguish(make_sum(g, c.witnesses[0]).sum, make_sum(g, c.witnesses[1]).sum)) {
        out.doc.certificates.push_back(cert->describe());
      }
    }
    if (theorem) {
      const bool agree = *theorem == c.verdict;
      data["agreement"] = agree;
      if (!agree) out.exit_code = disagreement;
    }
  }
  if (timings) out.doc.timings = nlohmann::json{{"seconds", clock.seconds()}};
  return out;
}

struct PackRequest {
  CycleType type;
  std::string strategy = "auto";
  std::optional<std::string> variant;
  std::optional<int> shift;
  std::optional<int> cycle;
  int offset = 0;
  std::optional<std::vector<int>> split;
  SearchConstraints constraints;
  bool connected = false;
};

inline bool has_constraints(const SearchConstraints& c) {
  return std::any_of(all_invariants.begin(), all_invariants.end(), [&](Invariant i) { return c[i] != Require::any; });
}

// The plan a non-automatic strategy stands for.
inline Plan strategy_plan(const PackRequest& r) {
  const CycleType& ct = r.type;
  const std::string& s = r.strategy;
  if (s == "rotation") {
    if (ct.cycle_count() != 1) throw ConstructionError("rotation applies to a single cycle");
    const int n = ct.total();
    int shift = 2;
    if (r.shift) {
      shift = *r.shift;
    } else if (n % 2 == 0) {
      if (n < 8) throw ConstructionError("no coprime shift for C" + std::to_string(n));
      shift = choose_coprime_shift(n);
    }
    return {step::rotation(shift)};
  }
  if (s == "k4") return {step::k4(r.cycle.value_or(ct.cycle_count() - 1), r.offset)};
  if (s == "triangles") return {step::triangles(parse_triangle_variant(r.variant.value_or("")))};
  if (s == "bxy") return {step::bxy(parse_bxy_variant(r.variant.value_or("bipartite")))};
  if (s == "unique") return {step::unique()};
  if (s == "cross") return {step::cross()};
  if (s == "divide") {
    std::optional<std::vector<int>> part = r.split;
    if (!part) part = tfpack::detail::packable_split(ct);
    if (!part) throw ConstructionError(render(ct) + " has no split into two packable parts");
    return tfpack::detail::divide_plan(ct, *part);
  }
  if (s == "search") return {step::search(r.constraints)};
  throw ParseError("unknown strategy '" + s + "'");
}

inline Outcome cmd_pack(const PackRequest& r, bool timings = false) {
  detail::Stopwatch clock;
  Outcome out;
  out.doc.command = "pack";
  out.doc.cycle_type = r.type;
  out.doc.data["strategy"] = r.strategy;
  const Verdict v = classify_by_theorem(r.type);
  if (v == Verdict::not_embeddable) throw ConstructionError(render(r.type) + " is " + to_string(v));

  SearchConstraints wanted = r.constraints;
  if (r.connected) wanted.connected = Require::yes;
  const bool constrained = has_constraints(wanted);

  if (r.strategy == "auto" && !constrained) {
    if (v == Verdict::multiply_embeddable) {
      TwoEmbeddings two = two_distinct_embeddings(r.type);
      out.doc.embeddings.push_back({"first", two.first.result, two.first.steps});
      out.doc.embeddings.push_back({"second", two.second.result, two.second.steps});
      out.doc.certificates.push_back(two.certificate.describe());
    } else {
      ConstructionTrace t = any_embedding(r.type);
      out.doc.embeddings.push_back({"embedding", t.result, t.steps});
    }
  } else {
    Plan plan;
    if (r.strategy == "auto" || r.strategy == "search") {
      plan = {step::search(wanted)};
    } else {
      plan = strategy_plan(r);
      if (r.connected) plan.push_back(step::connect());
    }
    ConstructionTrace t = execute(r.type, plan);
    const Graph sum = make_sum(realize(r.type), t.result).sum;
    for (Invariant inv : all_invariants) {
      if (wanted[inv] == Require::any) continue;
      if (evaluate(inv, sum) != (wanted[inv] == Require::yes)) {
        throw ConstructionError("strategy " + r.strategy + " does not give " + std::string(name(inv)) + "=" +
                                to_string(wanted[inv]) + " for " + render(r.type));
      }
    }
    out.doc.embeddings.push_back({"embedding", t.result, t.steps});
  }
  for (auto& e : out.doc.embeddings) {
    // Never emit an unchecked permutation.
    e.embedding = Embedding::verified(realize(r.type), e.embedding.perm());
  }
  if (timings) out.doc.timings = nlohmann::json{{"seconds", clock.seconds()}};
  return out;
}

inline Outcome cmd_census(int n_max, const CensusOptions& opt, bool timings = false) {
  detail::Stopwatch clock;
  const CensusReport report = census(n_max, opt);
  Outcome out;
  out.doc.command = "census";
  auto& data = out.doc.data;
  data["n_max"] = n_max;
  data["disagreements"] = report.disagreements;
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json row_times = nlohmann::json::object();
  for (const auto& row : report.rows) {
    nlohmann::json x{{"cycle_type", render(row.type)},
                     {"theorem", to_string(row.theorem)},
                     {"oracle", to_string(row.oracle.verdict)},
                     {"agreement", row.agreement},
                     {"exhausted", row.oracle.exhausted},
                     {"classes_found", row.oracle.class_count},
                     {"witnesses", detail::witnesses_json(row.oracle)}};
    if (!row.certificate.empty()) x["certificate"] = row.certificate;
    rows.push_back(std::move(x));
    row_times[render(row.type)] = row.seconds;
  }
  data["rows"] = std::move(rows);
  data["row_count"] = report.rows.size();
  if (timings) out.doc.timings = nlohmann::json{{"seconds", clock.seconds()}, {"rows", row_times}};
  if (report.disagreements != 0) out.exit_code = disagreement;
  return out;
}

inline std::string export_dot(const CycleType& ct, const Embedding& e) { return to_dot(make_sum(realize(ct), e)); }

}  // namespace tfpack::cli
