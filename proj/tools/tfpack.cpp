#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "tfpack/cli.hpp"

namespace fs = std::filesystem;
using namespace tfpack;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path.string());
}

void emit(const cli::Outcome& o, const std::optional<std::string>& out_path) {
  const std::string text = dump(o.doc);
  if (out_path) {
    write_file(*out_path, text);
  } else {
    std::cout << text;
  }
}

int report_error(const std::string& command, const std::string& kind, const std::string& message, int code) {
  ResultDocument doc;
  doc.command = command;
  doc.data["error"] = {{"kind", kind}, {"message", message}};
  std::cout << dump(doc);
  std::cerr << "tfpack " << command << ": " << message << "\n";
  return code;
}

Require require_flag(const std::string& s) { return s.empty() ? Require::any : parse_require(s); }

int fixtures_regen(const fs::path& dir, const fs::path& header, int jobs) {
  fs::create_directories(dir);
  const auto& specs = fixture_specs();
  std::vector<std::optional<Fixture>> found(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        found[i] = regenerate_fixture(specs[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::vector<Fixture> done;
  bool failed = false;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!found[i]) {
      std::cerr << specs[i].name << ": " << errors[i] << "\n";
      failed = true;
      continue;
    }
    save_fixture(*found[i], dir / (specs[i].name + ".json"));
    std::cerr << specs[i].name << ": " << format_permutation(found[i]->embedding.perm());
    if (found[i]->ladder) std::cerr << " (ladder from l=" << found[i]->ladder->l_first << ")";
    std::cerr << "\n";
    done.push_back(std::move(*found[i]));
  }
  write_file(header, fixture_header(done));
  return failed ? cli::internal : cli::ok;
}

// Files on disk and the compiled-in copies must agree and validate.
int fixtures_verify(const fs::path& dir) {
  ResultDocument doc;
  doc.command = "fixtures verify";
  bool failed = false;
  for (const auto& spec : fixture_specs()) {
    nlohmann::json row{{"name", spec.name}};
    try {
      const Fixture& built_in = fixture(spec.name);
      const Fixture on_disk = load_fixture(dir / (spec.name + ".json"));
      const bool same = built_in.embedding.perm() == on_disk.embedding.perm() &&
                        (built_in.ladder.has_value() == on_disk.ladder.has_value()) &&
                        (!built_in.ladder || (built_in.ladder->roles == on_disk.ladder->roles &&
                                              built_in.ladder->l_first == on_disk.ladder->l_first));
      row["ok"] = same;
      if (!same) row["error"] = "file differs from the compiled-in fixture";
      failed |= !same;
    } catch (const std::exception& e) {
      row["ok"] = false;
      row["error"] = e.what();
      failed = true;
    }
    doc.data["fixtures"].push_back(std::move(row));
  }
  std::cout << dump(doc);
  return failed ? cli::internal : cli::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packings of 2-factors into their complements"};
  app.require_subcommand(1);
  bool timings = false;
  app.add_flag("--timings", timings, "Include wall-clock timings in the output");

  std::string type_text;
  std::string mode = "both";
  auto* classify = app.add_subcommand("classify", "Classify a cycle type as not, uniquely or multiply embeddable");
  classify->add_option("type", type_text, "Cycle type, e.g. C3+C4 or 3+4")->required();
  classify->add_option("--mode", mode, "theorem, oracle or both")->check(CLI::IsMember({"theorem", "oracle", "both"}));

  cli::PackRequest req;
  std::string variant, split, require_k4, require_planar, require_bipartite;
  std::optional<int> shift, cycle;
  std::string dot_path;
  auto add_pack_options = [&](CLI::App* cmd) {
    cmd->add_option("type", type_text, "Cycle type")->required();
    cmd->add_option("--strategy", req.strategy, "auto, rotation, k4, triangles, bxy, unique, cross, divide or search")
        ->check(CLI::IsMember({"auto", "rotation", "k4", "triangles", "bxy", "unique", "cross", "divide", "search"}));
    cmd->add_option("--variant", variant, "Triangle variant A/B or bipartite/nonbipartite");
    cmd->add_option("--shift", shift, "Rotation shift");
    cmd->add_option("--cycle", cycle, "Cycle index for k4 (default: last)");
    cmd->add_option("--offset", req.offset, "Start position on that cycle for k4");
    cmd->add_option("--split", split, "First part of a divide, e.g. 3+5");
    cmd->add_option("--require-k4", require_k4)->check(CLI::IsMember({"yes", "no"}));
    cmd->add_option("--require-planar", require_planar)->check(CLI::IsMember({"yes", "no"}));
    cmd->add_option("--require-bipartite", require_bipartite)->check(CLI::IsMember({"yes", "no"}));
    cmd->add_flag("--connected", req.connected, "Require (or merge to) a connected sum");
  };
  auto* pack = app.add_subcommand("pack", "Construct an embedding");
  add_pack_options(pack);
  auto* exp = app.add_subcommand("export", "Construct an embedding and write its sum as DOT");
  add_pack_options(exp);
  exp->add_option("--dot", dot_path, "Output DOT file")->required();

  int n_max = 0;
  std::optional<std::string> out_path;
  CensusOptions census_opt;
  auto* census_cmd = app.add_subcommand("census", "Classify every cycle type up to n_max both ways");
  census_cmd->add_option("n_max", n_max)->required();
  census_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
  census_cmd->add_option("--jobs", census_opt.jobs, "Worker threads");
  census_cmd->add_flag("--exhaustive", census_opt.exhaustive, "Count every class instead of stopping at two");

  std::string fixtures_action;
  std::string fixtures_dir = "fixtures";
  std::string header_path = "include/tfpack/fixture_data.hpp";
  int fixture_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* fixtures = app.add_subcommand("fixtures", "Regenerate or verify the searched fixture packings");
  fixtures->add_option("action", fixtures_action)->required()->check(CLI::IsMember({"regen", "verify"}));
  fixtures->add_option("--dir", fixtures_dir, "Fixture JSON directory");
  fixtures->add_option("--header", header_path, "Generated header (regen only)");
  fixtures->add_option("--jobs", fixture_jobs, "Worker threads (regen only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::ok : cli::usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "classify") {
      const auto o = cli::cmd_classify(parse_cycle_type(type_text), cli::parse_mode(mode), timings);
      emit(o, std::nullopt);
      return o.exit_code;
    }
    if (command == "pack" || command == "export") {
      req.type = parse_cycle_type(type_text);
      if (!variant.empty()) req.variant = variant;
      req.shift = shift;
      req.cycle = cycle;
      if (!split.empty()) req.split = parse_cycle_type(split).lengths();
      req.constraints.k4 = require_flag(require_k4);
      req.constraints.planar = require_flag(require_planar);
      req.constraints.bipartite = require_flag(require_bipartite);
      auto o = cli::cmd_pack(req, timings);
      if (command == "export") {
        o.doc.command = "export";
        write_file(dot_path, cli::export_dot(req.type, o.doc.embeddings.front().embedding));
        o.doc.data["dot"] = dot_path;
      }
      emit(o, std::nullopt);
      return o.exit_code;
    }
    if (command == "census") {
      if (n_max < 3) throw std::invalid_argument("census needs n_max >= 3");
      if (n_max > census_default_max) {
        std::cerr << "tfpack census: warning: n_max " << n_max << " is above the default bound "
                  << census_default_max << "\n";
      }
      census_opt.override_soft_limit = true;
      const auto o = cli::cmd_census(n_max, census_opt, timings);
      emit(o, out_path);
      return o.exit_code;
    }
    if (command == "fixtures") {
      if (fixtures_action == "regen") return fixtures_regen(fixtures_dir, header_path, fixture_jobs);
      return fixtures_verify(fixtures_dir);
    }
  } catch (const FixtureError& e) {
    return report_error(command, "fixture", e.what(), cli::internal);
  } catch (const std::logic_error& e) {
    // ParseError, GraphError and friends derive from invalid_argument.
    if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) {
      return report_error(command, "usage", e.what(), cli::usage);
    }
    if (dynamic_cast<const std::length_error*>(&e) != nullptr) {
      return report_error(command, "size_limit", e.what(), cli::usage);
    }
    return report_error(command, "internal", e.what(), cli::internal);
  } catch (const ConstructionError& e) {
    return report_error(command, "construction", e.what(), cli::usage);
  } catch (const std::exception& e) {
    return report_error(command, "io", e.what(), cli::usage);
  }
  return cli::internal;
}
