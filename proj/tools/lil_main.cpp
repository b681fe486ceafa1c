// Command-line front end. Everything goes through the C API in lil.h; this
// translation unit never touches the C++ core directly.
#include "lil.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::json;

// Exit codes: 0 pass, 1 a verified mathematical property failed, 2 input or
// usage error.
constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;

int exit_code_for(lil_status status) {
  if (status == LIL_OK) return kExitPass;
  if (status == LIL_ERR_ASSERTION) return kExitAssertion;
  return kExitInput;
}

struct PatternHandle {
  lil_pattern* ptr = nullptr;
  ~PatternHandle() { lil_pattern_free(ptr); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct Emitter {
  std::string command;
  Json inputs = Json::object();
  bool pretty = false;

  int emit(lil_status status, char* json_result, const char* outcome_key = "ok") {
    Json report;
    report["version"] = lil_version();
    report["command"] = command;
    report["inputs"] = inputs;
    if (status == LIL_OK && json_result) {
      Json details = Json::parse(json_result);
      lil_string_free(json_result);
      bool ok = true;
      if (details.is_object() && details.contains(outcome_key)) {
        ok = details.at(outcome_key).get<bool>();
      }
      report["outcome"] = ok ? "pass" : "fail";
      report["details"] = details;
      std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
      return ok ? kExitPass : kExitAssertion;
    }
    report["outcome"] = "error";
    report["error"] = Json{{"status", static_cast<int>(status)},
                           {"message", lil_last_error()}};
    std::cout << (pretty ? report.dump(2) : report.dump()) << "\n";
    std::cerr << "error: " << lil_last_error() << "\n";
    return exit_code_for(status);
  }
};

int pattern_cap_from_env() {
  if (const char* env = std::getenv("LIL_MAX_N")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0; // library default
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie ideals in digraph algebras: block structure, ideal "
               "enumeration, similarity checks, tower and nest verification"};
  app.require_subcommand(1);
  app.fallthrough(); // lets --pretty appear after the subcommand
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON report");

  std::string pattern_path, subspace_path, gens_path, lie_path, tower_path, csl_path;
  std::string seed_pairs, ideal_pairs, atoms = "1,1";
  std::uint64_t seed = 0;
  int trials = 100, samples = 200, cap = 0;
  bool ambient = false;

  auto* validate = app.add_subcommand("validate", "block structure of a pattern");
  validate->add_option("pattern", pattern_path, "pattern file (.pat)")->required();

  auto* ideals = app.add_subcommand("ideals", "off-diagonal associative ideals");
  auto* ideals_enum = ideals->add_subcommand("enumerate", "list every ideal");
  ideals_enum->add_option("pattern", pattern_path)->required();
  ideals_enum->add_option("--cap", cap, "strict-pair cap for enumeration");
  auto* ideals_close = ideals->add_subcommand("close", "up-closure of seed pairs");
  ideals_close->add_option("pattern", pattern_path)->required();
  ideals_close->add_option("--seed", seed_pairs, "pairs like \"(1,2);(2,3)\"")->required();

  auto* lie = app.add_subcommand("lie", "Lie ideal operations");
  auto* lie_check = lie->add_subcommand("check", "is the subspace a Lie ideal");
  lie_check->add_option("pattern", pattern_path)->required();
  lie_check->add_option("--subspace", subspace_path, "subspace JSON file")->required();
  lie_check->add_flag("--ambient", ambient, "allow subspaces of the full matrix space");
  auto* lie_gen = lie->add_subcommand("generate", "smallest Lie ideal containing generators");
  lie_gen->add_option("pattern", pattern_path)->required();
  lie_gen->add_option("--gens", gens_path, "generators JSON file")->required();
  lie_gen->add_flag("--ambient", ambient);
  auto* lie_dec = lie->add_subcommand("decompose", "split into addend plus ideal");
  lie_dec->add_option("pattern", pattern_path)->required();
  lie_dec->add_option("--subspace", subspace_path)->required();
  auto* lie_max = lie->add_subcommand("max-addend", "largest addend for an ideal");
  lie_max->add_option("pattern", pattern_path)->required();
  lie_max->add_option("--ideal", ideal_pairs, "block pairs like \"(1,3)\"")->required();

  auto* sim = app.add_subcommand("sim", "similarity invariance");
  auto* sim_check = sim->add_subcommand("check", "conjugation trials on a Lie ideal");
  sim_check->add_option("pattern", pattern_path)->required();
  sim_check->add_option("--lie", lie_path, "Lie ideal subspace JSON")->required();
  sim_check->add_option("--trials", trials);
  sim_check->add_option("--seed", seed);

  auto* tower = app.add_subcommand("tower", "refinement towers");
  auto* tower_run = tower->add_subcommand("run", "structure pipeline on a tower");
  tower_run->add_option("tower", tower_path, "tower JSON file")->required();
  tower_run->add_option("--gens", gens_path, "generators JSON at the top level");
  tower_run->add_option("--seed", seed);

  auto* nest = app.add_subcommand("nest", "analytic path checks");
  auto* nest_check = nest->add_subcommand("check", "disk sampling on a truncation");
  nest_check->add_option("--atoms", atoms, "comma-separated atom sizes")->required();
  nest_check->add_option("--samples", samples);
  nest_check->add_option("--seed", seed);
  nest_check->add_option("--csl", csl_path, "CSL mask pattern (.pat)");

  auto* suite = app.add_subcommand("suite", "run the built-in verification suite");
  suite->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  Emitter out;
  out.pretty = pretty;

  const auto load_pattern = [&](PatternHandle& h) {
    const lil_status st = lil_pattern_read_file(pattern_path.c_str(), &h.ptr);
    if (st != LIL_OK) throw st;
    out.inputs["pattern"] = pattern_path;
  };

  try {
    char* result = nullptr;
    if (validate->parsed()) {
      out.command = "validate";
      PatternHandle p;
      load_pattern(p);
      const lil_status st = lil_validate(p.ptr, &result);
      return out.emit(st, result, "no-flag");
    }
    if (ideals_enum->parsed()) {
      out.command = "ideals enumerate";
      PatternHandle p;
      load_pattern(p);
      // Cap precedence: --cap, then LIL_MAX_N (pair cap = twice the scalar
      // cap, preserving the 12/24 defaults), then the library default.
      if (cap == 0 && pattern_cap_from_env() > 0) cap = 2 * pattern_cap_from_env();
      if (cap > 0) out.inputs["cap"] = cap;
      const lil_status st = lil_ideals_enumerate(p.ptr, cap, &result);
      return out.emit(st, result, "no-flag");
    }
    if (ideals_close->parsed()) {
      out.command = "ideals close";
      PatternHandle p;
      load_pattern(p);
      out.inputs["seed_pairs"] = seed_pairs;
      const lil_status st = lil_ideals_close(p.ptr, seed_pairs.c_str(), &result);
      return out.emit(st, result, "no-flag");
    }
    if (lie_check->parsed()) {
      out.command = "lie check";
      PatternHandle p;
      load_pattern(p);
      out.inputs["subspace"] = subspace_path;
      out.inputs["ambient"] = ambient;
      const std::string body = read_file(subspace_path);
      const lil_status st = lil_lie_check(p.ptr, body.c_str(), ambient ? 1 : 0, &result);
      return out.emit(st, result, "no-flag");
    }
    if (lie_gen->parsed()) {
      out.command = "lie generate";
      PatternHandle p;
      load_pattern(p);
      out.inputs["gens"] = gens_path;
      out.inputs["ambient"] = ambient;
      const std::string body = read_file(gens_path);
      const lil_status st = lil_lie_generate(p.ptr, body.c_str(), ambient ? 1 : 0, &result);
      return out.emit(st, result, "no-flag");
    }
    if (lie_dec->parsed()) {
      out.command = "lie decompose";
      PatternHandle p;
      load_pattern(p);
      out.inputs["subspace"] = subspace_path;
      const std::string body = read_file(subspace_path);
      const lil_status st = lil_lie_decompose(p.ptr, body.c_str(), &result);
      return out.emit(st, result, "no-flag");
    }
    if (lie_max->parsed()) {
      out.command = "lie max-addend";
      PatternHandle p;
      load_pattern(p);
      out.inputs["ideal"] = ideal_pairs;
      const lil_status st = lil_lie_max_addend(p.ptr, ideal_pairs.c_str(), &result);
      return out.emit(st, result, "is_lie_ideal");
    }
    if (sim_check->parsed()) {
      out.command = "sim check";
      PatternHandle p;
      load_pattern(p);
      out.inputs["lie"] = lie_path;
      out.inputs["trials"] = trials;
      out.inputs["seed"] = seed;
      const std::string body = read_file(lie_path);
      const lil_status st = lil_sim_check(p.ptr, body.c_str(), trials, seed, &result);
      return out.emit(st, result);
    }
    if (tower_run->parsed()) {
      out.command = "tower run";
      out.inputs["tower"] = tower_path;
      out.inputs["seed"] = seed;
      Json spec = Json::parse(read_file(tower_path));
      // Resolve {"file": ...} level references relative to the given path.
      if (spec.contains("levels")) {
        const auto slash = tower_path.find_last_of('/');
        const std::string dir =
            slash == std::string::npos ? "" : tower_path.substr(0, slash + 1);
        for (auto& level : spec.at("levels")) {
          if (level.is_object() && level.contains("file")) {
            level = Json{{"text", read_file(dir + level.at("file").get<std::string>())}};
          }
        }
      }
      std::string gens_body;
      if (!gens_path.empty()) {
        gens_body = read_file(gens_path);
        out.inputs["gens"] = gens_path;
      }
      const std::string spec_text = spec.dump();
      const lil_status st = lil_tower_run(spec_text.c_str(),
                                          gens_path.empty() ? nullptr : gens_body.c_str(),
                                          seed, pattern_cap_from_env(), &result);
      return out.emit(st, result);
    }
    if (nest_check->parsed()) {
      out.command = "nest check";
      out.inputs["atoms"] = atoms;
      out.inputs["samples"] = samples;
      out.inputs["seed"] = seed;
      std::string mask_body;
      if (!csl_path.empty()) {
        mask_body = read_file(csl_path);
        out.inputs["csl"] = csl_path;
      }
      const lil_status st = lil_nest_check(atoms.c_str(), samples, seed,
                                           csl_path.empty() ? nullptr : mask_body.c_str(),
                                           &result);
      return out.emit(st, result);
    }
    if (suite->parsed()) {
      out.command = "suite";
      out.inputs["seed"] = seed;
      const lil_status st = lil_suite_run(seed, &result);
      return out.emit(st, result, "all_pass");
    }
  } catch (const lil_status status) {
    return out.emit(status, nullptr);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  std::cerr << "error: no subcommand\n";
  return kExitInput;
}
