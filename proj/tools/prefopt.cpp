// prefopt: preference-query engine and semantic optimizer.
//
// Subcommands:
//   check     decide a semantic property of a preference relation
//   optimize  rewrite a query plan and explain the applied rules
//   run       execute a query plan over CSV data
//   gen       emit reduction-based stress instances with known verdicts
//
// Exit codes: 0 holds/ok, 1 refuted, 2 error, 3 verification mismatch.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefopt/catalog.hpp"
#include "prefopt/errors.hpp"
#include "prefopt/reduction.hpp"

namespace {

using namespace prefopt;

constexpr int kExitHolds = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitError = 2;
constexpr int kExitVerifyMismatch = 3;

struct CommonFiles {
  std::string schema_file;
  std::string prefs_file;
  std::string deps_file;
};

Catalog load_catalog(const CommonFiles& files) {
  Catalog cat;
  load_schema_file(cat, files.schema_file);
  if (!files.prefs_file.empty()) load_preference_file(cat, files.prefs_file);
  return cat;
}

std::vector<Cgd> load_deps(const Catalog& cat, const std::string& path) {
  if (path.empty()) return {};
  return load_dependency_file(cat, path);
}

void print_witness(const Relation& witness) {
  std::cout << "witness:\n" << to_csv(witness);
}

void print_width_span(const PreferenceRelation& pref, std::size_t budget) {
  try {
    auto [width, span] = width_span(to_dnf(pref.formula, budget));
    std::cout << "formula width: " << width << ", span: " << span << "\n";
  } catch (const BudgetError&) {
    std::cout << "formula width/span: over DNF budget\n";
  }
}

int run_check(const CommonFiles& files, const std::string& property, const std::string& pref_name,
              const std::string& pref2_name, const std::string& selection,
              const std::string& candidate, std::size_t dnf_budget) {
  Catalog cat = load_catalog(files);
  std::vector<Cgd> deps = load_deps(cat, files.deps_file);
  SolverOptions solver;

  std::cout << "property: " << property << "\n";
  if (property == "spo" || property == "wo") {
    const PreferenceRelation& pref = cat.preference(pref_name);
    print_width_span(pref, dnf_budget);
    OrderVerdict v = property == "spo" ? is_spo_rel(pref, deps, solver)
                                       : is_wo_rel(pref, deps, solver);
    if (v.holds) {
      std::cout << "verdict: holds\n";
      return kExitHolds;
    }
    std::cout << "verdict: refuted\nfailed-axiom: " << to_string(v.failed) << "\n";
    print_witness(v.witness);
    return kExitRefuted;
  }

  EntailmentResult result{false, {}};
  if (property == "contained") {
    result = contains_rel(cat.preference(pref_name), cat.preference(pref2_name), deps, solver);
  } else if (property == "redundant") {
    result = is_redundant_rel(cat.preference(pref_name), deps, solver);
  } else if (property == "commutes") {
    const PreferenceRelation& pref = cat.preference(pref_name);
    VarBindings env{{"t", pref.schema}};
    Formula sel = parse_formula(selection, env);
    result = commutes_selection_rel(sel, pref, deps, solver);
  } else if (property == "propagates") {
    const PreferenceRelation& pref = cat.preference(pref_name);
    Cgd f = parse_dependency_line(cat, candidate);
    result = propagates_rel(deps, pref, f, solver);
  } else {
    std::cerr << "error: unknown property '" << property << "'\n";
    return kExitError;
  }
  if (result.entailed) {
    std::cout << "verdict: entailed\n";
    return kExitHolds;
  }
  std::cout << "verdict: refuted\n";
  print_witness(result.witness);
  return kExitRefuted;
}

int run_optimize(const CommonFiles& files, const std::string& plan_file,
                 const std::string& candidates_file, const std::vector<std::string>& no_rules,
                 bool small_intermediate) {
  Catalog cat = load_catalog(files);
  std::vector<Cgd> base = load_deps(cat, files.deps_file);
  Plan plan = load_plan_file(cat, plan_file);

  OptimizeOptions opts;
  for (const std::string& r : no_rules) opts.disabled_rules.insert(r);
  opts.small_intermediate = small_intermediate;
  if (!candidates_file.empty()) opts.candidates = load_dependency_file(cat, candidates_file);

  auto [optimized, trace] = rewrite(plan, base, opts);
  propagate_deps(optimized, base, opts);
  choose_algorithm(optimized, opts);

  std::cout << "{\n\"plan\": " << plan_to_json(optimized, true) << ",\n\"trace\": "
            << trace_to_json(trace) << "\n}\n";
  std::cerr << "optimizer: " << trace.size() << " rule firing(s)\n";
  for (const RewriteStep& step : trace) {
    std::cerr << "  " << step.rule << " at depth " << step.depth << ": " << step.before
              << "  ->  " << step.after << "\n";
    for (const std::string& o : step.obligations) std::cerr << "      because " << o << "\n";
  }
  return kExitHolds;
}

int run_run(const CommonFiles& files, const std::string& plan_file, const std::string& data_dir,
            const std::string& algo, bool verify, bool verify_deps, bool optimize_first,
            std::size_t window_capacity) {
  Catalog cat = load_catalog(files);
  std::vector<Cgd> base = load_deps(cat, files.deps_file);
  Plan plan = load_plan_file(cat, plan_file);

  OptimizeOptions opt_opts;
  if (optimize_first) {
    auto [optimized, trace] = rewrite(plan, base, opt_opts);
    plan = std::move(optimized);
  }
  propagate_deps(plan, base, opt_opts);
  choose_algorithm(plan, opt_opts);

  // Load one CSV per scan table.
  std::map<std::string, Relation> data;
  for (const PlanNode* n = plan.root.get(); n != nullptr; n = n->input.get()) {
    if (n->kind != PlanNode::Kind::scan || data.count(n->table)) continue;
    std::filesystem::path path = std::filesystem::path(data_dir) / (n->table + ".csv");
    data.emplace(n->table, load_csv(n->schema, path.string()));
  }

  if (verify_deps) {
    for (const auto& [table, relation] : data) {
      std::vector<Cgd> local;
      for (const Cgd& f : base) {
        if (same_schema(f.schema, relation.schema)) local.push_back(f);
      }
      for (const DepCheck& check : check_deps(relation, local)) {
        if (check.satisfied) continue;
        std::cerr << "error: declared dependency violated by " << table << ": "
                  << check.dep->to_string() << "\nviolating tuples:\n";
        for (std::size_t idx : check.violation) {
          std::cerr << "  " << tuple_to_string(relation.rows[idx]) << "\n";
        }
        return kExitError;
      }
    }
  }

  ExecOptions exec;
  exec.verify = verify;
  exec.window.capacity = window_capacity;
  if (!algo.empty()) {
    exec.algo_override = algo_from_string(algo);
    std::cerr << "warning: forcing '" << algo
              << "' for every winnow; its order precondition is asserted, not checked"
              << (verify ? "" : " (use --verify to replay the reference evaluator)") << "\n";
  }
  Relation result = execute(plan, data, exec);
  write_csv(result, std::cout);
  return kExitHolds;
}

int run_gen(const std::string& kind, std::size_t size, std::uint64_t seed,
            const std::string& preset, const std::string& out_dir) {
  ReductionBundle bundle;
  if (kind == "m3sat") {
    bundle = gen_m3sat(size, seed);
  } else if (kind == "3color") {
    if (preset == "triangle") {
      bundle = gen_3color_graph(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle");
    } else if (preset == "k4") {
      bundle = gen_3color_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "K4");
    } else if (preset.empty()) {
      bundle = gen_3color(size, seed);
    } else {
      std::cerr << "error: unknown preset '" << preset << "'\n";
      return kExitError;
    }
  } else {
    std::cerr << "error: unknown generator kind '" << kind << "'\n";
    return kExitError;
  }

  std::string expected = bundle.expected_holds
                             ? (bundle.check_property == "wo" ? "holds" : "entailed")
                             : "refuted";
  std::cout << "# kind: " << bundle.kind << "\n# seed: " << bundle.seed << "\n# instance: "
            << bundle.description << "\n# check: " << bundle.check_property << " C\n"
            << "# expected: " << expected << "\n";
  std::cout << "== schema ==\n" << bundle.schema_text;
  std::cout << "== prefs ==\n" << bundle.preference_text;
  std::cout << "== deps ==\n" << bundle.deps_text;

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& text) {
      std::ofstream out(std::filesystem::path(out_dir) / name);
      if (!out) throw IoError("cannot write to " + out_dir + "/" + name);
      out << text;
    };
    write("schema.txt", bundle.schema_text);
    write("prefs.txt", bundle.preference_text);
    write("deps.txt", bundle.deps_text);
    write("expected.txt", bundle.check_property + " " + expected + "\n");
  }
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"preference-query engine and semantic optimizer"};
  app.require_subcommand(1);

  CommonFiles files;
  std::size_t dnf_budget = kDefaultDnfBudget;

  auto add_common = [&](CLI::App* cmd, bool need_prefs) {
    cmd->add_option("--schema", files.schema_file, "schema declarations file")->required();
    auto* prefs = cmd->add_option("--prefs", files.prefs_file, "preference definitions file");
    if (need_prefs) prefs->required();
    cmd->add_option("--deps", files.deps_file, "dependency file (default: none)");
    cmd->add_option("--dnf-budget", dnf_budget, "disjunct budget for DNF conversion");
  };

  // check
  std::string property, pref_name, pref2_name, selection, candidate;
  CLI::App* check = app.add_subcommand("check", "decide a semantic property");
  add_common(check, true);
  check->add_option("property", property, "spo | wo | contained | redundant | commutes | propagates")
      ->required();
  check->add_option("--pref", pref_name, "preference name")->required();
  check->add_option("--pref2", pref2_name, "second preference (contained)");
  check->add_option("--select", selection, "selection formula over t (commutes)");
  check->add_option("--candidate", candidate, "candidate dependency line (propagates)");

  // optimize
  std::string plan_file, candidates_file;
  std::vector<std::string> no_rules;
  bool small_intermediate = false;
  CLI::App* optimize = app.add_subcommand("optimize", "rewrite a plan with explain output");
  add_common(optimize, true);
  optimize->add_option("--plan", plan_file, "plan JSON file")->required();
  optimize->add_option("--no-rule", no_rules, "disable a rewrite rule (R1..R4)");
  optimize->add_option("--candidates", candidates_file,
                       "dependencies to promote through winnow nodes");
  optimize->add_flag("--small-intermediate", small_intermediate,
                     "assume inner winnow results are small; keep nested winnows when the "
                     "composition would not run as a single pass");

  // run
  std::string data_dir, algo;
  bool verify = false, verify_deps = false, optimize_first = false;
  std::size_t window_capacity = 64;
  CLI::App* run = app.add_subcommand("run", "execute a plan over CSV data");
  add_common(run, true);
  run->add_option("--plan", plan_file, "plan JSON file")->required();
  run->add_option("--data", data_dir, "directory with <table>.csv inputs")->required();
  run->add_option("--algo", algo, "force winnow algorithm: naive | bnl | wwo");
  run->add_option("--window", window_capacity, "BNL window capacity (default 64)");
  run->add_flag("--verify", verify, "replay the naive evaluator per winnow and diff");
  run->add_flag("--check-deps", verify_deps, "verify declared dependencies against the data");
  run->add_flag("--optimize", optimize_first, "rewrite the plan before executing");

  // gen
  std::string kind, preset, out_dir;
  std::size_t size = 6;
  std::uint64_t seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "generate a stress instance with a known verdict");
  gen->add_option("kind", kind, "m3sat | 3color")->required();
  gen->add_option("--size", size, "variables (m3sat, <= 12) or vertices (3color, <= 8)");
  gen->add_option("--seed", seed, "random seed (printed in the output)");
  gen->add_option("--preset", preset, "3color preset graph: triangle | k4");
  gen->add_option("--out", out_dir, "also write schema/prefs/deps/expected files here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      return run_check(files, property, pref_name, pref2_name, selection, candidate, dnf_budget);
    }
    if (optimize->parsed()) {
      return run_optimize(files, plan_file, candidates_file, no_rules, small_intermediate);
    }
    if (run->parsed()) {
      return run_run(files, plan_file, data_dir, algo, verify, verify_deps, optimize_first,
                     window_capacity);
    }
    if (gen->parsed()) {
      return run_gen(kind, size, seed, preset, out_dir);
    }
  } catch (const VerifyError& e) {
    std::cerr << "verification mismatch: " << e.what() << "\n";
    return kExitVerifyMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
