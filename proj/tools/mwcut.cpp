// Command-line front end: validate inputs, generate seeded formulas, run the
// reduction stages, solve instances exactly, verify whole chains, audit
// optimum structure, and export DOT drawings. JSON goes to stdout, notes and
// errors to stderr. Exit codes: 0 success, 1 failure, 2 usage, 3 decision
// infeasible, 4 size guard.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mwcut/audit.hpp"
#include "mwcut/bnb.hpp"
#include "mwcut/chain.hpp"
#include "mwcut/dot_export.hpp"
#include "mwcut/gadgets.hpp"
#include "mwcut/honeycomb.hpp"
#include "mwcut/json_io.hpp"
#include "mwcut/oracles.hpp"
#include "mwcut/reduce_node.hpp"
#include "mwcut/transforms.hpp"

using namespace mwcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitGuard = 4;

bool force_guards() {
  const char* v = std::getenv("MWCUT_FORCE_GUARDS");
  return v && std::string(v) == "1";
}

json read_input(const std::string& path) {
  if (path == "-") {
    json j;
    std::cin >> j;
    return j;
  }
  return read_json_file(path);
}

// Inputs may be bare or wrapped in the envelope a previous stage printed.
Instance load_instance(const json& j) {
  return instance_from_json(j.contains("instance") ? j.at("instance") : j);
}

Formula load_formula(const json& j) {
  return formula_from_json(j.contains("formula") ? j.at("formula") : j);
}

void emit(const json& j) { std::cout << canonical_dump(j); }

json witness_to_json(const CutSolution& sol) {
  json w;
  w["kind"] = sol.kind == SolKind::EdgeSet ? "edge-set" : "vertex-set";
  w["ids"] = std::vector<int>(sol.ids.begin(), sol.ids.end());
  w["weight"] = sol.weight.str();
  return w;
}

json audit_to_json(const std::vector<AuditResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json o;
    o["name"] = c.name;
    o["quantifier"] = c.quantifier;
    o["passed"] = c.passed;
    o["detail"] = c.detail;
    arr.push_back(o);
  }
  json out;
  out["checks"] = arr;
  bool all = true;
  for (const auto& c : checks) all = all && c.passed;
  out["ok"] = all;
  return out;
}

int run_validate(const std::string& formula_path, const std::string& instance_path) {
  if (!formula_path.empty()) {
    Formula f = load_formula(read_input(formula_path));
    FormulaVerdict v = validate_formula(f);
    json out;
    out["ok"] = v.ok;
    out["message"] = v.message;
    out["warnings"] = v.warnings;
    out["n"] = f.n;
    out["m"] = f.m();
    out["planar_certified"] = f.planar_certified;
    emit(out);
    return v.ok ? kExitOk : kExitFail;
  }
  Instance inst = load_instance(read_input(instance_path));  // check() runs on load
  DegreeProfile p = degree_profile(inst.g, inst.terminals);
  json out;
  out["ok"] = true;
  out["kind"] = kind_name(inst.kind);
  out["vertices"] = inst.g.vertices.size();
  out["edges"] = inst.g.edges.size();
  out["terminals"] = inst.terminals.size();
  out["k"] = inst.budget.str();
  out["max_degree"] = p.max_degree;
  out["weights"] = weight_values(inst.g);
  emit(out);
  return kExitOk;
}

int run_gen(unsigned long long seed, int vars, bool unsat, int max_tries) {
  Formula f;
  if (unsat) {
    std::optional<Formula> found = find_unsat_formula(seed, vars, max_tries);
    if (!found) {
      std::cerr << "no unsatisfiable formula with n=" << vars << " in " << max_tries
                << " tries from seed " << seed << "\n";
      return kExitFail;
    }
    f = *found;
  } else {
    f = gen_formula(seed, vars);
  }
  emit(formula_to_json(f));
  return kExitOk;
}

int run_reduce(const std::string& stage, const std::string& input, int rows, int cols, int sep) {
  json j = read_input(input);
  json out;
  if (stage == "compile") {
    CompileResult r = compile_weighted(load_formula(j));
    out["instance"] = instance_to_json(r.inst);
    out["trace"] = gadget_trace_to_json(r.trace);
  } else if (stage == "expand") {
    Instance src = load_instance(j);
    Instance ex;
    ex.g = expand_parallel(src.g);
    ex.kind = src.kind;
    ex.terminals = src.terminals;
    ex.budget = src.budget;
    out["instance"] = instance_to_json(ex);
    json anc;
    for (const auto& [id, from] : ex.g.ancestor) anc[std::to_string(id)] = from;
    out["ancestors"] = anc;
  } else if (stage == "unweight") {
    UnweightResult r = unweight(load_instance(j), HoneycombParams{rows, cols, sep});
    out["instance"] = instance_to_json(r.inst);
    out["trace"] = honeycomb_trace_to_json(r.trace);
  } else if (stage == "to-node") {
    EmwcToNmwcResult r = emwc_to_nmwc(load_instance(j));
    out["instance"] = instance_to_json(r.inst);
    json cl = json::array();
    for (const auto& [t, tc] : r.cliques) {
      json c;
      c["terminal"] = t;
      c["designated"] = tc.designated;
      c["members"] = tc.members;
      cl.push_back(c);
    }
    out["terminal_cliques"] = cl;
    json lh;
    for (const auto& [lv, he] : r.lvertex_to_hedge) lh[std::to_string(lv)] = he;
    out["lvertex_to_hedge"] = lh;
  } else if (stage == "dt-pendant") {
    DtToNodeResult r = nmwcdt_to_nmwc(load_instance(j));
    out["instance"] = instance_to_json(r.inst);
    json po;
    for (const auto& [t, p] : r.pendant_of) po[std::to_string(t)] = p;
    out["pendant_of"] = po;
  } else if (stage == "vc") {
    MultiGraph g = graph_from_json(j.contains("instance") ? j.at("instance") : j);
    out["instance"] = instance_to_json(vc_to_nmwcdt(g));
  } else {
    std::cerr << "unknown stage '" << stage
              << "' (compile|expand|unweight|to-node|dt-pendant|vc)\n";
    return kExitUsage;
  }
  emit(out);
  return kExitOk;
}

int run_solve(const std::string& input, const std::string& budget_str, bool all_optima,
              bool with_trace, bool deterministic) {
  Instance inst = load_instance(read_input(input));
  auto t0 = std::chrono::steady_clock::now();

  if (all_optima) {
    if (inst.kind != ProblemKind::Edge) {
      OracleResult o = oracle_node(inst, force_guards());
      json out;
      out["optimum"] = o.optimum.str();
      json opts = json::array();
      for (const auto& s : o.all_optima) opts.push_back(std::vector<int>(s.begin(), s.end()));
      out["optima"] = opts;
      out["method"] = o.method;
      emit(out);
      return kExitOk;
    }
    AllOptima a = enumerate_optima_emwc(inst, force_guards());
    json out;
    out["optimum"] = a.optimum.str();
    json opts = json::array();
    for (const auto& s : a.optima) opts.push_back(std::vector<int>(s.begin(), s.end()));
    out["optima"] = opts;
    out["nodes"] = a.nodes_explored;
    out["method"] = a.method;
    emit(out);
    return kExitOk;
  }

  SolveReport r;
  if (!budget_str.empty()) {
    Rat b = Rat::parse(budget_str);
    if (inst.kind == ProblemKind::Edge) {
      r = bnb_emwc(inst, b);
    } else {
      if (!b.is_integer()) throw GraphError("node budgets must be integers, got " + b.str());
      r = bnb_node(inst, b.num());
    }
  } else {
    r = solve_exact(inst);
  }

  json out;
  out["feasible"] = r.feasible;
  if (r.optimum) out["optimum"] = r.optimum->str();
  if (r.run_budget) out["budget"] = r.run_budget->str();
  if (r.feasible) out["witness"] = witness_to_json(r.witness);
  out["nodes"] = r.nodes_explored;
  out["method"] = r.method;
  out["root_lower_bound"] = r.root_lower_bound.str();
  if (with_trace) {
    json tr = json::array();
    for (const auto& [depth, bound] : r.bound_trace) tr.push_back({depth, bound.str()});
    out["bound_trace"] = tr;
    out["trace_truncated"] = r.trace_truncated;
  }
  if (!deterministic) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    out["millis"] = ms;
  }
  emit(out);
  return r.feasible ? kExitOk : kExitInfeasible;
}

int run_chain(const std::string& formula_path, const std::string& instance_path,
              int rows, int cols, int sep) {
  ChainOptions opts;
  opts.honeycomb = HoneycombParams{rows, cols, sep};
  opts.force_scale = force_guards();
  ChainReport rep;
  if (!formula_path.empty()) {
    rep = verify_chain(load_formula(read_input(formula_path)), opts);
  } else {
    rep = verify_chain(load_instance(read_input(instance_path)), opts);
  }
  emit(chain_report_to_json(rep));
  for (const auto& s : rep.stages)
    std::cerr << s.name << ": " << s.status << (s.detail.empty() ? "" : " - " + s.detail) << "\n";
  return rep.ok() ? kExitOk : kExitFail;
}

int run_audit(const std::string& formula_path, const std::string& instance_path,
              bool honeycomb, int rows, int cols, int sep) {
  std::vector<AuditResult> checks;
  if (!formula_path.empty()) {
    Formula f = load_formula(read_input(formula_path));
    CompileResult cr = compile_weighted(f);
    AllOptima a = enumerate_optima_emwc(cr.inst, force_guards());
    checks.push_back(check_cut_edges_bridge(cr.inst, a.optima));
    checks.push_back(check_heavy_edge_avoidable(cr.inst, a.optima));
    checks.push_back(check_canonical_optimum(f, cr.trace, a.optima));
  } else {
    Instance inst = load_instance(read_input(instance_path));
    AllOptima a = enumerate_optima_emwc(inst, force_guards());
    checks.push_back(check_cut_edges_bridge(inst, a.optima));
    checks.push_back(check_heavy_edge_avoidable(inst, a.optima));
    if (honeycomb) {
      UnweightResult uw = unweight(inst, HoneycombParams{rows, cols, sep});
      AllOptima ha = enumerate_optima_emwc(uw.inst, force_guards(), 400);
      checks.push_back(check_honeycomb_avoidance(uw.trace, ha.optima));
    }
  }
  emit(audit_to_json(checks));
  for (const auto& c : checks) {
    if (!c.passed) return kExitFail;
  }
  return kExitOk;
}

int run_import(const std::string& dimacs_path) {
  Formula f;
  if (dimacs_path == "-") {
    f = dimacs_import(std::cin);
  } else {
    f = dimacs_import_string(read_text_file(dimacs_path));
  }
  FormulaVerdict v = validate_formula(f);
  if (!v.ok) std::cerr << "note: imported formula fails validation: " << v.message << "\n";
  emit(formula_to_json(f));
  return kExitOk;
}

int run_export_dot(const std::string& input, bool with_cut) {
  Instance inst = load_instance(read_input(input));
  std::set<int> cut;
  if (with_cut) {
    SolveReport r = solve_exact(inst);
    if (r.feasible) cut = r.witness.ids;
  }
  std::cout << to_dot(inst, cut);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiway cut reduction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // let --deterministic sit on either side of the verb
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic,
               "omit timing so identical inputs give identical bytes");

  std::string formula_path, instance_path, input_path, stage, budget_str;
  unsigned long long seed = 1;
  int vars = 2, max_tries = 2000000;
  bool unsat = false, all_optima = false, with_trace = false, honeycomb = false,
       with_cut = false;
  int rows = 9, cols = 9, sep = 9;  // micro-scale lattice defaults

  auto add_hc = [&](CLI::App* cmd) {
    cmd->add_option("--rows", rows, "honeycomb rows");
    cmd->add_option("--cols", cols, "honeycomb cols");
    cmd->add_option("--sep", sep, "honeycomb slot separation");
  };

  CLI::App* validate = app.add_subcommand("validate", "check a formula or instance file");
  validate->add_option("--formula", formula_path, "formula json (- for stdin)");
  validate->add_option("--instance", instance_path, "instance json (- for stdin)");

  CLI::App* gen = app.add_subcommand("gen", "generate a seeded formula");
  gen->add_option("--seed", seed, "rng seed")->required();
  gen->add_option("--vars", vars, "variable count (>= 2)")->required();
  gen->add_flag("--unsat", unsat, "search for an unsatisfiable formula");
  gen->add_option("--max-tries", max_tries, "seeds to try in --unsat mode");

  CLI::App* reduce = app.add_subcommand("reduce", "run one reduction stage");
  reduce->add_option("stage", stage, "compile|expand|unweight|to-node|dt-pendant|vc")
      ->required();
  reduce->add_option("input", input_path, "input json (- for stdin)")->required();
  add_hc(reduce);

  CLI::App* solve = app.add_subcommand("solve", "exact solve or budget decision");
  solve->add_option("input", input_path, "instance json (- for stdin)")->required();
  solve->add_option("--budget", budget_str, "decide at this budget instead of solving exactly");
  solve->add_flag("--all-optima", all_optima, "enumerate every minimum cut");
  solve->add_flag("--trace", with_trace, "include the bound trace");

  CLI::App* chain = app.add_subcommand("verify-chain", "verify the reduction chain end to end");
  chain->add_option("--formula", formula_path, "formula json (- for stdin)");
  chain->add_option("--instance", instance_path, "edge instance json (- for stdin)");
  add_hc(chain);

  CLI::App* audit = app.add_subcommand("audit", "check structure of all optimum cuts");
  audit->add_option("--formula", formula_path, "formula json (- for stdin)");
  audit->add_option("--instance", instance_path, "edge instance json (- for stdin)");
  audit->add_flag("--honeycomb", honeycomb, "also audit the honeycomb replacement");
  add_hc(audit);

  std::string dimacs_path;
  CLI::App* import_cmd = app.add_subcommand("import", "convert DIMACS CNF to formula json");
  import_cmd->add_option("--dimacs", dimacs_path, "cnf file (- for stdin)")->required();

  CLI::App* dot = app.add_subcommand("export-dot", "write a graphviz drawing to stdout");
  dot->add_option("input", input_path, "instance json (- for stdin)")->required();
  dot->add_flag("--with-cut", with_cut, "solve exactly and highlight the witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  auto need_one = [&](const CLI::App* cmd) {
    if (formula_path.empty() == instance_path.empty()) {
      std::cerr << cmd->get_name() << " needs exactly one of --formula / --instance\n";
      return false;
    }
    return true;
  };

  try {
    if (validate->parsed()) {
      if (!need_one(validate)) return kExitUsage;
      return run_validate(formula_path, instance_path);
    }
    if (gen->parsed()) return run_gen(seed, vars, unsat, max_tries);
    if (reduce->parsed()) return run_reduce(stage, input_path, rows, cols, sep);
    if (solve->parsed())
      return run_solve(input_path, budget_str, all_optima, with_trace, deterministic);
    if (chain->parsed()) {
      if (!need_one(chain)) return kExitUsage;
      return run_chain(formula_path, instance_path, rows, cols, sep);
    }
    if (audit->parsed()) {
      if (!need_one(audit)) return kExitUsage;
      return run_audit(formula_path, instance_path, honeycomb, rows, cols, sep);
    }
    if (import_cmd->parsed()) return run_import(dimacs_path);
    if (dot->parsed()) return run_export_dot(input_path, with_cut);
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
