#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwcut/bnb.hpp"
#include "mwcut/formula.hpp"
#include "mwcut/gadgets.hpp"
#include "mwcut/graph.hpp"
#include "mwcut/honeycomb.hpp"
#include "mwcut/json_io.hpp"
#include "mwcut/oracles.hpp"
#include "mwcut/reduce_node.hpp"
#include "mwcut/transforms.hpp"

namespace mwcut {

// End-to-end consistency run over the reduction pipeline. Every stage either
// verifies an equivalence, or records that it was skipped and why; a skip is
// visible in the report, never silent. Stage failures capture the error and
// let later stages run where they can.
struct StageReport {
  std::string name;
  std::string status;  // "ok", "skipped", "failed"
  std::string detail;
  std::optional<Rat> optimum;
};

struct ChainReport {
  std::vector<StageReport> stages;
  bool ok() const {
    for (const auto& s : stages)
      if (s.status == "failed") return false;
    return true;
  }
};

struct ChainOptions {
  // Edge counts above these skip the stage rather than run an open-ended
  // exact solve; force_scale ignores them.
  size_t expanded_edge_guard = 150;
  size_t honeycomb_edge_guard = 400;
  size_t nmwc_vertex_guard = 250;
  bool force_scale = false;
  HoneycombParams honeycomb{9, 9, 9};
};

namespace detail {

inline void run_stage(ChainReport& rep, const std::string& name,
                      const std::function<StageReport()>& body) {
  StageReport s;
  s.name = name;
  try {
    s = body();
    s.name = name;
    if (s.status.empty()) s.status = "ok";
  } catch (const GuardError& e) {
    s.status = "skipped";
    s.detail = e.what();
  } catch (const std::exception& e) {
    s.status = "failed";
    s.detail = e.what();
  }
  rep.stages.push_back(s);
}

} // namespace detail

// Formula-level chain: satisfiability against the compiled decision at
// budget 7n+2m, then the same decision on the parallel-expanded instance.
// The honeycomb and node stages are skipped at formula scale: lattice
// parameters safe for the replacement argument produce instances far beyond
// exact solving, and the line-graph instance at corpus size is as hard. Both
// equivalences are exercised on micro instances by the instance-level chain.
inline ChainReport verify_chain(const Formula& f, const ChainOptions& opts = {}) {
  ChainReport rep;
  bool satisfiable = false;
  Assignment sat_a;
  std::optional<CompileResult> compiled;

  detail::run_stage(rep, "formula", [&] {
    StageReport s;
    FormulaVerdict v = validate_formula(f);
    if (!v.ok) throw GraphError(v.message);
    s.detail = "n=" + std::to_string(f.n) + " m=" + std::to_string(f.m());
    for (const auto& w : v.warnings) s.detail += "; " + w;
    return s;
  });

  detail::run_stage(rep, "sat", [&] {
    StageReport s;
    std::optional<Assignment> a = brute_force_sat(f);
    satisfiable = a.has_value();
    if (a) sat_a = *a;
    s.detail = satisfiable ? "satisfiable" : "unsatisfiable";
    return s;
  });

  detail::run_stage(rep, "weighted", [&] {
    StageReport s;
    compiled = compile_weighted(f);
    const Instance& inst = compiled->inst;
    SolveReport dec = bnb_emwc(inst, inst.budget);
    if (dec.feasible != satisfiable)
      throw GraphError(std::string("decision at budget disagrees with satisfiability: ") +
                       (dec.feasible ? "feasible" : "infeasible"));
    s.detail = "budget " + inst.budget.str() + ", " + std::to_string(dec.nodes_explored) +
               " nodes, " + (dec.feasible ? "feasible" : "infeasible");
    if (satisfiable) {
      std::set<int> canon = assignment_to_cut(f, compiled->trace, sat_a);
      CutVerdict cv = verify_cut(inst, {SolKind::EdgeSet, canon, cut_weight(inst.g, canon), {}});
      if (!cv.valid) throw GraphError("canonical cut of a satisfying assignment is invalid");
      if (!(cut_weight(inst.g, canon) == inst.budget))
        throw GraphError("canonical cut weight differs from budget");
      Assignment back = cut_to_assignment(f, compiled->trace, dec.witness.ids);
      if (!satisfies(f, back)) throw GraphError("decoded witness does not satisfy");
      s.optimum = dec.witness.weight;
      s.detail += ", canonical cut checks, witness decodes";
    }
    return s;
  });

  detail::run_stage(rep, "expanded", [&] {
    StageReport s;
    if (!compiled) throw GraphError("weighted stage did not produce an instance");
    Instance ex;
    ex.g = expand_parallel(compiled->inst.g);
    ex.kind = ProblemKind::Edge;
    ex.terminals = compiled->inst.terminals;
    ex.budget = compiled->inst.budget;
    if (ex.g.edges.size() > opts.expanded_edge_guard && !opts.force_scale)
      throw GuardError("expanded instance has " + std::to_string(ex.g.edges.size()) +
                       " edges, above the stage guard of " +
                       std::to_string(opts.expanded_edge_guard));
    SolveReport dec = bnb_emwc(ex, ex.budget);
    if (dec.feasible != satisfiable)
      throw GraphError("expanded decision disagrees with satisfiability");
    if (satisfiable) {
      std::set<int> orig = cut_ancestors(ex.g, dec.witness.ids);
      Rat w = cut_weight(compiled->inst.g, orig);
      if (!(w <= ex.budget))
        throw GraphError("expanded witness maps back above budget: " + w.str());
      s.optimum = dec.witness.weight;
    }
    s.detail = std::to_string(ex.g.edges.size()) + " unit edges, " +
               std::to_string(dec.nodes_explored) + " nodes, " +
               (dec.feasible ? "feasible" : "infeasible");
    return s;
  });

  detail::run_stage(rep, "honeycomb", [&]() -> StageReport {
    if (!compiled) throw GraphError("weighted stage did not produce an instance");
    int maxdeg = 0;
    MultiGraph ex = expand_parallel(compiled->inst.g);
    std::map<int, int> deg;
    for (const auto& e : ex.edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (auto& [v, d] : deg)
      if (!compiled->inst.is_terminal(v)) maxdeg = std::max(maxdeg, d);
    HoneycombParams safe;  // desk-scale safe parameters
    long long per = honeycomb_vertex_count(safe.rows, safe.cols);
    long long replaced = 0;
    for (auto& [v, d] : deg)
      if (d > 3 && !compiled->inst.is_terminal(v)) ++replaced;
    throw GuardError("lattice parameters safe for degree " + std::to_string(maxdeg) +
                     " produce about " + std::to_string(replaced * per) +
                     " vertices, beyond exact solving; covered by the instance-level chain");
  });

  detail::run_stage(rep, "nmwc", [&]() -> StageReport {
    if (!compiled) throw GraphError("weighted stage did not produce an instance");
    size_t lv = 3 * expand_parallel(compiled->inst.g).edges.size();
    throw GuardError("line graph would have " + std::to_string(lv) +
                     " vertices at budget " + compiled->inst.budget.str() +
                     "; covered by the instance-level chain");
  });

  return rep;
}

// Instance-level chain for micro edge instances: exact optimum with oracle
// cross-check, then equality through parallel expansion, honeycomb
// replacement, the line-graph node reduction, and the vertex-cover view of
// deletable terminals on the same topology.
inline ChainReport verify_chain(const Instance& micro, const ChainOptions& opts = {}) {
  ChainReport rep;
  if (micro.kind != ProblemKind::Edge) throw GraphError("instance chain expects an edge instance");
  Rat opt_w;
  bool have_opt = false;
  std::optional<Instance> expanded;

  detail::run_stage(rep, "instance", [&] {
    StageReport s;
    micro.check();
    DegreeProfile p = degree_profile(micro.g, micro.terminals);
    s.detail = std::to_string(micro.g.vertices.size()) + " vertices, " +
               std::to_string(micro.g.edges.size()) + " edges, max degree " +
               std::to_string(p.max_degree);
    return s;
  });

  detail::run_stage(rep, "edge-exact", [&] {
    StageReport s;
    SolveReport r = solve_exact_emwc(micro);
    opt_w = *r.optimum;
    have_opt = true;
    s.optimum = opt_w;
    s.detail = "optimum " + opt_w.str() + " in " + std::to_string(r.nodes_explored) + " nodes";
    try {
      OracleResult o = oracle_emwc(micro);
      if (!(o.optimum == opt_w))
        throw GraphError("oracle optimum " + o.optimum.str() + " != search optimum " + opt_w.str());
      s.detail += ", oracle agrees (" + o.method + ")";
    } catch (const GuardError&) {
      s.detail += ", oracle out of range";
    }
    return s;
  });

  detail::run_stage(rep, "expanded", [&] {
    StageReport s;
    if (!have_opt) throw GraphError("no edge optimum to compare against");
    for (const auto& e : micro.g.edges)
      if (!e.w.is_integer())
        throw GuardError("expansion needs integral weights (edge " + std::to_string(e.id) +
                         " weighs " + e.w.str() + ")");
    Instance ex;
    ex.g = expand_parallel(micro.g);
    ex.kind = ProblemKind::Edge;
    ex.terminals = micro.terminals;
    ex.budget = micro.budget;
    expanded = ex;
    SolveReport r = solve_exact_emwc(ex);
    if (!(*r.optimum == opt_w))
      throw GraphError("expanded optimum " + r.optimum->str() + " != " + opt_w.str());
    s.optimum = *r.optimum;
    s.detail = std::to_string(ex.g.edges.size()) + " unit edges, optimum preserved";
    return s;
  });

  detail::run_stage(rep, "honeycomb", [&] {
    StageReport s;
    if (!expanded) throw GuardError("expansion unavailable (non-integral weights)");
    std::map<int, int> deg;
    for (const auto& e : expanded->g.edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    int maxdeg = 0;
    for (auto& [v, d] : deg)
      if (!expanded->is_terminal(v)) maxdeg = std::max(maxdeg, d);
    if (maxdeg > 3 && !honeycomb_params_safe(opts.honeycomb, maxdeg))
      throw GuardError("lattice parameters unsafe for degree " + std::to_string(maxdeg));
    UnweightResult uw = unweight(*expanded, opts.honeycomb);
    if (uw.inst.g.edges.size() > opts.honeycomb_edge_guard && !opts.force_scale)
      throw GuardError("replaced instance has " + std::to_string(uw.inst.g.edges.size()) +
                       " edges, above the stage guard of " +
                       std::to_string(opts.honeycomb_edge_guard));
    SolveReport r = solve_exact_emwc(uw.inst);
    if (!(*r.optimum == opt_w))
      throw GraphError("honeycomb optimum " + r.optimum->str() + " != " + opt_w.str());
    s.optimum = *r.optimum;
    s.detail = std::to_string(uw.trace.blocks.size()) + " vertices replaced, " +
               std::to_string(uw.inst.g.edges.size()) + " edges, optimum preserved";
    return s;
  });

  detail::run_stage(rep, "nmwc", [&] {
    StageReport s;
    if (!expanded) throw GuardError("expansion unavailable (non-integral weights)");
    EmwcToNmwcResult red = emwc_to_nmwc(*expanded);
    if (red.inst.g.vertices.size() > opts.nmwc_vertex_guard && !opts.force_scale)
      throw GuardError("line graph has " + std::to_string(red.inst.g.vertices.size()) +
                       " vertices, above the stage guard of " +
                       std::to_string(opts.nmwc_vertex_guard));
    SolveReport r = solve_exact(red.inst);
    if (!(*r.optimum == opt_w))
      throw GraphError("node optimum " + r.optimum->str() + " != edge optimum " + opt_w.str());
    std::set<int> back = map_node_cut_back(red, r.witness.ids);
    Rat back_w = cut_weight(expanded->g, back);
    CutVerdict cv = verify_cut(*expanded, {SolKind::EdgeSet, back, back_w, {}});
    if (!cv.valid) throw GraphError("mapped-back node witness is not an edge cut");
    if (!(back_w <= opt_w))
      throw GraphError("mapped-back witness weighs " + back_w.str() + " > " + opt_w.str());
    s.optimum = *r.optimum;
    s.detail = std::to_string(red.inst.g.vertices.size()) +
               " line-graph vertices, optimum preserved, witness maps back";
    return s;
  });

  detail::run_stage(rep, "nmwc-dt", [&] {
    StageReport s;
    Instance dt = vc_to_nmwcdt(micro.g);
    int vc = vertex_cover_opt(micro.g);
    SolveReport rd = solve_exact(dt);
    if (!(*rd.optimum == Rat(vc)))
      throw GraphError("deletable-terminal optimum " + rd.optimum->str() +
                       " != vertex cover " + std::to_string(vc));
    DtToNodeResult pend = nmwcdt_to_nmwc(dt);
    SolveReport rp = solve_exact(pend.inst);
    if (!(*rp.optimum == *rd.optimum))
      throw GraphError("pendant reduction changed the optimum: " + rp.optimum->str());
    s.optimum = *rd.optimum;
    s.detail = "vertex cover " + std::to_string(vc) +
               " matches both deletable and pendant forms";
    return s;
  });

  return rep;
}

inline json chain_report_to_json(const ChainReport& r) {
  json o;
  o["ok"] = r.ok();
  json st = json::array();
  for (const auto& s : r.stages) {
    json so;
    so["name"] = s.name;
    so["status"] = s.status;
    so["detail"] = s.detail;
    if (s.optimum) so["optimum"] = s.optimum->str();
    st.push_back(so);
  }
  o["stages"] = st;
  return o;
}

} // namespace mwcut
