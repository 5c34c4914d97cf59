#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwcut/formula.hpp"
#include "mwcut/gadgets.hpp"
#include "mwcut/graph.hpp"
#include "mwcut/honeycomb.hpp"

namespace mwcut {

// Structural properties of optimum cut sets, checked against an explicitly
// enumerated list of all optima. Checkers are pure so tests can feed them
// doctored optima lists as negative controls.
struct AuditResult {
  std::string name;
  std::string quantifier;
  bool passed = false;
  std::string detail;
};

// Every edge of every optimum joins two different components of the cut
// graph; an optimum never pays for an edge inside a surviving component.
inline AuditResult check_cut_edges_bridge(const Instance& inst,
                                          const std::vector<std::set<int>>& optima) {
  AuditResult r{"cut-edges-bridge", "forall-optima", true, ""};
  for (size_t i = 0; i < optima.size(); ++i) {
    std::map<int, int> comp_of = components(inst.g, optima[i], {});
    for (int eid : optima[i]) {
      const EdgeRec* e = inst.g.find_edge(eid);
      if (!e) throw GraphError("optimum references unknown edge " + std::to_string(eid));
      if (comp_of.at(e->u) == comp_of.at(e->v)) {
        r.passed = false;
        r.detail = "optimum " + std::to_string(i) + " keeps edge " + std::to_string(eid) +
                   " inside one component";
        return r;
      }
    }
  }
  r.detail = std::to_string(optima.size()) + " optima, every cut edge bridges";
  return r;
}

// For each edge at least as heavy as the rest of some non-terminal
// endpoint's edges combined, some optimum avoids it.
inline AuditResult check_heavy_edge_avoidable(const Instance& inst,
                                              const std::vector<std::set<int>>& optima) {
  AuditResult r{"heavy-edge-avoidable", "per-edge-exists-optimum", true, ""};
  std::map<int, Rat> wsum;
  for (const auto& e : inst.g.edges) {
    wsum[e.u] = wsum[e.u] + e.w;
    wsum[e.v] = wsum[e.v] + e.w;
  }
  int heavy = 0;
  for (const auto& e : inst.g.edges) {
    bool qual = false;
    for (int v : {e.u, e.v})
      if (!inst.is_terminal(v) && e.w >= wsum[v] - e.w) qual = true;
    if (!qual) continue;
    ++heavy;
    bool avoided = false;
    for (const auto& opt : optima)
      if (!opt.count(e.id)) { avoided = true; break; }
    if (!avoided) {
      r.passed = false;
      r.detail = "every optimum uses heavy edge " + std::to_string(e.id);
      return r;
    }
  }
  r.detail = std::to_string(heavy) + " heavy edges, each avoided by some optimum";
  return r;
}

// On a compiled instance, some optimum is the canonical cut of a satisfying
// assignment: one gadget base per variable, one base per clause, link
// connectors cut on the matching side, terminal edges untouched.
inline AuditResult check_canonical_optimum(const Formula& f, const GadgetTrace& tr,
                                           const std::vector<std::set<int>>& optima) {
  AuditResult r{"canonical-optimum-exists", "exists-optimum", false, ""};
  if (f.n > 20) throw GuardError("canonical audit needs n <= 20, got " + std::to_string(f.n));
  std::set<std::set<int>> opt_set(optima.begin(), optima.end());
  long long sat_count = 0;
  for (unsigned long long mask = 0; mask < (1ULL << f.n); ++mask) {
    Assignment a(f.n);
    for (int i = 0; i < f.n; ++i) a[i] = (mask >> (f.n - 1 - i)) & 1;
    if (!satisfies(f, a)) continue;
    ++sat_count;
    if (opt_set.count(assignment_to_cut(f, tr, a))) {
      r.passed = true;
      r.detail = "canonical cut of an assignment is an optimum (" +
                 std::to_string(sat_count) + " satisfying assignments seen)";
      return r;
    }
  }
  r.detail = sat_count == 0 ? "formula unsatisfiable, no canonical cut exists"
                            : "no canonical cut among the optima";
  return r;
}

// No optimum of a honeycomb-replaced instance cuts inside a honeycomb.
inline AuditResult check_honeycomb_avoidance(const HoneycombTrace& tr,
                                             const std::vector<std::set<int>>& optima) {
  AuditResult r{"honeycomb-internal-avoidance", "forall-optima", true, ""};
  std::set<int> internal;
  for (const auto& b : tr.blocks) internal.insert(b.internal_edges.begin(), b.internal_edges.end());
  for (size_t i = 0; i < optima.size(); ++i) {
    for (int eid : optima[i]) {
      if (internal.count(eid)) {
        r.passed = false;
        r.detail = "optimum " + std::to_string(i) + " cuts lattice edge " + std::to_string(eid);
        return r;
      }
    }
  }
  r.detail = std::to_string(optima.size()) + " optima avoid all " +
             std::to_string(internal.size()) + " lattice edges";
  return r;
}

} // namespace mwcut
