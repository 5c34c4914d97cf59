#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwcut/rational.hpp"

namespace mwcut {

// Structured errors. Messages always name the offending id or rule so a
// failing pipeline points at its input, not at a stack trace.
struct GraphError : std::runtime_error {
  explicit GraphError(const std::string& m) : std::runtime_error(m) {}
};

// A size guard tripped (oracle or enumeration asked to run beyond its
// validated range). CLI maps this to its own exit code.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& m) : std::runtime_error(m) {}
};

struct EdgeRec {
  int id = -1;
  int u = -1;
  int v = -1;
  Rat w = Rat(1);
};

// Undirected multigraph. Parallel edges are allowed and are distinct objects
// with their own ids; self-loops are not. Edge ids are unique and stable:
// transforms hand out fresh ids for new edges and record ancestry for derived
// ones. An optional rotation system stores, per vertex, a cyclic order of its
// incident edge ids (used only by the honeycomb attachment logic and by DOT
// metadata; it never influences cut values).
//
// Instances of this struct are treated as immutable once built: every
// operation takes a const reference and returns a fresh graph.
struct MultiGraph {
  std::vector<int> vertices;                 // unique, kept sorted
  std::map<int, std::string> labels;         // optional, per vertex
  std::vector<EdgeRec> edges;                // unique ids
  std::map<int, std::vector<int>> rotation;  // optional
  std::map<int, int> ancestor;               // edge id -> pre-transform edge id

  bool has_vertex(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }

  const EdgeRec* find_edge(int id) const {
    for (const auto& e : edges)
      if (e.id == id) return &e;
    return nullptr;
  }

  int max_vertex_id() const { return vertices.empty() ? -1 : vertices.back(); }

  int max_edge_id() const {
    int m = -1;
    for (const auto& e : edges) m = std::max(m, e.id);
    return m;
  }

  void add_vertex(int v, const std::string& label = "") {
    if (has_vertex(v)) throw GraphError("duplicate vertex id " + std::to_string(v));
    vertices.insert(std::upper_bound(vertices.begin(), vertices.end(), v), v);
    if (!label.empty()) labels[v] = label;
  }

  int add_edge(int id, int u, int v, Rat w) {
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (!has_vertex(u)) throw GraphError("edge endpoint names unknown vertex " + std::to_string(u));
    if (!has_vertex(v)) throw GraphError("edge endpoint names unknown vertex " + std::to_string(v));
    if (!w.is_positive()) throw GraphError("edge " + std::to_string(id) + " has non-positive weight " + w.str());
    if (find_edge(id)) throw GraphError("duplicate edge id " + std::to_string(id));
    edges.push_back({id, u, v, w});
    return id;
  }

  // v -> list of (edge id, other endpoint), deterministic order (edge list order).
  std::map<int, std::vector<std::pair<int, int>>> adjacency() const {
    std::map<int, std::vector<std::pair<int, int>>> adj;
    for (int v : vertices) adj[v];
    for (const auto& e : edges) {
      adj[e.u].push_back({e.id, e.v});
      adj[e.v].push_back({e.id, e.u});
    }
    return adj;
  }

  // Full invariant sweep; throws GraphError naming the first violation.
  void check() const {
    std::set<int> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size()) throw GraphError("duplicate vertex ids");
    std::set<int> eids;
    for (const auto& e : edges) {
      if (!eids.insert(e.id).second)
        throw GraphError("duplicate edge id " + std::to_string(e.id));
      if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
      if (!vs.count(e.u)) throw GraphError("edge " + std::to_string(e.id) + " endpoint " + std::to_string(e.u) + " unknown");
      if (!vs.count(e.v)) throw GraphError("edge " + std::to_string(e.id) + " endpoint " + std::to_string(e.v) + " unknown");
      if (!e.w.is_positive()) throw GraphError("edge " + std::to_string(e.id) + " weight not positive");
    }
    for (const auto& [k, a] : ancestor) {
      (void)a;
      if (!eids.count(k)) throw GraphError("ancestry names unknown edge " + std::to_string(k));
    }
    if (!rotation.empty()) check_rotation();
  }

  // The rotation, when present, must list every incident edge of every vertex
  // exactly once and nothing else.
  void check_rotation() const {
    std::map<int, std::multiset<int>> incident;
    for (const auto& e : edges) {
      incident[e.u].insert(e.id);
      incident[e.v].insert(e.id);
    }
    for (int v : vertices) {
      auto it = rotation.find(v);
      std::multiset<int> listed;
      if (it != rotation.end()) listed = {it->second.begin(), it->second.end()};
      if (listed != incident[v])
        throw GraphError("rotation at vertex " + std::to_string(v) + " does not list incident edges exactly once");
    }
    for (const auto& [v, _] : rotation)
      if (!has_vertex(v)) throw GraphError("rotation names unknown vertex " + std::to_string(v));
  }
};

enum class ProblemKind { Edge, Node, NodeDeletable };

inline std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Edge: return "edge";
    case ProblemKind::Node: return "node";
    case ProblemKind::NodeDeletable: return "node-deletable";
  }
  return "?";
}

inline ProblemKind kind_from_name(const std::string& s) {
  if (s == "edge") return ProblemKind::Edge;
  if (s == "node") return ProblemKind::Node;
  if (s == "node-deletable") return ProblemKind::NodeDeletable;
  throw GraphError("unknown problem kind '" + s + "'");
}

// A problem instance: graph, ordered terminals, budget, kind. Terminal order
// is significant (it fixes pair reporting and clique bookkeeping downstream).
struct Instance {
  MultiGraph g;
  std::vector<int> terminals;
  Rat budget = Rat(0);
  ProblemKind kind = ProblemKind::Edge;

  void check() const {
    g.check();
    if (terminals.empty()) throw GraphError("instance has no terminals");
    std::set<int> seen;
    for (int t : terminals) {
      if (!g.has_vertex(t)) throw GraphError("terminal " + std::to_string(t) + " unknown");
      if (!seen.insert(t).second) throw GraphError("terminal " + std::to_string(t) + " listed twice");
    }
  }

  bool is_terminal(int v) const {
    return std::find(terminals.begin(), terminals.end(), v) != terminals.end();
  }
};

enum class SolKind { EdgeSet, VertexSet };

// A cut: either a set of edge ids (edge instances) or vertex ids (node
// instances). weight is the recomputable total (cardinality for node cuts);
// components is the residual component map, vertex id -> component index.
struct CutSolution {
  SolKind kind = SolKind::EdgeSet;
  std::set<int> ids;
  Rat weight = Rat(0);
  std::map<int, int> components;
};

// Connected components of g after deleting the given edges and vertices
// (edges incident to a deleted vertex go with it). Component indices are
// deterministic: ordered by the smallest vertex id they contain. Unknown ids
// in either removal set are structured errors.
inline std::map<int, int> components(const MultiGraph& g,
                                     const std::set<int>& removed_edges = {},
                                     const std::set<int>& removed_vertices = {}) {
  std::set<int> eids;
  for (const auto& e : g.edges) eids.insert(e.id);
  for (int id : removed_edges)
    if (!eids.count(id)) throw GraphError("removal names unknown edge " + std::to_string(id));
  for (int v : removed_vertices)
    if (!g.has_vertex(v)) throw GraphError("removal names unknown vertex " + std::to_string(v));

  std::map<int, std::vector<int>> adj;  // surviving adjacency, vertex -> neighbors
  for (int v : g.vertices)
    if (!removed_vertices.count(v)) adj[v];
  for (const auto& e : g.edges) {
    if (removed_edges.count(e.id)) continue;
    if (removed_vertices.count(e.u) || removed_vertices.count(e.v)) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  std::map<int, int> comp;
  int next = 0;
  // Ascending vertex order makes component indices ordered by smallest member.
  for (auto& [start, _] : adj) {
    if (comp.count(start)) continue;
    int idx = next++;
    std::vector<int> stack{start};
    comp[start] = idx;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int nb : adj[v]) {
        if (!comp.count(nb)) {
          comp[nb] = idx;
          stack.push_back(nb);
        }
      }
    }
  }
  return comp;
}

struct CutVerdict {
  bool valid = false;
  // First terminal pair (in instance order) still connected, when invalid.
  std::optional<std::pair<int, int>> violating_pair;
};

// Validates a solution against an instance: kind match, id existence, the
// no-deleted-terminal rule for kind node, weight recomputation, and finally
// pairwise terminal separation. Structural problems throw; a merely
// non-separating cut comes back as a verdict with the witnessing pair.
inline CutVerdict verify_cut(const Instance& inst, const CutSolution& sol) {
  const bool edge_kind = inst.kind == ProblemKind::Edge;
  if (edge_kind && sol.kind != SolKind::EdgeSet)
    throw GraphError("edge instance given a vertex-set solution");
  if (!edge_kind && sol.kind != SolKind::VertexSet)
    throw GraphError("node instance given an edge-set solution");

  Rat total(0);
  if (edge_kind) {
    for (int id : sol.ids) {
      const EdgeRec* e = inst.g.find_edge(id);
      if (!e) throw GraphError("solution names unknown edge " + std::to_string(id));
      total += e->w;
    }
  } else {
    for (int v : sol.ids) {
      if (!inst.g.has_vertex(v)) throw GraphError("solution names unknown vertex " + std::to_string(v));
      if (inst.kind == ProblemKind::Node && inst.is_terminal(v))
        throw GraphError("undeletable terminal " + std::to_string(v) + " in solution");
      total += Rat(1);
    }
  }
  if (total != sol.weight)
    throw GraphError("solution weight " + sol.weight.str() + " does not match recomputed " + total.str());

  std::map<int, int> comp = edge_kind ? components(inst.g, sol.ids, {})
                                      : components(inst.g, {}, sol.ids);

  for (size_t i = 0; i < inst.terminals.size(); ++i) {
    int a = inst.terminals[i];
    if (!edge_kind && sol.ids.count(a)) continue;  // deleted terminal: separated
    for (size_t j = i + 1; j < inst.terminals.size(); ++j) {
      int b = inst.terminals[j];
      if (!edge_kind && sol.ids.count(b)) continue;
      if (comp.at(a) == comp.at(b)) return {false, std::make_pair(a, b)};
    }
  }
  return {true, std::nullopt};
}

struct DegreeProfile {
  int max_degree = 0;
  int max_degree_terminal = 0;
  int max_degree_nonterminal = 0;
  Rat max_incident_weight_terminal = Rat(0);
  Rat max_incident_weight_nonterminal = Rat(0);
};

// Degrees count parallel edges with multiplicity. The terminal/non-terminal
// split is relative to the given set (empty set: everything is non-terminal).
inline DegreeProfile degree_profile(const MultiGraph& g, const std::vector<int>& terminal_list = {}) {
  std::set<int> terminals(terminal_list.begin(), terminal_list.end());
  std::map<int, int> deg;
  std::map<int, Rat> wsum;
  for (int v : g.vertices) { deg[v] = 0; wsum[v] = Rat(0); }
  for (const auto& e : g.edges) {
    deg[e.u]++; deg[e.v]++;
    wsum[e.u] += e.w; wsum[e.v] += e.w;
  }
  DegreeProfile p;
  for (int v : g.vertices) {
    p.max_degree = std::max(p.max_degree, deg[v]);
    if (terminals.count(v)) {
      p.max_degree_terminal = std::max(p.max_degree_terminal, deg[v]);
      if (wsum[v] > p.max_incident_weight_terminal) p.max_incident_weight_terminal = wsum[v];
    } else {
      p.max_degree_nonterminal = std::max(p.max_degree_nonterminal, deg[v]);
      if (wsum[v] > p.max_incident_weight_nonterminal) p.max_incident_weight_nonterminal = wsum[v];
    }
  }
  return p;
}

// Distinct weight values present in the graph.
inline std::set<std::string> weight_values(const MultiGraph& g) {
  std::set<std::string> ws;
  for (const auto& e : g.edges) ws.insert(e.w.str());
  return ws;
}

struct EulerLint {
  bool ok = true;   // ok == true means "not obviously non-planar"
  long long n = 0;
  long long m_simple = 0;  // parallel classes collapsed
  long long bound = 0;     // 3n - 6 (n >= 3)
};

// Necessary planarity condition on the simplification: m <= 3n - 6. This is
// a lint, never an error: callers report it as a warning at most.
inline EulerLint euler_lint(const MultiGraph& g) {
  EulerLint l;
  l.n = static_cast<long long>(g.vertices.size());
  std::set<std::pair<int, int>> simple;
  for (const auto& e : g.edges)
    simple.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  l.m_simple = static_cast<long long>(simple.size());
  if (l.n >= 3) {
    l.bound = 3 * l.n - 6;
    l.ok = l.m_simple <= l.bound;
  } else {
    l.bound = l.n == 2 ? 1 : 0;
    l.ok = true;  // 1- and 2-vertex graphs are trivially planar
  }
  return l;
}

// Total weight of a set of edge ids.
inline Rat cut_weight(const MultiGraph& g, const std::set<int>& edge_ids) {
  Rat total(0);
  for (int id : edge_ids) {
    const EdgeRec* e = g.find_edge(id);
    if (!e) throw GraphError("unknown edge " + std::to_string(id));
    total += e->w;
  }
  return total;
}

} // namespace mwcut
