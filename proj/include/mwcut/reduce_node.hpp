#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwcut/graph.hpp"
#include "mwcut/transforms.hpp"

namespace mwcut {

struct TerminalClique {
  int terminal = -1;      // original vertex id
  int designated = -1;    // line-graph vertex chosen as the node terminal
  std::vector<int> members;  // line-graph vertices of all edges at the terminal
};

using TerminalCliqueMap = std::map<int, TerminalClique>;

struct EmwcToNmwcResult {
  Instance inst;                      // kind node, same budget
  MultiGraph subdivided;              // the doubly subdivided source graph
  std::map<int, int> lvertex_to_hedge;
  TerminalCliqueMap cliques;
};

// Unweighted edge multiway cut -> node multiway cut, preserving the optimum.
//
// Subdivide every edge twice, take the line graph, and for each terminal t
// designate the line-graph vertex of the smallest-id subdivided edge at t as
// its node terminal. Deleting line-graph vertices is deleting edges of the
// subdivided graph; designated vertices stay, which is harmless because a
// cut using the edge at a terminal can always slide one step down its path.
// Double subdivision keeps the terminals' edge cliques disjoint and
// non-adjacent even when terminals were adjacent in the input.
inline EmwcToNmwcResult emwc_to_nmwc(const Instance& src) {
  if (src.kind != ProblemKind::Edge) throw GraphError("emwc_to_nmwc expects an edge instance");
  src.check();
  for (const auto& e : src.g.edges)
    if (!(e.w == Rat(1)))
      throw GraphError("emwc_to_nmwc expects unit weights (edge " + std::to_string(e.id) + ")");

  EmwcToNmwcResult out;
  out.subdivided = subdivide(src.g, 2);
  LineGraphResult lg = line_graph(out.subdivided);
  out.inst.g = std::move(lg.lg);
  out.inst.kind = ProblemKind::Node;
  out.inst.budget = src.budget;
  for (const auto& [hedge, lvertex] : lg.edge_to_vertex) out.lvertex_to_hedge[lvertex] = hedge;

  std::map<int, std::vector<int>> at_terminal;  // terminal -> subdivided edge ids
  for (const auto& e : out.subdivided.edges) {
    if (src.is_terminal(e.u)) at_terminal[e.u].push_back(e.id);
    if (src.is_terminal(e.v)) at_terminal[e.v].push_back(e.id);
  }
  for (int t : src.terminals) {
    auto it = at_terminal.find(t);
    if (it == at_terminal.end())
      throw GraphError("terminal " + std::to_string(t) + " has no incident edge");
    std::sort(it->second.begin(), it->second.end());
    TerminalClique tc;
    tc.terminal = t;
    for (int hedge : it->second) tc.members.push_back(lg.edge_to_vertex.at(hedge));
    tc.designated = lg.edge_to_vertex.at(it->second.front());
    out.cliques[t] = tc;
    out.inst.terminals.push_back(tc.designated);
  }
  out.inst.check();
  return out;
}

// Map a node cut in the line graph back to source edge ids: line-graph
// vertex -> subdivided edge -> (by subdivision ancestry) source edge.
inline std::set<int> map_node_cut_back(const EmwcToNmwcResult& red,
                                       const std::set<int>& deleted) {
  std::set<int> hedges;
  for (int lv : deleted) {
    auto it = red.lvertex_to_hedge.find(lv);
    if (it == red.lvertex_to_hedge.end())
      throw GraphError("deleted vertex " + std::to_string(lv) + " is not a line-graph vertex");
    hedges.insert(it->second);
  }
  return cut_ancestors(red.subdivided, hedges);
}

struct DtToNodeResult {
  Instance inst;
  std::map<int, int> pendant_of;  // original terminal -> its pendant terminal
};

// Node multiway cut with deletable terminals -> plain node multiway cut:
// hang a pendant off every terminal and designate the pendant instead, so
// the old terminal becomes an ordinary deletable vertex. Budget unchanged.
inline DtToNodeResult nmwcdt_to_nmwc(const Instance& src) {
  if (src.kind != ProblemKind::NodeDeletable)
    throw GraphError("nmwcdt_to_nmwc expects a node-deletable instance");
  src.check();

  DtToNodeResult out;
  out.inst.g = src.g;
  out.inst.kind = ProblemKind::Node;
  out.inst.budget = src.budget;
  int next_vid = src.g.max_vertex_id() + 1;
  int next_eid = src.g.max_edge_id() + 1;
  for (int t : src.terminals) {
    int p = next_vid++;
    std::string base = src.g.labels.count(t) ? src.g.labels.at(t) : std::to_string(t);
    out.inst.g.add_vertex(p, base + "'");
    out.inst.g.add_edge(next_eid++, t, p, Rat(1));
    out.inst.terminals.push_back(p);
    out.pendant_of[t] = p;
  }
  out.inst.check();
  return out;
}

// Vertex cover as node multiway cut with deletable terminals: make every
// vertex a terminal. The undeleted vertices must be pairwise disconnected,
// which over a full terminal set means independent, so optimal deletion
// sets are exactly minimum vertex covers.
inline Instance vc_to_nmwcdt(const MultiGraph& g) {
  if (g.vertices.empty()) throw GraphError("vertex cover reduction needs a non-empty graph");
  Instance inst;
  inst.g = g;
  for (auto& e : inst.g.edges) e.w = Rat(1);
  inst.kind = ProblemKind::NodeDeletable;
  inst.terminals = g.vertices;
  inst.budget = Rat(static_cast<long long>(g.vertices.size()));
  inst.check();
  return inst;
}

} // namespace mwcut
