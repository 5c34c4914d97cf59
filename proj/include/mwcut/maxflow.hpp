#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "mwcut/graph.hpp"

namespace mwcut {

// Edmonds-Karp max flow over an undirected graph, templated on the weight
// type: exact rationals for the public two-terminal solver, scaled 64-bit
// integers inside the branch-and-bound. Augmentation count is bounded by
// O(VE) independent of capacities, so rationals terminate like anything else.
//
// Undirected edges become arc pairs that share residuals: both directions
// start at the edge capacity, pushing flow one way opens headroom the other.
template <typename W>
class FlowCore {
public:
  explicit FlowCore(int n) : head_(n, -1) {}

  int num_vertices() const { return static_cast<int>(head_.size()); }

  int add_node() {
    head_.push_back(-1);
    return num_vertices() - 1;
  }

  // eid tags the arc pair with a caller-side edge id (-1 for virtual arcs).
  void add_undirected(int u, int v, W cap, int eid) {
    arcs_.push_back({v, head_[u], cap, eid});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], cap, eid});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  void add_directed(int u, int v, W cap, int eid) {
    arcs_.push_back({v, head_[u], cap, eid});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], W(0), eid});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  // Max flow from s to t, stopping early once the value reaches `limit`
  // (callers that only need "is the cut at least X" pass X as the limit).
  W maxflow(int s, int t, W limit) {
    W total(0);
    std::vector<int> parent_arc(num_vertices());
    while (total < limit) {
      // BFS for a shortest augmenting path.
      std::vector<char> seen(num_vertices(), 0);
      std::deque<int> q{s};
      seen[s] = 1;
      bool found = false;
      while (!q.empty() && !found) {
        int v = q.front();
        q.pop_front();
        for (int a = head_[v]; a != -1; a = arcs_[a].next) {
          if (seen[arcs_[a].to] || !(arcs_[a].cap > W(0))) continue;
          seen[arcs_[a].to] = 1;
          parent_arc[arcs_[a].to] = a;
          if (arcs_[a].to == t) { found = true; break; }
          q.push_back(arcs_[a].to);
        }
      }
      if (!found) break;
      W push = limit - total;
      for (int v = t; v != s;) {
        int a = parent_arc[v];
        if (arcs_[a].cap < push) push = arcs_[a].cap;
        v = arcs_[a ^ 1].to;
      }
      for (int v = t; v != s;) {
        int a = parent_arc[v];
        arcs_[a].cap = arcs_[a].cap - push;
        arcs_[a ^ 1].cap = arcs_[a ^ 1].cap + push;
        v = arcs_[a ^ 1].to;
      }
      total = total + push;
    }
    return total;
  }

  // Vertices reachable from s in the residual graph (call after maxflow).
  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(num_vertices(), 0);
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (!seen[arcs_[a].to] && arcs_[a].cap > W(0)) {
          seen[arcs_[a].to] = 1;
          q.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

private:
  struct Arc {
    int to;
    int next;
    W cap;
    int eid;
  };
  std::vector<Arc> arcs_;
  std::vector<int> head_;
};

struct MaxflowCutResult {
  Rat value = Rat(0);
  CutSolution cut;
};

// Exact min s-t cut for a two-terminal edge instance via max flow. The
// returned cut is certified: its recomputed weight must equal the flow value
// or the routine throws.
inline MaxflowCutResult max_flow_min_cut(const Instance& inst) {
  if (inst.kind != ProblemKind::Edge)
    throw GraphError("max_flow_min_cut expects an edge instance");
  if (inst.terminals.size() != 2)
    throw GraphError("max_flow_min_cut expects exactly 2 terminals, got " +
                     std::to_string(inst.terminals.size()));
  inst.check();

  std::map<int, int> idx;
  for (int v : inst.g.vertices) idx[v] = static_cast<int>(idx.size());
  FlowCore<Rat> fc(static_cast<int>(idx.size()));
  Rat total(0);
  for (const auto& e : inst.g.edges) {
    fc.add_undirected(idx[e.u], idx[e.v], e.w, e.id);
    total += e.w;
  }
  int s = idx[inst.terminals[0]];
  int t = idx[inst.terminals[1]];
  Rat value = fc.maxflow(s, t, total + Rat(1));

  std::vector<char> reach = fc.residual_reachable(s);
  MaxflowCutResult r;
  r.value = value;
  r.cut.kind = SolKind::EdgeSet;
  for (const auto& e : inst.g.edges)
    if (reach[idx[e.u]] != reach[idx[e.v]]) r.cut.ids.insert(e.id);
  r.cut.weight = cut_weight(inst.g, r.cut.ids);
  if (r.cut.weight != value)
    throw GraphError("max-flow/min-cut certificate mismatch: flow " + value.str() +
                     " vs cut " + r.cut.weight.str());
  r.cut.components = components(inst.g, r.cut.ids, {});
  return r;
}

} // namespace mwcut
