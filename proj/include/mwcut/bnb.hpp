#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mwcut/graph.hpp"
#include "mwcut/maxflow.hpp"
#include "mwcut/oracles.hpp"

namespace mwcut {

struct SolveReport {
  bool feasible = false;            // decision runs: a cut within budget exists
  std::optional<Rat> optimum;       // exact runs: proven optimum
  CutSolution witness;
  long long nodes_explored = 0;
  // (depth, bound) per pruned search node, capped. The bound is a lower bound
  // on the total weight of any cut through that node, so every entry exceeds
  // the budget of the run it was recorded in. For exact runs this is the
  // trace of the final proving run (budget one step below the optimum).
  std::vector<std::pair<int, Rat>> bound_trace;
  bool trace_truncated = false;
  std::optional<Rat> run_budget;    // budget the trace was recorded against
  Rat root_lower_bound = Rat(0);    // isolating-cut bound at the root
  std::string method;
};

namespace detail {

constexpr size_t kTraceCap = 8192;

// Dense, integer-scaled working copy of an edge instance. Weights and budget
// are multiplied by the lcm of their denominators; everything downstream is
// exact 64-bit arithmetic. Parallel edges are merged into one bundle per
// endpoint pair: a minimal cut either severs a pair entirely or not at all,
// so searching over bundles loses no solution and keeps expanded unit-weight
// instances as cheap as their weighted ancestors.
struct ScaledEdgeGraph {
  int V = 0;
  struct E { int u, v; long long w; std::vector<int> ids; };
  std::vector<E> edges;                               // bundles
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (bundle idx, other)
  std::vector<int> terminals;                         // dense
  std::vector<char> is_terminal;
  std::vector<int> vid;                               // dense -> vertex id
  long long scale = 1;
  long long total_weight = 0;

  explicit ScaledEdgeGraph(const Instance& inst) {
    std::map<int, int> idx;
    for (int v : inst.g.vertices) {
      idx[v] = V++;
      vid.push_back(v);
    }
    long long l = 1;
    auto fold = [&](long long d) {
      long long g = std::gcd(l, d);
      if (l / g > (1LL << 40) / d)
        throw GraphError("non-integral scaled weights (denominator lcm overflow)");
      l = l / g * d;
    };
    for (const auto& e : inst.g.edges) fold(e.w.den());
    fold(inst.budget.den());
    scale = l;
    std::map<std::pair<int, int>, int> bundle;
    for (const auto& e : inst.g.edges) {
      long long w = e.w.num() * (scale / e.w.den());
      int u = idx.at(e.u), v = idx.at(e.v);
      std::pair<int, int> key = {std::min(u, v), std::max(u, v)};
      auto it = bundle.find(key);
      if (it == bundle.end()) {
        bundle[key] = static_cast<int>(edges.size());
        edges.push_back({key.first, key.second, w, {e.id}});
      } else {
        edges[it->second].w += w;
        edges[it->second].ids.push_back(e.id);
      }
      total_weight += w;
    }
    adj.assign(V, {});
    for (size_t i = 0; i < edges.size(); ++i) {
      adj[edges[i].u].push_back({static_cast<int>(i), edges[i].v});
      adj[edges[i].v].push_back({static_cast<int>(i), edges[i].u});
    }
    is_terminal.assign(V, 0);
    for (int t : inst.terminals) {
      terminals.push_back(idx.at(t));
      is_terminal[idx.at(t)] = 1;
    }
  }

  long long scaled(const Rat& r) const { return r.num() * (scale / r.den()); }
  Rat unscaled(long long v) const { return Rat(v, scale); }
};

enum : signed char { UND = 0, INC = 1, EXC = 2 };

// Path-branching budgeted search for edge multiway cut.
//
// At every node, pick the still-connected terminal pair whose cheapest path
// carries the fewest undecided edges, and branch on "the first cut edge of
// that path is e_i" (excluding e_1..e_{i-1}, including e_i). Children
// partition the solution space by that first edge, so with pruning disabled
// the leaves enumerate every minimal cut exactly once.
//
// Prune when spent + ceil(half-sum of isolating cuts) exceeds the limit;
// isolating cuts are computed by max flow with excluded edges effectively
// uncuttable (capacity above any useful bound). The pairwise min-cut term of
// the textbook bound never exceeds the half-sum term, so the half-sum is the
// max of the two.
class EdgeSearch {
public:
  struct Config {
    long long limit = 0;          // prune strictly above this total
    bool stop_at_first = false;   // decision mode: return first feasible leaf
    bool enumerate = false;       // collect every leaf with spent == limit
    bool preprocess = true;       // heavy-edge exclusions at the root
    size_t trace_cap = kTraceCap;
  };

  EdgeSearch(const ScaledEdgeGraph& g, const Config& cfg)
      : g_(g), cfg_(cfg), status_(g.edges.size(), UND) {}

  bool found = false;
  long long found_weight = 0;
  std::vector<int> found_edges;                 // edge indices
  std::vector<std::vector<int>> enum_leaves;    // edge indices per optimum
  long long nodes = 0;
  std::vector<std::pair<int, long long>> trace;
  bool trace_truncated = false;
  long long root_bound = 0;

  void run() {
    if (cfg_.preprocess) heavy_edge_exclusions();
    root_bound = -1;
    search(0);
  }

private:
  const ScaledEdgeGraph& g_;
  Config cfg_;
  std::vector<signed char> status_;
  long long spent_ = 0;
  std::vector<int> included_;

  // Exclude edges no minimum cut is forced to use: e qualifies at a
  // non-terminal endpoint v when w(e) >= total weight of the other edges at
  // v, and no other qualifying edge sits at v (two can only tie across a
  // degree-2 vertex, where excluding both would be unsound).
  void heavy_edge_exclusions() {
    std::vector<long long> wsum(g_.V, 0);
    for (const auto& e : g_.edges) {
      wsum[e.u] += e.w;
      wsum[e.v] += e.w;
    }
    auto qualifies_at = [&](size_t ei, int v) {
      return !g_.is_terminal[v] && g_.edges[ei].w >= wsum[v] - g_.edges[ei].w;
    };
    std::vector<char> qual(g_.edges.size(), 0);
    for (size_t i = 0; i < g_.edges.size(); ++i)
      qual[i] = qualifies_at(i, g_.edges[i].u) || qualifies_at(i, g_.edges[i].v);
    for (size_t i = 0; i < g_.edges.size(); ++i) {
      if (!qual[i]) continue;
      for (int v : {g_.edges[i].u, g_.edges[i].v}) {
        if (!qualifies_at(i, v)) continue;
        bool lone = true;
        for (auto [ej, other] : g_.adj[v]) {
          (void)other;
          if (static_cast<size_t>(ej) != i && qual[ej]) { lone = false; break; }
        }
        if (lone) {
          status_[i] = EXC;
          break;
        }
      }
    }
  }

  void record_prune(int depth, long long bound) {
    if (trace.size() < cfg_.trace_cap) trace.push_back({depth, bound});
    else trace_truncated = true;
  }

  // Component labels ignoring included (cut) edges.
  void comp_labels(std::vector<int>& comp) const {
    comp.assign(g_.V, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < g_.V; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [ei, to] : g_.adj[v]) {
          if (status_[ei] == INC || comp[to] >= 0) continue;
          comp[to] = next;
          stack.push_back(to);
        }
      }
      ++next;
    }
  }

  // 0-1 BFS from s: undecided edges cost 1, excluded cost 0, included absent.
  void zero_one_bfs(int s, std::vector<int>& dist, std::vector<int>& par_edge) const {
    dist.assign(g_.V, INT32_MAX);
    par_edge.assign(g_.V, -1);
    std::deque<int> dq{s};
    dist[s] = 0;
    while (!dq.empty()) {
      int v = dq.front();
      dq.pop_front();
      for (auto [ei, to] : g_.adj[v]) {
        if (status_[ei] == INC) continue;
        int c = status_[ei] == UND ? 1 : 0;
        if (dist[v] + c < dist[to]) {
          dist[to] = dist[v] + c;
          par_edge[to] = ei;
          if (c == 0) dq.push_front(to);
          else dq.push_back(to);
        }
      }
    }
  }

  // Isolating-cut half-sum over multi-terminal components. Flows run with
  // excluded edges effectively infinite and stop early once the running sum
  // already forces a prune. Returns the bound (possibly the early-exit cap).
  long long isolating_bound(const std::vector<int>& comp,
                            const std::vector<std::vector<int>>& groups) const {
    long long room = cfg_.limit - spent_;           // bound > room forces prune
    long long sum_cap = 2 * room + 2;               // sum above this: prune anyway
    long long flow_cap = sum_cap;
    long long big = flow_cap + 1;
    long long sum = 0;
    for (const auto& ts : groups) {
      if (ts.size() < 2) continue;
      for (int t : ts) {
        FlowCore<long long> fc(g_.V + 1);
        int sink = g_.V;
        for (size_t i = 0; i < g_.edges.size(); ++i) {
          if (status_[i] == INC) continue;
          const auto& e = g_.edges[i];
          if (comp[e.u] != comp[t]) continue;  // other components cannot matter
          fc.add_undirected(e.u, e.v, status_[i] == UND ? e.w : big, -1);
        }
        for (int o : ts)
          if (o != t) fc.add_undirected(o, sink, big, -1);
        sum += fc.maxflow(t, sink, flow_cap);
        if (sum > 2 * room) return (sum + 1) / 2;
      }
    }
    return (sum + 1) / 2;
  }

  void at_leaf() {
    if (cfg_.enumerate) {
      if (spent_ < cfg_.limit)
        throw GraphError("enumeration reached a cut below the claimed optimum");
      if (spent_ == cfg_.limit) enum_leaves.push_back(included_);
      return;
    }
    if (!found || spent_ < found_weight) {
      found = true;
      found_weight = spent_;
      found_edges = included_;
    }
  }

  bool done() const { return found && cfg_.stop_at_first; }

  void search(int depth) {
    ++nodes;
    std::vector<int> comp;
    comp_labels(comp);

    // Group terminals by component; components with >= 2 are unresolved.
    std::map<int, std::vector<int>> by_comp;
    for (int t : g_.terminals) by_comp[comp[t]].push_back(t);
    std::vector<std::vector<int>> groups;
    bool unresolved = false;
    for (auto& [c, ts] : by_comp) {
      (void)c;
      if (ts.size() >= 2) unresolved = true;
      groups.push_back(ts);
    }
    if (!unresolved) {
      at_leaf();
      return;
    }

    // Branching pair: fewest undecided edges on a cheapest path.
    int best_k = INT32_MAX, best_s = -1, best_t = -1;
    std::vector<int> dist, par;
    for (const auto& ts : groups) {
      if (ts.size() < 2) continue;
      for (size_t i = 0; i < ts.size() && best_k > 1; ++i) {
        zero_one_bfs(ts[i], dist, par);
        for (size_t j = i + 1; j < ts.size(); ++j) {
          if (dist[ts[j]] < best_k) {
            best_k = dist[ts[j]];
            best_s = ts[i];
            best_t = ts[j];
          }
        }
      }
      if (best_k <= 1) break;
    }

    if (best_k == 0) {
      // Some pair is joined by committed-uncuttable edges only.
      record_prune(depth, cfg_.limit + 1);
      return;
    }

    // Bound check (skip when a forced edge makes branching cheaper than flows).
    if (best_k > 1) {
      long long bound = isolating_bound(comp, groups);
      if (root_bound < 0) root_bound = bound;
      if (spent_ + bound > cfg_.limit) {
        record_prune(depth, spent_ + bound);
        return;
      }
    } else if (root_bound < 0) {
      root_bound = 0;
    }

    // Recompute the path for the chosen pair.
    zero_one_bfs(best_s, dist, par);
    std::vector<int> path_undecided;
    for (int v = best_t; v != best_s;) {
      int ei = par[v];
      if (status_[ei] == UND) path_undecided.push_back(ei);
      v = g_.edges[ei].u == v ? g_.edges[ei].v : g_.edges[ei].u;
    }
    std::reverse(path_undecided.begin(), path_undecided.end());

    // Children: first cut edge along the path is path_undecided[i]. An
    // over-budget edge prunes only its own child; cheaper edges may follow.
    for (size_t i = 0; i < path_undecided.size() && !done(); ++i) {
      int ei = path_undecided[i];
      if (spent_ + g_.edges[ei].w > cfg_.limit) {
        record_prune(depth + 1, spent_ + g_.edges[ei].w);
        status_[ei] = EXC;
        continue;
      }
      status_[ei] = INC;
      spent_ += g_.edges[ei].w;
      included_.push_back(ei);
      search(depth + 1);
      included_.pop_back();
      spent_ -= g_.edges[ei].w;
      status_[ei] = EXC;  // stays excluded for later siblings
    }
    for (int ei : path_undecided)
      if (status_[ei] == EXC) status_[ei] = UND;
  }
};

} // namespace detail

// Decision: is there a multiway cut of weight <= budget? Feasible reports
// carry the first found witness (weight <= budget, not necessarily optimal).
inline SolveReport bnb_emwc(const Instance& inst, const Rat& budget) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("bnb_emwc expects an edge instance");
  inst.check();
  detail::ScaledEdgeGraph sg(inst);
  detail::EdgeSearch::Config cfg;
  cfg.limit = sg.scaled(budget);
  cfg.stop_at_first = true;
  detail::EdgeSearch s(sg, cfg);
  s.run();

  SolveReport r;
  r.method = "bnb";
  r.nodes_explored = s.nodes;
  r.run_budget = budget;
  r.root_lower_bound = sg.unscaled(s.root_bound < 0 ? 0 : s.root_bound);
  for (auto& [d, b] : s.trace) r.bound_trace.push_back({d, sg.unscaled(b)});
  r.trace_truncated = s.trace_truncated;
  r.feasible = s.found;
  if (s.found) {
    r.witness.kind = SolKind::EdgeSet;
    for (int ei : s.found_edges)
      r.witness.ids.insert(sg.edges[ei].ids.begin(), sg.edges[ei].ids.end());
    r.witness.weight = sg.unscaled(s.found_weight);
    r.witness.components = components(inst.g, r.witness.ids, {});
  }
  return r;
}

// Exact optimum by monotone descending budget search: find any cut, then
// repeatedly ask the decision search one unit (in scaled weight) below the
// incumbent until it proves infeasibility. The final infeasible run is the
// optimality proof and supplies the reported bound trace.
inline SolveReport solve_exact_emwc(const Instance& inst) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("solve_exact_emwc expects an edge instance");
  inst.check();
  detail::ScaledEdgeGraph sg(inst);

  SolveReport agg;
  agg.method = "bnb";

  long long incumbent_w = -1;
  std::vector<int> incumbent_edges;
  long long budget = sg.total_weight;  // cutting everything always separates
  bool first = true;
  while (true) {
    detail::EdgeSearch::Config cfg;
    cfg.limit = budget;
    cfg.stop_at_first = true;
    detail::EdgeSearch s(sg, cfg);
    s.run();
    agg.nodes_explored += s.nodes;
    if (first) {
      agg.root_lower_bound = sg.unscaled(s.root_bound < 0 ? 0 : s.root_bound);
      first = false;
    }
    if (!s.found) {
      agg.run_budget = sg.unscaled(budget);
      for (auto& [d, b] : s.trace) agg.bound_trace.push_back({d, sg.unscaled(b)});
      agg.trace_truncated = s.trace_truncated;
      break;
    }
    incumbent_w = s.found_weight;
    incumbent_edges = s.found_edges;
    budget = incumbent_w - 1;
    if (budget < 0) break;  // found a zero-weight cut: can't improve
  }
  if (incumbent_w < 0) throw GraphError("descending search found no cut at total weight");

  agg.feasible = true;
  agg.optimum = sg.unscaled(incumbent_w);
  agg.witness.kind = SolKind::EdgeSet;
  for (int ei : incumbent_edges)
    agg.witness.ids.insert(sg.edges[ei].ids.begin(), sg.edges[ei].ids.end());
  agg.witness.weight = *agg.optimum;
  agg.witness.components = components(inst.g, agg.witness.ids, {});
  return agg;
}

struct AllOptima {
  Rat optimum = Rat(0);
  std::vector<std::set<int>> optima;  // sorted lexicographically
  long long nodes_explored = 0;
  std::string method;
};

// Complete enumeration of every minimum cut via the search tree: children
// partition by the first cut edge on the branched path, minimum cuts are
// minimal, so each optimum shows up at exactly one leaf. Runs without the
// heavy-edge preprocessing (which is value-safe but optimum-set-biased).
inline AllOptima enumerate_optima_emwc(const Instance& inst, bool force = false,
                                       size_t guard_edges = 64) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("enumerate_optima_emwc expects an edge instance");
  inst.check();
  if (inst.g.edges.size() > guard_edges && !force)
    throw GuardError("instance too large for all-optima enumeration (|E|=" +
                     std::to_string(inst.g.edges.size()) + " > " + std::to_string(guard_edges) + ")");

  SolveReport opt = solve_exact_emwc(inst);
  detail::ScaledEdgeGraph sg(inst);
  detail::EdgeSearch::Config cfg;
  cfg.limit = sg.scaled(*opt.optimum);
  cfg.enumerate = true;
  cfg.preprocess = false;
  detail::EdgeSearch s(sg, cfg);
  s.run();

  AllOptima r;
  r.method = "bnb-enumerate";
  r.optimum = *opt.optimum;
  r.nodes_explored = opt.nodes_explored + s.nodes;
  std::set<std::set<int>> dedup;
  for (const auto& leaf : s.enum_leaves) {
    std::set<int> ids;
    for (int ei : leaf) ids.insert(sg.edges[ei].ids.begin(), sg.edges[ei].ids.end());
    if (!dedup.insert(ids).second)
      throw GraphError("enumeration produced a duplicate optimum (search tree invariant broken)");
  }
  r.optima.assign(dedup.begin(), dedup.end());
  if (r.optima.empty()) throw GraphError("enumeration lost the optimum it was given");
  return r;
}

namespace detail {

// Node-variant search. Deletions live on vertices; terminals are deletable
// only for kind node-deletable. Bound: pairwise vertex connectivity of the
// branching pair (Menger, unit split arcs) plus one forced deletion for every
// other component still holding two or more live terminals. The vertex
// analogue of the isolating half-sum is unsound (a single cut vertex can be
// charged by arbitrarily many terminals), so it is not used.
class NodeSearch {
public:
  struct Config {
    long long limit = 0;
    bool stop_at_first = false;
    size_t trace_cap = kTraceCap;
  };

  NodeSearch(const Instance& inst, const Config& cfg) : cfg_(cfg) {
    for (int v : inst.g.vertices) {
      idx_[v] = V_++;
      vid_.push_back(v);
    }
    adj_.assign(V_, {});
    for (const auto& e : inst.g.edges) {
      int u = idx_[e.u], v = idx_[e.v];
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    deletable_.assign(V_, 1);
    for (int t : inst.terminals) {
      terminals_.push_back(idx_[t]);
      if (inst.kind == ProblemKind::Node) deletable_[idx_[t]] = 0;
    }
    status_.assign(V_, UND);
  }

  bool found = false;
  long long found_size = 0;
  std::vector<int> found_vertices;  // dense
  long long nodes = 0;
  std::vector<std::pair<int, long long>> trace;
  bool trace_truncated = false;
  long long root_bound = 0;

  void run() {
    root_bound = -1;
    search(0);
  }

  int vid(int dense) const { return vid_[dense]; }

private:
  Config cfg_;
  int V_ = 0;
  std::map<int, int> idx_;
  std::vector<int> vid_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> terminals_;
  std::vector<char> deletable_;
  std::vector<signed char> status_;  // UND / INC(deleted) / EXC(kept)
  long long spent_ = 0;
  std::vector<int> deleted_;

  void record_prune(int depth, long long bound) {
    if (trace.size() < cfg_.trace_cap) trace.push_back({depth, bound});
    else trace_truncated = true;
  }

  void comp_labels(std::vector<int>& comp) const {
    comp.assign(V_, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < V_; ++s) {
      if (comp[s] >= 0 || status_[s] == INC) continue;
      comp[s] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int to : adj_[v]) {
          if (status_[to] == INC || comp[to] >= 0) continue;
          comp[to] = next;
          stack.push_back(to);
        }
      }
      ++next;
    }
  }

  // 0-1 BFS where entering an undecided deletable vertex costs 1.
  void zero_one_bfs(int s, std::vector<int>& dist, std::vector<int>& par) const {
    dist.assign(V_, INT32_MAX);
    par.assign(V_, -1);
    std::deque<int> dq{s};
    dist[s] = (status_[s] == UND && deletable_[s]) ? 1 : 0;
    while (!dq.empty()) {
      int v = dq.front();
      dq.pop_front();
      for (int to : adj_[v]) {
        if (status_[to] == INC) continue;
        int c = (status_[to] == UND && deletable_[to]) ? 1 : 0;
        if (dist[v] + c < dist[to]) {
          dist[to] = dist[v] + c;
          par[to] = v;
          if (c == 0) dq.push_front(to);
          else dq.push_back(to);
        }
      }
    }
  }

  // Vertex connectivity between s and t under current commitments: split
  // every vertex into in/out with capacity 1 if it is an undecided deletable
  // vertex, big otherwise; deleted vertices are absent. Flow runs from the
  // in-node of s to the out-node of t so that deleting a terminal itself
  // (legal for kind node-deletable) is counted by the cut.
  long long pair_vertex_flow(int s, int t, long long cap) const {
    long long big = cap + 1;
    FlowCore<long long> fc(2 * V_);
    for (int v = 0; v < V_; ++v) {
      if (status_[v] == INC) continue;
      long long c = (status_[v] == UND && deletable_[v]) ? 1 : big;
      fc.add_directed(v, V_ + v, c, -1);
    }
    for (int v = 0; v < V_; ++v) {
      if (status_[v] == INC) continue;
      for (int to : adj_[v]) {
        if (status_[to] == INC) continue;
        fc.add_directed(V_ + v, to, big, -1);
      }
    }
    return fc.maxflow(s, V_ + t, cap);
  }

  void at_leaf() {
    if (!found || spent_ < found_size) {
      found = true;
      found_size = spent_;
      found_vertices = deleted_;
    }
  }

  bool done() const { return found && cfg_.stop_at_first; }

  void search(int depth) {
    ++nodes;
    std::vector<int> comp;
    comp_labels(comp);

    std::map<int, std::vector<int>> by_comp;
    for (int t : terminals_)
      if (status_[t] != INC) by_comp[comp[t]].push_back(t);
    int multi = 0;
    int bs = -1, bt = -1;
    for (auto& [c, ts] : by_comp) {
      (void)c;
      if (ts.size() >= 2) ++multi;
    }
    if (multi == 0) {
      at_leaf();
      return;
    }

    // Branching pair: fewest undecided deletable vertices along a path.
    int best_k = INT32_MAX;
    std::vector<int> dist, par;
    for (auto& [c, ts] : by_comp) {
      (void)c;
      if (ts.size() < 2) continue;
      for (size_t i = 0; i < ts.size() && best_k > 1; ++i) {
        zero_one_bfs(ts[i], dist, par);
        for (size_t j = i + 1; j < ts.size(); ++j) {
          if (dist[ts[j]] < best_k) {
            best_k = dist[ts[j]];
            bs = ts[i];
            bt = ts[j];
          }
        }
      }
      if (best_k <= 1) break;
    }

    if (best_k == 0 || best_k == INT32_MAX) {
      record_prune(depth, cfg_.limit + 1);
      return;
    }

    long long room = cfg_.limit - spent_;
    long long bound = multi - 1 + pair_vertex_flow(bs, bt, room + 2);
    if (root_bound < 0) root_bound = bound;
    if (spent_ + bound > cfg_.limit) {
      record_prune(depth, spent_ + bound);
      return;
    }

    zero_one_bfs(bs, dist, par);
    std::vector<int> path_vs;
    for (int v = bt; v != -1; v = par[v]) {
      if (status_[v] == UND && deletable_[v]) path_vs.push_back(v);
      if (v == bs) break;
    }
    std::reverse(path_vs.begin(), path_vs.end());

    for (size_t i = 0; i < path_vs.size() && !done(); ++i) {
      int v = path_vs[i];
      status_[v] = INC;
      spent_ += 1;
      deleted_.push_back(v);
      if (spent_ <= cfg_.limit) search(depth + 1);
      else record_prune(depth + 1, spent_);
      deleted_.pop_back();
      spent_ -= 1;
      status_[v] = EXC;
    }
    for (int v : path_vs)
      if (status_[v] == EXC) status_[v] = UND;
  }
};

} // namespace detail

inline SolveReport bnb_node(const Instance& inst, long long budget) {
  if (inst.kind == ProblemKind::Edge) throw GraphError("bnb_node expects a node instance");
  inst.check();
  detail::NodeSearch::Config cfg;
  cfg.limit = budget;
  cfg.stop_at_first = true;
  detail::NodeSearch s(inst, cfg);
  s.run();

  SolveReport r;
  r.method = "bnb";
  r.nodes_explored = s.nodes;
  r.run_budget = Rat(budget);
  r.root_lower_bound = Rat(s.root_bound < 0 ? 0 : s.root_bound);
  for (auto& [d, b] : s.trace) r.bound_trace.push_back({d, Rat(b)});
  r.trace_truncated = s.trace_truncated;
  r.feasible = s.found;
  if (s.found) {
    r.witness.kind = SolKind::VertexSet;
    for (int v : s.found_vertices) r.witness.ids.insert(s.vid(v));
    r.witness.weight = Rat(s.found_size);
    r.witness.components = components(inst.g, {}, r.witness.ids);
  }
  return r;
}

inline SolveReport solve_exact_node(const Instance& inst) {
  if (inst.kind == ProblemKind::Edge) throw GraphError("solve_exact_node expects a node instance");
  inst.check();

  // Deleting every deletable vertex is feasible iff it separates; when even
  // that fails (adjacent terminals, kind node) the instance has no solution.
  long long all = 0;
  for (int v : inst.g.vertices)
    if (inst.kind == ProblemKind::NodeDeletable || !inst.is_terminal(v)) ++all;

  SolveReport agg;
  agg.method = "bnb";
  long long incumbent = -1;
  CutSolution best;
  long long budget = all;
  bool first = true;
  while (budget >= 0) {
    SolveReport r = bnb_node(inst, budget);
    agg.nodes_explored += r.nodes_explored;
    if (first) {
      agg.root_lower_bound = r.root_lower_bound;
      first = false;
    }
    if (!r.feasible) {
      agg.run_budget = Rat(budget);
      agg.bound_trace = r.bound_trace;
      agg.trace_truncated = r.trace_truncated;
      break;
    }
    incumbent = r.witness.weight.num();
    best = r.witness;
    budget = incumbent - 1;
  }
  if (incumbent < 0)
    throw GraphError("no node multiway cut exists (terminals adjacent with kind node)");
  agg.feasible = true;
  agg.optimum = Rat(incumbent);
  agg.witness = best;
  return agg;
}

// Strongest applicable exact solver for any instance kind: max flow for
// two-terminal edge instances, oracles within their guards, branch-and-bound
// beyond them.
inline SolveReport solve_exact(const Instance& inst) {
  if (inst.kind == ProblemKind::Edge) {
    if (inst.terminals.size() == 1) {
      SolveReport r;
      r.method = "trivial";
      r.feasible = true;
      r.optimum = Rat(0);
      r.witness.kind = SolKind::EdgeSet;
      r.witness.weight = Rat(0);
      r.witness.components = components(inst.g, {}, {});
      return r;
    }
    if (inst.terminals.size() == 2) {
      MaxflowCutResult mf = max_flow_min_cut(inst);
      SolveReport r;
      r.method = "maxflow2t";
      r.feasible = true;
      r.optimum = mf.value;
      r.witness = mf.cut;
      return r;
    }
    return solve_exact_emwc(inst);
  }
  if (inst.g.vertices.size() <= 20) {
    OracleResult o = oracle_node(inst);
    SolveReport r;
    r.method = o.method;
    r.feasible = true;
    r.optimum = o.optimum;
    r.witness.kind = SolKind::VertexSet;
    r.witness.ids = o.witness;
    r.witness.weight = o.optimum;
    r.witness.components = components(inst.g, {}, o.witness);
    return r;
  }
  return solve_exact_node(inst);
}

} // namespace mwcut
