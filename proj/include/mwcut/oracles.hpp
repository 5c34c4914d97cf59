#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mwcut/graph.hpp"

namespace mwcut {

// Exhaustive ground-truth solvers. Deliberately simple and deliberately
// written with different machinery than the branch-and-bound so that
// agreement between them actually means something. Hard size guards; the
// force flag downgrades a guard trip to proceeding anyway (caller's risk).

struct OracleResult {
  Rat optimum = Rat(0);
  std::set<int> witness;                 // lexicographically least optimum
  std::vector<std::set<int>> all_optima; // every minimum solution, sorted
  std::string method;
};

namespace detail {

// Dense scratch view of an instance for tight inner loops.
struct DenseEdge {
  int u, v;
  Rat w;
  int id;
};

struct DenseView {
  std::vector<int> vid;          // dense -> vertex id
  std::map<int, int> idx;        // vertex id -> dense
  std::vector<DenseEdge> edges;  // dense endpoints
  std::vector<int> terminals;    // dense
  int n = 0;

  explicit DenseView(const Instance& inst) {
    for (int v : inst.g.vertices) {
      idx[v] = n++;
      vid.push_back(v);
    }
    for (const auto& e : inst.g.edges)
      edges.push_back({idx[e.u], idx[e.v], e.w, e.id});
    for (int t : inst.terminals) terminals.push_back(idx[t]);
  }
};

// Union-find over dense vertices; enough for separation checks.
struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline bool separates_edges(const DenseView& dv, const std::vector<char>& cut_mask,
                            const std::vector<char>& deleted_vertex) {
  DSU dsu(dv.n);
  for (size_t i = 0; i < dv.edges.size(); ++i) {
    if (cut_mask[i]) continue;
    const auto& e = dv.edges[i];
    if (!deleted_vertex.empty() && (deleted_vertex[e.u] || deleted_vertex[e.v])) continue;
    dsu.unite(e.u, e.v);
  }
  for (size_t i = 0; i < dv.terminals.size(); ++i) {
    if (!deleted_vertex.empty() && deleted_vertex[dv.terminals[i]]) continue;
    for (size_t j = i + 1; j < dv.terminals.size(); ++j) {
      if (!deleted_vertex.empty() && deleted_vertex[dv.terminals[j]]) continue;
      if (dsu.find(dv.terminals[i]) == dsu.find(dv.terminals[j])) return false;
    }
  }
  return true;
}

// Recursive subset sweep over edges with two sound prunes: stop below any
// branch whose weight already exceeds the best, and stop extending once the
// chosen set separates (supersets of a separating set are never minimal, and
// with positive weights never tie). Every minimal optimum survives both.
struct SubsetEdgeSearch {
  const DenseView& dv;
  std::vector<char> mask;
  std::vector<char> no_deleted;
  Rat best;
  bool best_valid = false;
  std::vector<std::set<int>> optima;

  explicit SubsetEdgeSearch(const DenseView& dv_) : dv(dv_), mask(dv_.edges.size(), 0) {}

  void record(const Rat& w) {
    if (!best_valid || w < best) {
      best = w;
      best_valid = true;
      optima.clear();
    }
    if (w == best) {
      std::set<int> ids;
      for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) ids.insert(dv.edges[i].id);
      optima.push_back(ids);
    }
  }

  void run(size_t at, Rat spent) {
    if (best_valid && spent > best) return;
    if (separates_edges(dv, mask, no_deleted)) {
      record(spent);
      return;
    }
    if (at == mask.size()) return;
    run(at + 1, spent);  // exclude first: finds sparse cuts sooner
    mask[at] = 1;
    run(at + 1, spent + dv.edges[at].w);
    mask[at] = 0;
  }
};

} // namespace detail

// Edge multiway cut, subset enumeration method. Guard: |E| <= 22.
inline OracleResult oracle_emwc_subset(const Instance& inst, bool force = false) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("oracle_emwc expects an edge instance");
  inst.check();
  if (inst.g.edges.size() > 22 && !force)
    throw GuardError("instance too large for oracle (|E|=" + std::to_string(inst.g.edges.size()) + " > 22)");
  detail::DenseView dv(inst);
  detail::SubsetEdgeSearch s(dv);
  s.run(0, Rat(0));
  // Empty edge set might already separate (or there are no terminals to split).
  OracleResult r;
  if (!s.best_valid) throw GraphError("no multiway cut exists (unexpected for edge instances)");
  r.optimum = s.best;
  std::sort(s.optima.begin(), s.optima.end());
  r.all_optima = std::move(s.optima);
  r.witness = r.all_optima.front();
  r.method = "oracle-subset";
  return r;
}

// Edge multiway cut, labeling method: assign every non-terminal one of the
// |T| terminal labels (terminals are fixed to themselves), minimize the total
// weight of bichromatic edges. The minimum equals the edge multiway cut
// optimum, and the bichromatic sets of minimizing labelings are exactly the
// minimum cuts. Guard: |T|^(|V|-|T|) <= 2^22.
inline OracleResult oracle_emwc_labeling(const Instance& inst, bool force = false) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("oracle_emwc expects an edge instance");
  inst.check();
  detail::DenseView dv(inst);
  int k = static_cast<int>(dv.terminals.size());
  int free_count = dv.n - k;
  double combos = std::pow(static_cast<double>(k), free_count);
  if ((free_count > 12 || combos > 4194304.0) && !force)
    throw GuardError("instance too large for oracle (" + std::to_string(k) + "^" +
                     std::to_string(free_count) + " labelings)");

  std::vector<int> label(dv.n, -1);
  std::vector<int> free_vs;
  for (int v = 0; v < dv.n; ++v) free_vs.push_back(v);
  for (int i = 0; i < k; ++i) {
    label[dv.terminals[i]] = i;
    free_vs.erase(std::find(free_vs.begin(), free_vs.end(), dv.terminals[i]));
  }

  OracleResult r;
  r.method = "oracle-labeling";
  bool have = false;
  std::set<std::set<int>> optima;

  std::vector<int> choice(free_vs.size(), 0);
  while (true) {
    for (size_t i = 0; i < free_vs.size(); ++i) label[free_vs[i]] = choice[i];
    Rat w(0);
    std::set<int> bichromatic;
    for (const auto& e : dv.edges) {
      if (label[e.u] != label[e.v]) {
        w += e.w;
        bichromatic.insert(e.id);
      }
    }
    if (!have || w < r.optimum) {
      r.optimum = w;
      have = true;
      optima.clear();
    }
    if (w == r.optimum) optima.insert(bichromatic);

    // odometer over labelings
    size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == k) choice[pos++] = 0;
    if (pos == choice.size()) break;
    if (choice.empty()) break;
  }
  if (!have) throw GraphError("labeling oracle found no labeling");
  r.all_optima.assign(optima.begin(), optima.end());
  r.witness = r.all_optima.front();
  return r;
}

// Cross-checked edge oracle: runs whichever exhaustive methods fit, requires
// them to agree exactly (value and full optimum set) when both fit.
inline OracleResult oracle_emwc(const Instance& inst, bool force = false) {
  bool subset_fits = inst.g.edges.size() <= 22;
  int free_count = static_cast<int>(inst.g.vertices.size() - inst.terminals.size());
  double combos = std::pow(static_cast<double>(inst.terminals.size()), free_count);
  bool labeling_fits = free_count <= 12 && combos <= 4194304.0 && !inst.terminals.empty();

  if (!subset_fits && !labeling_fits && !force)
    throw GuardError("instance too large for oracle (|E|=" + std::to_string(inst.g.edges.size()) +
                     ", free vertices=" + std::to_string(free_count) + ")");
  if (subset_fits && labeling_fits) {
    OracleResult a = oracle_emwc_subset(inst);
    OracleResult b = oracle_emwc_labeling(inst);
    if (a.optimum != b.optimum || a.all_optima != b.all_optima)
      throw GraphError("oracle cross-check failed: subset " + a.optimum.str() +
                       " vs labeling " + b.optimum.str());
    a.method = "oracle-crosschecked";
    return a;
  }
  return subset_fits || !labeling_fits ? oracle_emwc_subset(inst, force)
                                       : oracle_emwc_labeling(inst, force);
}

namespace detail {

// Subset sweep over candidate vertices for the node variants. Same pruning
// logic as the edge sweep; cardinality plays the role of weight.
struct SubsetNodeSearch {
  const DenseView& dv;
  const std::vector<int>& candidates;  // dense vertex indices eligible for deletion
  std::vector<char> deleted;
  std::vector<char> edge_keep;
  int best = -1;
  std::vector<std::set<int>> optima;

  SubsetNodeSearch(const DenseView& dv_, const std::vector<int>& cand)
      : dv(dv_), candidates(cand), deleted(dv_.n, 0), edge_keep(dv_.edges.size(), 0) {}

  bool separated() const { return separates_edges(dv, edge_keep, deleted); }

  void record(int size) {
    if (best < 0 || size < best) {
      best = size;
      optima.clear();
    }
    if (size == best) {
      std::set<int> ids;
      for (int v = 0; v < dv.n; ++v)
        if (deleted[v]) ids.insert(dv.vid[v]);
      optima.push_back(ids);
    }
  }

  void run(size_t at, int size) {
    if (best >= 0 && size > best) return;
    if (separated()) {
      record(size);
      return;
    }
    if (at == candidates.size()) return;
    run(at + 1, size);
    deleted[candidates[at]] = 1;
    run(at + 1, size + 1);
    deleted[candidates[at]] = 0;
  }
};

} // namespace detail

// Node multiway cut oracles. kind node: deletions range over V \ T; kind
// node-deletable: over all of V. Guard: |V| <= 20.
inline OracleResult oracle_node(const Instance& inst, bool force = false) {
  if (inst.kind == ProblemKind::Edge) throw GraphError("node oracle given an edge instance");
  inst.check();
  if (inst.g.vertices.size() > 20 && !force)
    throw GuardError("instance too large for oracle (|V|=" + std::to_string(inst.g.vertices.size()) + " > 20)");

  detail::DenseView dv(inst);
  std::vector<char> is_term(dv.n, 0);
  for (int t : dv.terminals) is_term[t] = 1;
  std::vector<int> candidates;
  for (int v = 0; v < dv.n; ++v)
    if (inst.kind == ProblemKind::NodeDeletable || !is_term[v]) candidates.push_back(v);

  detail::SubsetNodeSearch s(dv, candidates);
  s.run(0, 0);
  OracleResult r;
  if (s.best < 0)
    throw GraphError("no node multiway cut exists (terminals adjacent with kind node)");
  r.optimum = Rat(s.best);
  std::sort(s.optima.begin(), s.optima.end());
  r.all_optima = std::move(s.optima);
  r.witness = r.all_optima.front();
  r.method = "oracle-subset";
  return r;
}

inline OracleResult oracle_nmwc(const Instance& inst, bool force = false) {
  if (inst.kind != ProblemKind::Node) throw GraphError("oracle_nmwc expects kind node");
  return oracle_node(inst, force);
}

inline OracleResult oracle_nmwc_dt(const Instance& inst, bool force = false) {
  if (inst.kind != ProblemKind::NodeDeletable) throw GraphError("oracle_nmwc_dt expects kind node-deletable");
  return oracle_node(inst, force);
}

// Exact minimum vertex cover by branching on an uncovered edge (take u or
// take v). Independent machinery from the subset oracles on purpose: it is
// the ground truth the vertex-cover reduction is checked against.
inline int vertex_cover_opt(const MultiGraph& g) {
  g.check();
  std::vector<std::pair<int, int>> es;
  for (const auto& e : g.edges) es.push_back({e.u, e.v});

  std::set<int> chosen;
  int best = static_cast<int>(g.vertices.size());

  struct Rec {
    std::vector<std::pair<int, int>>& es;
    std::set<int>& chosen;
    int& best;
    void go(int size) {
      if (size >= best) return;
      const std::pair<int, int>* open = nullptr;
      for (const auto& e : es) {
        if (!chosen.count(e.first) && !chosen.count(e.second)) {
          open = &e;
          break;
        }
      }
      if (!open) {
        best = size;
        return;
      }
      chosen.insert(open->first);
      go(size + 1);
      chosen.erase(open->first);
      // second branch must cover the edge without u: v is forced in
      chosen.insert(open->second);
      go(size + 1);
      chosen.erase(open->second);
    }
  } rec{es, chosen, best};
  rec.go(0);
  return best;
}

} // namespace mwcut
