#pragma once

#include <map>
#include <set>
#include <vector>

#include "mwcut/graph.hpp"

namespace mwcut {

struct LineGraphResult {
  MultiGraph lg;
  std::map<int, int> edge_to_vertex;  // source edge id -> line-graph vertex id
};

// Line graph: one unit-weight vertex per edge of g, one edge per unordered
// pair of g-edges sharing an endpoint (a parallel pair shares two endpoints
// but still contributes a single pair). Rotation and ancestry do not carry
// over; the bijection map does.
inline LineGraphResult line_graph(const MultiGraph& g) {
  if (g.edges.empty()) throw GraphError("line graph of a graph with no edges");
  LineGraphResult r;
  int next_v = 0;
  for (const auto& e : g.edges) {
    r.edge_to_vertex[e.id] = next_v;
    r.lg.add_vertex(next_v, "e" + std::to_string(e.id));
    ++next_v;
  }
  int next_e = 0;
  for (size_t i = 0; i < g.edges.size(); ++i) {
    for (size_t j = i + 1; j < g.edges.size(); ++j) {
      const auto& a = g.edges[i];
      const auto& b = g.edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        r.lg.add_edge(next_e++, r.edge_to_vertex[a.id], r.edge_to_vertex[b.id], Rat(1));
    }
  }
  return r;
}

// Replaces every edge by a path of ell+1 unit-weight edges through ell fresh
// vertices. Every path edge records the original edge as its ancestor.
// Rotation does not survive (fresh degree-2 vertices would need embedding
// choices this library does not make).
inline MultiGraph subdivide(const MultiGraph& g, int ell) {
  if (ell < 1) throw GraphError("subdivision order must be >= 1");
  MultiGraph out;
  out.vertices = g.vertices;
  out.labels = g.labels;
  int next_v = g.max_vertex_id() + 1;
  int next_e = 0;
  for (const auto& e : g.edges) {
    int prev = e.u;
    for (int i = 0; i < ell; ++i) {
      out.add_vertex(next_v);
      out.add_edge(next_e, prev, next_v, Rat(1));
      out.ancestor[next_e] = e.id;
      ++next_e;
      prev = next_v++;
    }
    out.add_edge(next_e, prev, e.v, Rat(1));
    out.ancestor[next_e] = e.id;
    ++next_e;
  }
  return out;
}

// Replaces each edge of integer weight j by j parallel unit edges between the
// same endpoints. Non-integral weights are errors. Fresh edges record their
// source edge as ancestor; an existing rotation is carried over with the
// copies of each edge listed consecutively in the original slot.
inline MultiGraph expand_parallel(const MultiGraph& g) {
  for (const auto& e : g.edges)
    if (!e.w.is_integer())
      throw GraphError("expand_parallel: edge " + std::to_string(e.id) +
                       " has non-integral weight " + e.w.str());
  MultiGraph out;
  out.vertices = g.vertices;
  out.labels = g.labels;
  int next_e = 0;
  std::map<int, std::vector<int>> copies;  // source edge id -> new ids
  for (const auto& e : g.edges) {
    long long j = e.w.num();
    for (long long c = 0; c < j; ++c) {
      out.add_edge(next_e, e.u, e.v, Rat(1));
      out.ancestor[next_e] = e.id;
      copies[e.id].push_back(next_e);
      ++next_e;
    }
  }
  if (!g.rotation.empty()) {
    for (const auto& [v, order] : g.rotation) {
      std::vector<int> expanded;
      for (int id : order)
        for (int c : copies[id]) expanded.push_back(c);
      out.rotation[v] = expanded;
    }
  }
  return out;
}

// Maps a cut on a transformed graph back through ancestry: each cut edge is
// replaced by its ancestor (deduplicated). Edges without an ancestor entry
// are kept as-is.
inline std::set<int> cut_ancestors(const MultiGraph& transformed, const std::set<int>& cut) {
  std::set<int> src;
  for (int id : cut) {
    auto it = transformed.ancestor.find(id);
    src.insert(it == transformed.ancestor.end() ? id : it->second);
  }
  return src;
}

} // namespace mwcut
