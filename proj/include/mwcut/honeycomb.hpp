#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwcut/graph.hpp"
#include "mwcut/json_io.hpp"
#include "mwcut/transforms.hpp"

namespace mwcut {

// Brick-wall honeycomb lattice used to replace high-degree vertices in the
// unweighting step. Grid coordinates (r, c) with r in [0, rows] and
// c in [0, 2*cols+1]; all horizontal edges, vertical edges where r+c is
// even, and the two degree-1 corners dropped. Every surviving vertex has
// degree 2 or 3, and the degree-2 boundary vertices are the attachment
// slots, enumerated in clockwise perimeter order.
struct HoneycombParams {
  int rows = 40;
  int cols = 40;
  int sep = 20;  // minimum slot-index spacing between attachment points
};

inline long long honeycomb_vertex_count(int rows, int cols) {
  return 2LL * (rows + 1) * (cols + 1) - 2;
}

inline long long honeycomb_edge_count(int rows, int cols) {
  return 1LL * (rows + 1) * (2 * cols + 1) + 1LL * rows * (cols + 1) - 2;
}

inline long long honeycomb_slot_count(int rows, int cols) {
  return 2LL * (rows + cols + 1);
}

// Conservative sufficiency: spacing wide enough that carving any group of
// attachment slots out of the lattice costs strictly more than cutting the
// attached edges themselves, and enough perimeter to space all attachments.
inline bool honeycomb_params_safe(const HoneycombParams& p, int degree) {
  if (p.rows < 1 || p.cols < 1 || p.sep < 1) return false;
  return p.sep > 2 * degree && honeycomb_slot_count(p.rows, p.cols) >= 1LL * degree * p.sep;
}

struct Lattice {
  MultiGraph g;
  std::vector<int> slots;  // degree-2 boundary vertex ids, perimeter order
};

// Build one lattice with unit weights, ids starting at the given offsets.
inline Lattice honeycomb_lattice(int rows, int cols, int first_vid = 1, int first_eid = 1,
                                 const std::string& label_prefix = "h.") {
  if (rows < 1 || cols < 1) throw GraphError("honeycomb needs rows, cols >= 1");
  Lattice lat;
  int W = 2 * cols + 2;  // columns per row in the coordinate grid
  std::set<std::pair<int, int>> trimmed = {{0, 2 * cols + 1},
                                           rows % 2 == 0 ? std::pair<int, int>{rows, 0}
                                                         : std::pair<int, int>{rows, 2 * cols + 1}};
  auto alive = [&](int r, int c) {
    return r >= 0 && r <= rows && c >= 0 && c <= 2 * cols + 1 && !trimmed.count({r, c});
  };
  auto vid = [&](int r, int c) { return first_vid + r * W + c; };

  for (int r = 0; r <= rows; ++r)
    for (int c = 0; c <= 2 * cols + 1; ++c)
      if (alive(r, c))
        lat.g.add_vertex(vid(r, c), label_prefix + std::to_string(r) + "." + std::to_string(c));

  int eid = first_eid;
  for (int r = 0; r <= rows; ++r)
    for (int c = 0; c <= 2 * cols; ++c)
      if (alive(r, c) && alive(r, c + 1)) lat.g.add_edge(eid++, vid(r, c), vid(r, c + 1), Rat(1));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c <= 2 * cols + 1; ++c)
      if ((r + c) % 2 == 0 && alive(r, c) && alive(r + 1, c))
        lat.g.add_edge(eid++, vid(r, c), vid(r + 1, c), Rat(1));

  std::map<int, int> deg;
  for (const auto& e : lat.g.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  auto take = [&](int r, int c) {
    if (alive(r, c) && deg[vid(r, c)] == 2) lat.slots.push_back(vid(r, c));
  };
  for (int c = 0; c <= 2 * cols + 1; ++c) take(0, c);
  for (int r = 1; r < rows; ++r) take(r, 2 * cols + 1);
  for (int c = 2 * cols + 1; c >= 0; --c) take(rows, c);
  for (int r = rows - 1; r >= 1; --r) take(r, 0);

  if (static_cast<long long>(lat.slots.size()) != honeycomb_slot_count(rows, cols))
    throw GraphError("honeycomb slot enumeration disagrees with the closed form");
  return lat;
}

struct HoneycombBlock {
  int replaced_vertex = -1;
  std::vector<int> attach_slots;   // slot vertex id per rewired edge
  std::vector<int> attach_edges;   // rewired edge ids, sorted ascending
  int first_vertex = -1, last_vertex = -1;
  std::vector<int> internal_edges;
};

struct HoneycombTrace {
  HoneycombParams params;
  std::vector<HoneycombBlock> blocks;
};

struct UnweightResult {
  Instance inst;
  HoneycombTrace trace;
};

// Expand integral weights into parallel unit edges, then replace every
// vertex whose expanded degree exceeds 3 with a honeycomb whose boundary
// slots absorb the incident edges, spaced at least sep slots apart. The
// result is an unweighted instance of maximum degree 3 with the same
// terminals and budget; rewired edges keep their ids and ancestry, lattice
// edges are new and carry none.
inline UnweightResult unweight(const Instance& inst, const HoneycombParams& params = {}) {
  if (inst.kind != ProblemKind::Edge) throw GraphError("unweight expects an edge instance");
  inst.check();

  UnweightResult out;
  out.trace.params = params;
  out.inst.kind = ProblemKind::Edge;
  out.inst.budget = inst.budget;
  out.inst.terminals = inst.terminals;
  out.inst.g = expand_parallel(inst.g);
  MultiGraph& g = out.inst.g;
  g.rotation.clear();  // replacement invalidates any embedding data

  std::map<int, std::vector<int>> incident;
  for (const auto& e : g.edges) {
    incident[e.u].push_back(e.id);
    incident[e.v].push_back(e.id);
  }
  for (int t : inst.terminals)
    if (incident[t].size() > 3)
      throw GraphError("terminal degree exceeds 3 after expansion (vertex " +
                       std::to_string(t) + ")");

  std::vector<int> to_replace;
  for (int v : g.vertices)
    if (incident[v].size() > 3 && !inst.is_terminal(v)) to_replace.push_back(v);

  int next_vid = g.max_vertex_id() + 1;
  int next_eid = g.max_edge_id() + 1;
  for (int v : to_replace) {
    int d = static_cast<int>(incident[v].size());
    if (!honeycomb_params_safe(params, d))
      throw GraphError("unsafe honeycomb parameters for degree " + std::to_string(d) +
                       " vertex " + std::to_string(v));
    Lattice lat = honeycomb_lattice(params.rows, params.cols, next_vid, next_eid,
                                    "h" + std::to_string(v) + ".");
    HoneycombBlock blk;
    blk.replaced_vertex = v;
    blk.first_vertex = next_vid;

    for (int lv : lat.g.vertices) g.add_vertex(lv, lat.g.labels.at(lv));
    for (const auto& le : lat.g.edges) {
      g.add_edge(le.id, le.u, le.v, le.w);
      blk.internal_edges.push_back(le.id);
    }
    next_vid = g.max_vertex_id() + 1;
    next_eid = g.max_edge_id() + 1;
    blk.last_vertex = next_vid - 1;

    long long P = static_cast<long long>(lat.slots.size());
    std::vector<int> eids = incident[v];
    std::sort(eids.begin(), eids.end());
    for (int r = 0; r < d; ++r) {
      int slot = lat.slots[static_cast<size_t>(1LL * r * P / d)];
      for (auto& e : g.edges) {
        if (e.id != eids[r]) continue;
        if (e.u == v) e.u = slot;
        else if (e.v == v) e.v = slot;
        break;
      }
      blk.attach_slots.push_back(slot);
      blk.attach_edges.push_back(eids[r]);
    }

    g.vertices.erase(std::find(g.vertices.begin(), g.vertices.end(), v));
    g.labels.erase(v);
    out.trace.blocks.push_back(blk);
  }

  g.check();
  out.inst.check();
  DegreeProfile prof = degree_profile(g);
  if (prof.max_degree > 3)
    throw GraphError("honeycomb replacement left a vertex of degree " +
                     std::to_string(prof.max_degree));
  return out;
}

inline json honeycomb_trace_to_json(const HoneycombTrace& t) {
  json o;
  o["params"] = {{"rows", t.params.rows}, {"cols", t.params.cols}, {"sep", t.params.sep}};
  json bs = json::array();
  for (const auto& b : t.blocks) {
    json bo;
    bo["replaced_vertex"] = b.replaced_vertex;
    bo["attach_slots"] = b.attach_slots;
    bo["attach_edges"] = b.attach_edges;
    bo["vertex_range"] = {b.first_vertex, b.last_vertex};
    bo["internal_edges"] = b.internal_edges;
    bs.push_back(bo);
  }
  o["blocks"] = bs;
  return o;
}

inline HoneycombTrace honeycomb_trace_from_json(const json& o) {
  HoneycombTrace t;
  t.params.rows = o.at("params").at("rows");
  t.params.cols = o.at("params").at("cols");
  t.params.sep = o.at("params").at("sep");
  for (const auto& bo : o.at("blocks")) {
    HoneycombBlock b;
    b.replaced_vertex = bo.at("replaced_vertex");
    b.attach_slots = bo.at("attach_slots").get<std::vector<int>>();
    b.attach_edges = bo.at("attach_edges").get<std::vector<int>>();
    b.first_vertex = bo.at("vertex_range").at(0);
    b.last_vertex = bo.at("vertex_range").at(1);
    b.internal_edges = bo.at("internal_edges").get<std::vector<int>>();
    t.blocks.push_back(b);
  }
  return t;
}

} // namespace mwcut
