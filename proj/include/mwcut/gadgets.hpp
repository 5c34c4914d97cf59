#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mwcut/formula.hpp"
#include "mwcut/graph.hpp"
#include "mwcut/json_io.hpp"

namespace mwcut {

// Construction record for one variable gadget. The gadget is a diamond
// (a, b, p1, p2) fused with a hat (b, c, q) at the shared vertex b: bases
// (a,b) and (b,c) of weight 1, four diamond connectors a-p1-b / a-p2-b and
// two hat connectors b-q-c of weight 1, and weight-3 pendant edges to the
// two terminals. p1 and p2 carry the positive occurrences, q the negative
// one; each slot vertex is identified with a link position of the clause
// that consumes the occurrence, which later adds the two clause-side
// connector edges recorded here.
struct VarGadget {
  int a = -1, b = -1, c = -1, p1 = -1, p2 = -1, q = -1;
  int tpos = -1, tneg = -1;                    // terminal vertices
  int base_diamond = -1, base_hat = -1;        // edge ids, weight 1
  std::array<int, 4> diamond_conn{{-1, -1, -1, -1}};  // (a,p1),(p1,b),(a,p2),(p2,b)
  std::array<int, 2> hat_conn{{-1, -1}};              // (b,q),(q,c)
  int tpos_edge = -1, tneg_edge = -1;          // weight 3
  std::array<int, 2> p1_clause_conn{{-1, -1}};
  std::array<int, 2> p2_clause_conn{{-1, -1}};
  std::array<int, 2> q_clause_conn{{-1, -1}};
  // (clause index, position) consuming each slot, in order p1, p2, q.
  std::array<std::pair<int, int>, 3> occ{{{-1, -1}, {-1, -1}, {-1, -1}}};
};

// Construction record for one clause gadget: a chain u_0..u_s of weight-2
// base edges, a link vertex per literal position bridging u_{r-1} and u_r
// with two weight-1 connectors, and weight-3 pendant terminal edges at the
// chain ends. Link vertices are the variable slot vertices, not fresh ones.
struct ClauseGadget {
  std::vector<int> u;
  std::vector<int> link;
  std::vector<int> base;
  std::vector<std::array<int, 2>> conn;        // per position: (u_{r-1},l),(l,u_r)
  int spos = -1, sneg = -1;
  int spos_edge = -1, sneg_edge = -1;
};

struct GadgetTrace {
  int n = 0, m = 0;
  Rat budget = Rat(0);
  std::vector<VarGadget> vars;
  std::vector<ClauseGadget> clauses;
};

struct CompileResult {
  Instance inst;
  GadgetTrace trace;
};

inline Rat budget_for(int n, int m) { return Rat(7LL * n + 2LL * m); }

namespace detail {

inline void check_compiled_shape(const CompileResult& r) {
  const Instance& inst = r.inst;
  DegreeProfile prof = degree_profile(inst.g, inst.terminals);
  if (prof.max_degree != 5)
    throw GraphError("compiled graph has max degree " + std::to_string(prof.max_degree) +
                     ", expected 5");
  if (prof.max_degree_terminal != 1)
    throw GraphError("compiled terminals must be pendant");
  if (!(prof.max_incident_weight_nonterminal <= Rat(6)))
    throw GraphError("compiled incident weight exceeds 6 at a non-terminal");
  std::set<std::string> ws = weight_values(inst.g);
  for (const auto& w : ws)
    if (w != "1" && w != "2" && w != "3")
      throw GraphError("compiled weight outside {1,2,3}: " + w);
  size_t expect_v = 8u * r.trace.n;
  size_t expect_e = 10u * r.trace.n + 2u * r.trace.m;
  for (const auto& cg : r.trace.clauses) {
    expect_v += cg.u.size() + 2;               // links are shared, not new
    expect_e += 3 * cg.base.size();
  }
  if (inst.g.vertices.size() != expect_v || inst.g.edges.size() != expect_e)
    throw GraphError("compiled size mismatch");
}

} // namespace detail

// Reduce a validated formula to a weighted edge multiway cut instance with
// budget 7n + 2m. Satisfying assignments map to cuts of exactly that weight
// (assignment_to_cut); the decision problems are equivalent.
inline CompileResult compile_weighted(const Formula& f) {
  FormulaVerdict v = validate_formula(f);
  if (!v.ok) throw GraphError("formula invalid: " + v.message);

  CompileResult r;
  r.trace.n = f.n;
  r.trace.m = f.m();
  r.trace.budget = budget_for(f.n, f.m());

  MultiGraph& g = r.inst.g;
  int nv = 0, ne = 0;
  auto vtx = [&](const std::string& label) {
    g.add_vertex(++nv, label);
    return nv;
  };
  auto edge = [&](int u, int w, long long wt) {
    g.add_edge(++ne, u, w, Rat(wt));
    return ne;
  };

  for (int i = 1; i <= f.n; ++i) {
    VarGadget vg;
    std::string p = "v" + std::to_string(i) + ".";
    vg.a = vtx(p + "a");
    vg.b = vtx(p + "b");
    vg.c = vtx(p + "c");
    vg.p1 = vtx(p + "p1");
    vg.p2 = vtx(p + "p2");
    vg.q = vtx(p + "q");
    vg.tpos = vtx(p + "t+");
    vg.tneg = vtx(p + "t-");
    vg.base_diamond = edge(vg.a, vg.b, 1);
    vg.diamond_conn = {edge(vg.a, vg.p1, 1), edge(vg.p1, vg.b, 1),
                       edge(vg.a, vg.p2, 1), edge(vg.p2, vg.b, 1)};
    vg.base_hat = edge(vg.b, vg.c, 1);
    vg.hat_conn = {edge(vg.b, vg.q, 1), edge(vg.q, vg.c, 1)};
    vg.tpos_edge = edge(vg.tpos, vg.a, 3);
    vg.tneg_edge = edge(vg.tneg, vg.c, 3);
    r.inst.terminals.push_back(vg.tpos);
    r.inst.terminals.push_back(vg.tneg);
    r.trace.vars.push_back(vg);
  }

  std::vector<int> pos_used(f.n + 1, 0);
  for (size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& cl = f.clauses[j];
    int s = static_cast<int>(cl.size());
    ClauseGadget cg;
    std::string p = "c" + std::to_string(j + 1) + ".";
    for (int r2 = 0; r2 <= s; ++r2) cg.u.push_back(vtx(p + "u" + std::to_string(r2)));
    for (int r2 = 1; r2 <= s; ++r2) {
      int lit = cl[r2 - 1];
      int var = std::abs(lit);
      VarGadget& vg = r.trace.vars[var - 1];
      int slot;
      std::array<int, 2>* cc;
      int occ_idx;
      if (lit > 0) {
        if (pos_used[var] == 0) { slot = vg.p1; cc = &vg.p1_clause_conn; occ_idx = 0; }
        else { slot = vg.p2; cc = &vg.p2_clause_conn; occ_idx = 1; }
        ++pos_used[var];
      } else {
        slot = vg.q;
        cc = &vg.q_clause_conn;
        occ_idx = 2;
      }
      vg.occ[occ_idx] = {static_cast<int>(j), r2 - 1};
      cg.link.push_back(slot);
      cg.base.push_back(edge(cg.u[r2 - 1], cg.u[r2], 2));
      std::array<int, 2> cpair = {edge(cg.u[r2 - 1], slot, 1), edge(slot, cg.u[r2], 1)};
      cg.conn.push_back(cpair);
      *cc = cpair;
    }
    cg.spos = vtx(p + "s+");
    cg.sneg = vtx(p + "s-");
    cg.spos_edge = edge(cg.spos, cg.u[0], 3);
    cg.sneg_edge = edge(cg.sneg, cg.u[s], 3);
    r.inst.terminals.push_back(cg.spos);
    r.inst.terminals.push_back(cg.sneg);
    r.trace.clauses.push_back(cg);
  }

  r.inst.kind = ProblemKind::Edge;
  r.inst.budget = r.trace.budget;
  r.inst.check();
  detail::check_compiled_shape(r);
  return r;
}

// Canonical cut for a satisfying assignment, weight exactly 7n + 2m.
//
// True variable: cut the hat (base and both variable-side connectors of q)
// plus the clause-side connectors of p1 and p2, so the true literals' link
// vertices detach from their clauses. False variable: mirror image (diamond
// base, variable-side connectors of p1 and p2, clause-side connectors of q).
// Clause: cut the base edge under the first true literal; its link vertex
// hangs on the variable side, so no path bypasses the cut base.
inline std::set<int> assignment_to_cut(const Formula& f, const GadgetTrace& tr,
                                       const Assignment& a) {
  if (!satisfies(f, a)) throw GraphError("assignment does not satisfy the formula");
  std::set<int> cut;
  for (int i = 0; i < f.n; ++i) {
    const VarGadget& vg = tr.vars[i];
    if (a[i]) {
      cut.insert(vg.base_hat);
      cut.insert(vg.hat_conn.begin(), vg.hat_conn.end());
      cut.insert(vg.p1_clause_conn.begin(), vg.p1_clause_conn.end());
      cut.insert(vg.p2_clause_conn.begin(), vg.p2_clause_conn.end());
    } else {
      cut.insert(vg.base_diamond);
      cut.insert(vg.diamond_conn.begin(), vg.diamond_conn.end());
      cut.insert(vg.q_clause_conn.begin(), vg.q_clause_conn.end());
    }
  }
  for (size_t j = 0; j < f.clauses.size(); ++j) {
    const auto& cl = f.clauses[j];
    int first_true = -1;
    for (size_t r = 0; r < cl.size(); ++r)
      if (literal_true(cl[r], a)) { first_true = static_cast<int>(r); break; }
    if (first_true < 0) throw GraphError("unsatisfied clause in satisfying assignment");
    cut.insert(tr.clauses[j].base[first_true]);
  }
  return cut;
}

// Read an assignment back out of a cut. Canonical cuts determine every
// variable from which gadget base they cut; other optimum shapes can leave
// variables ambiguous, which are completed by brute force against the
// formula (bounded, since ambiguity is rare in practice).
inline Assignment cut_to_assignment(const Formula& f, const GadgetTrace& tr,
                                    const std::set<int>& cut, int max_free = 12) {
  Assignment a(f.n, false);
  std::vector<int> free;
  for (int i = 0; i < f.n; ++i) {
    const VarGadget& vg = tr.vars[i];
    bool d = cut.count(vg.base_diamond) > 0;
    bool h = cut.count(vg.base_hat) > 0;
    if (d == h) free.push_back(i);
    else a[i] = h;
  }
  if (free.empty()) {
    if (!satisfies(f, a))
      throw GraphError("cut does not decode to a satisfying assignment");
    return a;
  }
  if (static_cast<int>(free.size()) > max_free)
    throw GuardError("cut decoding has too many ambiguous variables (" +
                     std::to_string(free.size()) + " > " + std::to_string(max_free) + ")");
  for (unsigned long long mask = 0; mask < (1ULL << free.size()); ++mask) {
    for (size_t t = 0; t < free.size(); ++t) a[free[t]] = (mask >> t) & 1;
    if (satisfies(f, a)) return a;
  }
  throw GraphError("cut does not decode to a satisfying assignment");
}

inline json var_gadget_to_json(const VarGadget& v) {
  json o;
  o["a"] = v.a; o["b"] = v.b; o["c"] = v.c;
  o["p1"] = v.p1; o["p2"] = v.p2; o["q"] = v.q;
  o["t+"] = v.tpos; o["t-"] = v.tneg;
  o["base_diamond"] = v.base_diamond;
  o["base_hat"] = v.base_hat;
  o["diamond_conn"] = v.diamond_conn;
  o["hat_conn"] = v.hat_conn;
  o["t+_edge"] = v.tpos_edge; o["t-_edge"] = v.tneg_edge;
  o["p1_clause_conn"] = v.p1_clause_conn;
  o["p2_clause_conn"] = v.p2_clause_conn;
  o["q_clause_conn"] = v.q_clause_conn;
  json occ = json::array();
  for (auto& [cj, pos] : v.occ) occ.push_back({cj, pos});
  o["occ"] = occ;
  return o;
}

inline VarGadget var_gadget_from_json(const json& o) {
  VarGadget v;
  v.a = o.at("a"); v.b = o.at("b"); v.c = o.at("c");
  v.p1 = o.at("p1"); v.p2 = o.at("p2"); v.q = o.at("q");
  v.tpos = o.at("t+"); v.tneg = o.at("t-");
  v.base_diamond = o.at("base_diamond");
  v.base_hat = o.at("base_hat");
  for (size_t i = 0; i < 4; ++i) v.diamond_conn[i] = o.at("diamond_conn").at(i);
  for (size_t i = 0; i < 2; ++i) v.hat_conn[i] = o.at("hat_conn").at(i);
  v.tpos_edge = o.at("t+_edge"); v.tneg_edge = o.at("t-_edge");
  for (size_t i = 0; i < 2; ++i) {
    v.p1_clause_conn[i] = o.at("p1_clause_conn").at(i);
    v.p2_clause_conn[i] = o.at("p2_clause_conn").at(i);
    v.q_clause_conn[i] = o.at("q_clause_conn").at(i);
  }
  for (size_t i = 0; i < 3; ++i)
    v.occ[i] = {o.at("occ").at(i).at(0), o.at("occ").at(i).at(1)};
  return v;
}

inline json clause_gadget_to_json(const ClauseGadget& c) {
  json o;
  o["u"] = c.u;
  o["link"] = c.link;
  o["base"] = c.base;
  json conn = json::array();
  for (auto& p : c.conn) conn.push_back({p[0], p[1]});
  o["conn"] = conn;
  o["s+"] = c.spos; o["s-"] = c.sneg;
  o["s+_edge"] = c.spos_edge; o["s-_edge"] = c.sneg_edge;
  return o;
}

inline ClauseGadget clause_gadget_from_json(const json& o) {
  ClauseGadget c;
  c.u = o.at("u").get<std::vector<int>>();
  c.link = o.at("link").get<std::vector<int>>();
  c.base = o.at("base").get<std::vector<int>>();
  for (const auto& p : o.at("conn"))
    c.conn.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
  c.spos = o.at("s+"); c.sneg = o.at("s-");
  c.spos_edge = o.at("s+_edge"); c.sneg_edge = o.at("s-_edge");
  return c;
}

inline json gadget_trace_to_json(const GadgetTrace& t) {
  json o;
  o["n"] = t.n;
  o["m"] = t.m;
  o["budget"] = t.budget.str();
  json vs = json::array(), cs = json::array();
  for (const auto& v : t.vars) vs.push_back(var_gadget_to_json(v));
  for (const auto& c : t.clauses) cs.push_back(clause_gadget_to_json(c));
  o["vars"] = vs;
  o["clauses"] = cs;
  return o;
}

inline GadgetTrace gadget_trace_from_json(const json& o) {
  GadgetTrace t;
  t.n = o.at("n");
  t.m = o.at("m");
  t.budget = Rat::parse(o.at("budget").get<std::string>());
  for (const auto& v : o.at("vars")) t.vars.push_back(var_gadget_from_json(v));
  for (const auto& c : o.at("clauses")) t.clauses.push_back(clause_gadget_from_json(c));
  return t;
}

} // namespace mwcut
