#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mwcut/formula.hpp"
#include "mwcut/graph.hpp"

namespace mwcut {

using json = nlohmann::json;  // object keys serialize sorted: canonical form

// --- instances -------------------------------------------------------------
//
// {"vertices":[{"id":0,"label":"..."} ...],
//  "edges":[{"id":0,"u":0,"v":1,"w":"p/q"} ...],
//  "terminals":[...], "k":"p/q", "kind":"edge|node|node-deletable",
//  "rotation":{"0":[edge ids in cyclic order], ...}}   (rotation optional)

inline json graph_to_json(const MultiGraph& g) {
  json jv = json::array();
  for (int v : g.vertices) {
    json o;
    o["id"] = v;
    auto it = g.labels.find(v);
    if (it != g.labels.end()) o["label"] = it->second;
    jv.push_back(o);
  }
  json je = json::array();
  for (const auto& e : g.edges)
    je.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"w", e.w.str()}});
  json out;
  out["vertices"] = jv;
  out["edges"] = je;
  if (!g.rotation.empty()) {
    json jr;
    for (const auto& [v, order] : g.rotation) jr[std::to_string(v)] = order;
    out["rotation"] = jr;
  }
  return out;
}

inline MultiGraph graph_from_json(const json& j) {
  MultiGraph g;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw GraphError("graph json needs 'vertices' and 'edges'");
  for (const auto& jv : j.at("vertices"))
    g.add_vertex(jv.at("id").get<int>(),
                 jv.contains("label") ? jv.at("label").get<std::string>() : "");
  for (const auto& je : j.at("edges"))
    g.add_edge(je.at("id").get<int>(), je.at("u").get<int>(), je.at("v").get<int>(),
               Rat::parse(je.at("w").get<std::string>()));
  if (j.contains("rotation")) {
    for (auto it = j.at("rotation").begin(); it != j.at("rotation").end(); ++it)
      g.rotation[std::stoi(it.key())] = it.value().get<std::vector<int>>();
  }
  g.check();
  return g;
}

inline json instance_to_json(const Instance& inst) {
  json out = graph_to_json(inst.g);
  out["terminals"] = inst.terminals;
  out["k"] = inst.budget.str();
  out["kind"] = kind_name(inst.kind);
  return out;
}

inline Instance instance_from_json(const json& j) {
  Instance inst;
  inst.g = graph_from_json(j);
  if (!j.contains("terminals") || !j.contains("k") || !j.contains("kind"))
    throw GraphError("instance json needs 'terminals', 'k' and 'kind'");
  inst.terminals = j.at("terminals").get<std::vector<int>>();
  inst.budget = Rat::parse(j.at("k").get<std::string>());
  inst.kind = kind_from_name(j.at("kind").get<std::string>());
  inst.check();
  return inst;
}

// --- formulas ---------------------------------------------------------------
//
// {"n":int, "clauses":[[±int,...],...], "planar_certified":bool}

inline json formula_to_json(const Formula& f) {
  json out;
  out["n"] = f.n;
  out["clauses"] = f.clauses;
  out["planar_certified"] = f.planar_certified;
  return out;
}

inline Formula formula_from_json(const json& j) {
  Formula f;
  f.n = j.at("n").get<int>();
  f.clauses = j.at("clauses").get<std::vector<std::vector<int>>>();
  f.planar_certified = j.value("planar_certified", false);
  return f;
}

// DIMACS CNF: comment lines, a "p cnf <n> <m>" header, then whitespace-
// separated 0-terminated clauses. The format has no planarity metadata, so
// planar_certified comes back false.
inline Formula dimacs_import(std::istream& in) {
  Formula f;
  f.planar_certified = false;
  std::string line;
  bool have_header = false;
  long long declared_m = 0;
  std::vector<int> current;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> f.n >> declared_m) || p != "p" || fmt != "cnf")
        throw GraphError("dimacs: expected 'p cnf <n> <m>' header, got '" + line + "'");
      have_header = true;
      continue;
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!have_header) throw GraphError("dimacs: missing 'p cnf' header");
  if (!current.empty()) throw GraphError("dimacs: last clause not 0-terminated");
  if (declared_m != f.m())
    throw GraphError("dimacs: header declares " + std::to_string(declared_m) +
                     " clauses, found " + std::to_string(f.m()));
  return f;
}

inline Formula dimacs_import_string(const std::string& text) {
  std::istringstream in(text);
  return dimacs_import(in);
}

// --- file helpers -----------------------------------------------------------

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write " + path);
  out << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace mwcut
