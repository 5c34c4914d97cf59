#pragma once

#include <set>
#include <sstream>
#include <string>

#include "mwcut/graph.hpp"

namespace mwcut {

// Graphviz export. Terminals draw as red boxes, cut edges green and dashed,
// muted edges (honeycomb interiors) gray without labels to keep large
// lattices readable.
inline std::string to_dot(const Instance& inst, const std::set<int>& cut = {},
                          const std::set<int>& muted = {}) {
  std::ostringstream os;
  os << "graph mwcut {\n";
  os << "  node [shape=circle fontsize=10];\n";
  for (int v : inst.g.vertices) {
    os << "  n" << v << " [label=\"";
    auto it = inst.g.labels.find(v);
    os << (it != inst.g.labels.end() ? it->second : std::to_string(v));
    os << "\"";
    if (inst.is_terminal(v)) os << " shape=box color=red fontcolor=red";
    os << "];\n";
  }
  for (const auto& e : inst.g.edges) {
    os << "  n" << e.u << " -- n" << e.v << " [";
    if (cut.count(e.id)) os << "color=green penwidth=2 style=dashed ";
    else if (muted.count(e.id)) os << "color=gray ";
    if (!muted.count(e.id)) os << "label=\"" << e.w.str() << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace mwcut
