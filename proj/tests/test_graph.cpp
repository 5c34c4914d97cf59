#include <catch2/catch_amalgamated.hpp>

#include "mwcut/graph.hpp"

using namespace mwcut;

namespace {

MultiGraph path3() {
  MultiGraph g;
  for (int v = 1; v <= 4; ++v) g.add_vertex(v);
  g.add_edge(1, 1, 2, Rat(1));
  g.add_edge(2, 2, 3, Rat(2));
  g.add_edge(3, 3, 4, Rat(1));
  return g;
}

} // namespace

TEST_CASE("add_edge validates endpoints and weights", "[graph]") {
  MultiGraph g;
  g.add_vertex(1);
  g.add_vertex(2);
  CHECK_THROWS_AS(g.add_edge(1, 1, 1, Rat(1)), GraphError);   // self loop
  CHECK_THROWS_AS(g.add_edge(1, 1, 9, Rat(1)), GraphError);   // unknown endpoint
  CHECK_THROWS_AS(g.add_edge(1, 1, 2, Rat(0)), GraphError);   // non-positive weight
  CHECK_THROWS_AS(g.add_edge(1, 1, 2, Rat(-1)), GraphError);
  g.add_edge(1, 1, 2, Rat(1));
  CHECK_THROWS_AS(g.add_edge(1, 1, 2, Rat(1)), GraphError);   // duplicate id
  g.add_edge(2, 1, 2, Rat(1));                                // parallel edge is fine
  CHECK(g.edges.size() == 2);
  CHECK_THROWS_AS(g.add_vertex(1), GraphError);               // duplicate vertex
}

TEST_CASE("components indexed by smallest member order", "[graph]") {
  MultiGraph g = path3();
  std::map<int, int> comp = components(g, {2}, {});
  CHECK(comp == std::map<int, int>{{1, 0}, {2, 0}, {3, 1}, {4, 1}});
  comp = components(g, {}, {2});
  CHECK(comp == std::map<int, int>{{1, 0}, {3, 1}, {4, 1}});  // deleted vertex absent
  CHECK_THROWS_AS(components(g, {99}, {}), GraphError);
  CHECK_THROWS_AS(components(g, {}, {99}), GraphError);
}

TEST_CASE("verify_cut on edge instances", "[graph]") {
  Instance inst;
  inst.g = path3();
  inst.kind = ProblemKind::Edge;
  inst.terminals = {1, 4};
  inst.budget = Rat(4);

  CutSolution good{SolKind::EdgeSet, {2}, Rat(2), {}};
  CHECK(verify_cut(inst, good).valid);

  CutSolution bad{SolKind::EdgeSet, {}, Rat(0), {}};
  CutVerdict v = verify_cut(inst, bad);
  CHECK_FALSE(v.valid);
  CHECK(v.violating_pair == std::pair<int, int>{1, 4});

  CutSolution wrong_weight{SolKind::EdgeSet, {2}, Rat(1), {}};
  CHECK_THROWS_AS(verify_cut(inst, wrong_weight), GraphError);

  CutSolution wrong_kind{SolKind::VertexSet, {2}, Rat(1), {}};
  CHECK_THROWS_AS(verify_cut(inst, wrong_kind), GraphError);

  CutSolution unknown{SolKind::EdgeSet, {77}, Rat(1), {}};
  CHECK_THROWS_AS(verify_cut(inst, unknown), GraphError);
}

TEST_CASE("verify_cut on node instances", "[graph]") {
  Instance inst;
  inst.g = path3();
  inst.kind = ProblemKind::Node;
  inst.terminals = {1, 4};
  inst.budget = Rat(2);

  CHECK(verify_cut(inst, {SolKind::VertexSet, {2}, Rat(1), {}}).valid);
  CHECK(verify_cut(inst, {SolKind::VertexSet, {3}, Rat(1), {}}).valid);
  CHECK_THROWS_AS(verify_cut(inst, {SolKind::VertexSet, {1}, Rat(1), {}}), GraphError);

  inst.kind = ProblemKind::NodeDeletable;
  CHECK(verify_cut(inst, {SolKind::VertexSet, {1}, Rat(1), {}}).valid);  // deleted terminal separates
}

TEST_CASE("instance check rejects bad terminal sets", "[graph]") {
  Instance inst;
  inst.g = path3();
  inst.kind = ProblemKind::Edge;
  inst.budget = Rat(1);
  inst.terminals = {};
  CHECK_THROWS_AS(inst.check(), GraphError);
  inst.terminals = {1, 1};
  CHECK_THROWS_AS(inst.check(), GraphError);
  inst.terminals = {1, 99};
  CHECK_THROWS_AS(inst.check(), GraphError);
  inst.terminals = {1, 4};
  CHECK_NOTHROW(inst.check());
}

TEST_CASE("degree profile separates terminal and interior", "[graph]") {
  MultiGraph g = path3();
  DegreeProfile p = degree_profile(g, {1, 4});
  CHECK(p.max_degree == 2);
  CHECK(p.max_degree_terminal == 1);
  CHECK(p.max_degree_nonterminal == 2);
  CHECK(p.max_incident_weight_terminal == Rat(1));
  CHECK(p.max_incident_weight_nonterminal == Rat(3));
}

TEST_CASE("weight_values collects distinct weights", "[graph]") {
  MultiGraph g = path3();
  auto ws = weight_values(g);
  CHECK(ws == std::set<std::string>{"1", "2"});
}

TEST_CASE("euler lint flags dense simple graphs", "[graph]") {
  MultiGraph g;
  for (int v = 1; v <= 5; ++v) g.add_vertex(v);
  int id = 0;
  for (int u = 1; u <= 5; ++u)
    for (int v = u + 1; v <= 5; ++v) g.add_edge(++id, u, v, Rat(1));
  EulerLint lint = euler_lint(g);
  CHECK_FALSE(lint.ok);  // K5 exceeds 3n-6
  CHECK(lint.m_simple == 10);
  CHECK(lint.bound == 9);

  MultiGraph p = path3();
  CHECK(euler_lint(p).ok);
}

TEST_CASE("rotation systems must match incidences exactly", "[graph]") {
  MultiGraph g = path3();
  g.rotation[1] = {1};
  g.rotation[2] = {1, 2};
  g.rotation[3] = {2, 3};
  g.rotation[4] = {3};
  CHECK_NOTHROW(g.check_rotation());
  g.rotation[2] = {2, 1};
  CHECK_NOTHROW(g.check_rotation());  // order free, multiset fixed
  g.rotation[2] = {1};
  CHECK_THROWS_AS(g.check_rotation(), GraphError);
  g.rotation[2] = {1, 2, 3};
  CHECK_THROWS_AS(g.check_rotation(), GraphError);
  g.rotation = {{2, {1, 2}}};  // present but missing the other vertices
  CHECK_THROWS_AS(g.check_rotation(), GraphError);
}

TEST_CASE("problem kind names round trip", "[graph]") {
  CHECK(kind_name(ProblemKind::Edge) == "edge");
  CHECK(kind_name(ProblemKind::Node) == "node");
  CHECK(kind_name(ProblemKind::NodeDeletable) == "node-deletable");
  CHECK(kind_from_name("edge") == ProblemKind::Edge);
  CHECK(kind_from_name("node") == ProblemKind::Node);
  CHECK(kind_from_name("node-deletable") == ProblemKind::NodeDeletable);
  CHECK_THROWS_AS(kind_from_name("vertex"), GraphError);
}

TEST_CASE("cut weight sums the chosen edges", "[graph]") {
  MultiGraph g = path3();
  CHECK(cut_weight(g, {1, 3}) == Rat(2));
  CHECK(cut_weight(g, {}) == Rat(0));
  CHECK_THROWS_AS(cut_weight(g, {42}), GraphError);
}
