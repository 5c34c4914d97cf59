#include <catch2/catch_amalgamated.hpp>

#include "mwcut/bnb.hpp"
#include "mwcut/gadgets.hpp"
#include "mwcut/honeycomb.hpp"
#include "mwcut/maxflow.hpp"
#include "mwcut/transforms.hpp"

using namespace mwcut;

namespace {

Formula tiny_sat() {
  Formula f;
  f.n = 2;
  f.clauses = {{1, 2}, {1, 2}, {-1, -2}};
  f.planar_certified = true;
  return f;
}

Instance star4(bool terminal_center) {
  Instance inst;
  inst.kind = ProblemKind::Edge;
  for (int v = 1; v <= 5; ++v) inst.g.add_vertex(v);
  for (int l = 1; l <= 4; ++l) inst.g.add_edge(l, l, 5, Rat(1));
  inst.terminals = terminal_center ? std::vector<int>{1, 2, 5} : std::vector<int>{1, 2, 3, 4};
  inst.budget = Rat(4);
  return inst;
}

} // namespace

TEST_CASE("compiled instances have the promised shape", "[reduce][compile]") {
  for (int n : {2, 3, 4}) {
    Formula f = gen_formula(7, n);
    CompileResult r = compile_weighted(f);
    int m = static_cast<int>(f.clauses.size());
    INFO("n=" << n << " m=" << m);

    REQUIRE(r.inst.budget == Rat(7 * n + 2 * m));
    REQUIRE(r.inst.terminals.size() == static_cast<size_t>(2 * n + 2 * m));

    size_t expect_v = 8u * n, expect_e = 10u * n + 2u * m;
    for (const auto& cl : f.clauses) {
      expect_v += cl.size() + 3;  // u-chain has s+1 vertices plus two terminals
      expect_e += 3 * cl.size();
    }
    REQUIRE(r.inst.g.vertices.size() == expect_v);
    REQUIRE(r.inst.g.edges.size() == expect_e);

    DegreeProfile prof = degree_profile(r.inst.g, r.inst.terminals);
    REQUIRE(prof.max_degree == 5);
    REQUIRE(prof.max_degree_terminal == 1);
    REQUIRE(prof.max_incident_weight_nonterminal <= Rat(6));
    REQUIRE(weight_values(r.inst.g) == std::set<std::string>{"1", "2", "3"});
  }
}

TEST_CASE("compilation rejects invalid formulas", "[reduce][compile]") {
  Formula bad = tiny_sat();
  bad.clauses[0] = {1, 1};  // duplicate variable in a clause
  REQUIRE_THROWS_AS(compile_weighted(bad), GraphError);
}

TEST_CASE("every satisfying assignment maps to a budget-exact cut", "[reduce][canonical]") {
  Formula f = tiny_sat();
  CompileResult r = compile_weighted(f);
  int models = 0;
  for (int mask = 0; mask < 4; ++mask) {
    Assignment a = {(mask & 1) != 0, (mask & 2) != 0};
    if (!satisfies(f, a)) {
      REQUIRE_THROWS_AS(assignment_to_cut(f, r.trace, a), GraphError);
      continue;
    }
    ++models;
    std::set<int> cut = assignment_to_cut(f, r.trace, a);

    CutSolution sol;
    sol.kind = SolKind::EdgeSet;
    sol.ids = cut;
    sol.weight = Rat(0);
    for (int id : cut) sol.weight += r.inst.g.find_edge(id)->w;
    REQUIRE(sol.weight == r.inst.budget);
    REQUIRE(verify_cut(r.inst, sol).valid);

    Assignment back = cut_to_assignment(f, r.trace, cut);
    REQUIRE(back == a);
  }
  REQUIRE(models == 2);
}

TEST_CASE("compiled optimum equals the budget exactly when satisfiable", "[reduce][solve]") {
  for (int n : {2, 3}) {
    Formula f = gen_formula(11, n);
    REQUIRE(brute_force_sat(f).has_value());
    CompileResult r = compile_weighted(f);
    SolveReport ex = solve_exact_emwc(r.inst);
    INFO("n=" << n);
    REQUIRE(*ex.optimum == r.inst.budget);

    Assignment a = cut_to_assignment(f, r.trace, ex.witness.ids);
    REQUIRE(satisfies(f, a));
  }
}

TEST_CASE("cuts below budget are infeasible on satisfiable compilations", "[reduce][solve]") {
  Formula f = gen_formula(11, 2);
  CompileResult r = compile_weighted(f);
  SolveReport below = bnb_emwc(r.inst, r.inst.budget - Rat(1));
  REQUIRE_FALSE(below.feasible);
  for (const auto& [depth, bound] : below.bound_trace)
    REQUIRE(bound > r.inst.budget - Rat(1));
}

TEST_CASE("gadget trace survives a json round trip", "[reduce][json]") {
  Formula f = gen_formula(5, 3);
  CompileResult r = compile_weighted(f);
  GadgetTrace back = gadget_trace_from_json(gadget_trace_to_json(r.trace));
  REQUIRE(back.n == r.trace.n);
  REQUIRE(back.m == r.trace.m);
  REQUIRE(back.budget == r.trace.budget);
  REQUIRE(back.vars.size() == r.trace.vars.size());
  for (size_t i = 0; i < back.vars.size(); ++i) {
    REQUIRE(back.vars[i].a == r.trace.vars[i].a);
    REQUIRE(back.vars[i].base_diamond == r.trace.vars[i].base_diamond);
    REQUIRE(back.vars[i].occ == r.trace.vars[i].occ);
  }
  REQUIRE(back.clauses.size() == r.trace.clauses.size());
  for (size_t j = 0; j < back.clauses.size(); ++j) {
    REQUIRE(back.clauses[j].u == r.trace.clauses[j].u);
    REQUIRE(back.clauses[j].base == r.trace.clauses[j].base);
  }
}

TEST_CASE("honeycomb closed forms match the materialized hexagon", "[reduce][honeycomb]") {
  Lattice lat = honeycomb_lattice(1, 1);
  REQUIRE(honeycomb_vertex_count(1, 1) == 6);
  REQUIRE(honeycomb_edge_count(1, 1) == 6);
  REQUIRE(honeycomb_slot_count(1, 1) == 6);
  REQUIRE(lat.g.vertices.size() == 6);
  REQUIRE(lat.g.edges.size() == 6);
  REQUIRE(lat.slots.size() == 6);  // every vertex of a hexagon is degree 2
}

TEST_CASE("honeycomb lattices are subcubic with degree-2 perimeter slots", "[reduce][honeycomb]") {
  for (auto [rows, cols] : {std::pair{5, 5}, std::pair{9, 9}, std::pair{4, 7}}) {
    Lattice lat = honeycomb_lattice(rows, cols);
    INFO("rows=" << rows << " cols=" << cols);
    REQUIRE(static_cast<long long>(lat.g.vertices.size()) == honeycomb_vertex_count(rows, cols));
    REQUIRE(static_cast<long long>(lat.g.edges.size()) == honeycomb_edge_count(rows, cols));
    REQUIRE(static_cast<long long>(lat.slots.size()) == honeycomb_slot_count(rows, cols));

    std::map<int, int> deg;
    for (const auto& e : lat.g.edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    std::set<int> slot_set(lat.slots.begin(), lat.slots.end());
    REQUIRE(slot_set.size() == lat.slots.size());
    for (int v : lat.g.vertices) {
      REQUIRE(deg[v] >= 2);
      REQUIRE(deg[v] <= 3);
      REQUIRE((deg[v] == 2) == (slot_set.count(v) > 0));
    }
  }
}

TEST_CASE("honeycomb safety inequalities", "[reduce][honeycomb]") {
  REQUIRE(honeycomb_params_safe({9, 9, 9}, 4));
  REQUIRE_FALSE(honeycomb_params_safe({9, 9, 9}, 5));   // sep must exceed 2*degree
  REQUIRE(honeycomb_params_safe({5, 5, 7}, 3));
  REQUIRE_FALSE(honeycomb_params_safe({2, 2, 7}, 3));   // perimeter too short
  REQUIRE_FALSE(honeycomb_params_safe({0, 5, 7}, 3));
  REQUIRE(honeycomb_params_safe({40, 40, 20}, 5));      // desk defaults cover the compiled family
  REQUIRE(honeycomb_params_safe({1000, 1000, 100}, 5)); // closed forms only, never built
}

TEST_CASE("unweight replaces only high-degree interior vertices", "[reduce][honeycomb]") {
  Instance st = star4(false);
  UnweightResult uw = unweight(st, {9, 9, 9});

  REQUIRE(uw.trace.blocks.size() == 1);
  const HoneycombBlock& blk = uw.trace.blocks.front();
  REQUIRE(blk.replaced_vertex == 5);
  REQUIRE(blk.attach_edges.size() == 4);
  REQUIRE(blk.attach_slots.size() == 4);
  REQUIRE_FALSE(uw.inst.g.has_vertex(5));

  REQUIRE(uw.inst.g.edges.size() == static_cast<size_t>(honeycomb_edge_count(9, 9)) + 4);
  REQUIRE(degree_profile(uw.inst.g).max_degree <= 3);
  REQUIRE(uw.inst.terminals == st.terminals);
  REQUIRE(uw.inst.budget == st.budget);

  // Rewired edges carry their expansion ancestry back to the star edges.
  std::set<int> attach(blk.attach_edges.begin(), blk.attach_edges.end());
  REQUIRE(cut_ancestors(uw.inst.g, attach) == std::set<int>{1, 2, 3, 4});

  // Attachment slots are pairwise distinct and spaced by construction.
  std::set<int> slots(blk.attach_slots.begin(), blk.attach_slots.end());
  REQUIRE(slots.size() == 4);
}

TEST_CASE("unweight preserves the optimum", "[reduce][honeycomb]") {
  Instance st = star4(false);
  Rat before = *solve_exact_emwc(st).optimum;
  UnweightResult uw = unweight(st, {9, 9, 9});
  Rat after = *solve_exact_emwc(uw.inst).optimum;
  REQUIRE(before == Rat(3));
  REQUIRE(after == before);
}

TEST_CASE("unweight preserves two-terminal flow values through expansion", "[reduce][honeycomb]") {
  // Weight-2 path through one interior vertex: expansion doubles both edges,
  // giving the interior vertex degree 4; the min cut value must survive.
  Instance inst;
  inst.kind = ProblemKind::Edge;
  for (int v = 1; v <= 3; ++v) inst.g.add_vertex(v);
  inst.g.add_edge(1, 1, 3, Rat(2));
  inst.g.add_edge(2, 3, 2, Rat(2));
  inst.terminals = {1, 2};
  inst.budget = Rat(4);
  Rat before = max_flow_min_cut(inst).value;
  REQUIRE(before == Rat(2));

  UnweightResult uw = unweight(inst, {9, 9, 9});
  REQUIRE(uw.trace.blocks.size() == 1);
  REQUIRE(uw.trace.blocks.front().replaced_vertex == 3);
  REQUIRE(max_flow_min_cut(uw.inst).value == before);
}

TEST_CASE("unweight rejects expanded terminal degrees above three", "[reduce][honeycomb]") {
  REQUIRE_THROWS_WITH(unweight(star4(true), {9, 9, 9}),
                      Catch::Matchers::ContainsSubstring("terminal degree"));
}

TEST_CASE("unweight rejects unsafe parameters by degree", "[reduce][honeycomb]") {
  REQUIRE_THROWS_WITH(unweight(star4(false), {5, 5, 7}),
                      Catch::Matchers::ContainsSubstring("unsafe honeycomb parameters"));
}

TEST_CASE("honeycomb trace survives a json round trip", "[reduce][json]") {
  UnweightResult uw = unweight(star4(false), {9, 9, 9});
  HoneycombTrace back = honeycomb_trace_from_json(honeycomb_trace_to_json(uw.trace));
  REQUIRE(back.params.rows == 9);
  REQUIRE(back.params.sep == 9);
  REQUIRE(back.blocks.size() == 1);
  REQUIRE(back.blocks[0].replaced_vertex == uw.trace.blocks[0].replaced_vertex);
  REQUIRE(back.blocks[0].attach_slots == uw.trace.blocks[0].attach_slots);
  REQUIRE(back.blocks[0].attach_edges == uw.trace.blocks[0].attach_edges);
  REQUIRE(back.blocks[0].internal_edges == uw.trace.blocks[0].internal_edges);
}
