#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

#include "mwcut/chain.hpp"
#include "support/micro.hpp"

using namespace mwcut;
using namespace mwcut::testing;

namespace {

std::map<std::string, StageReport> by_name(const ChainReport& rep) {
  std::map<std::string, StageReport> m;
  for (const auto& s : rep.stages) m[s.name] = s;
  return m;
}

Instance star4() {
  Instance inst;
  inst.kind = ProblemKind::Edge;
  for (int v = 1; v <= 5; ++v) inst.g.add_vertex(v);
  for (int l = 1; l <= 4; ++l) inst.g.add_edge(l, l, 5, Rat(1));
  inst.terminals = {1, 2, 3, 4};
  inst.budget = Rat(4);
  return inst;
}

Formula tiny_sat() {
  Formula f;
  f.n = 2;
  f.clauses = {{1, 2}, {1, 2}, {-1, -2}};
  return f;
}

} // namespace

TEST_CASE("formula chain verifies the fast stages and records the rest", "[chain][formula]") {
  ChainReport rep = verify_chain(tiny_sat());
  REQUIRE(rep.ok());
  REQUIRE(rep.stages.size() == 6);
  auto m = by_name(rep);
  for (const char* name : {"formula", "sat", "weighted", "expanded"})
    REQUIRE(m.at(name).status == "ok");
  for (const char* name : {"honeycomb", "nmwc"}) {
    REQUIRE(m.at(name).status == "skipped");
    REQUIRE_FALSE(m.at(name).detail.empty());  // a skip always carries its reason
  }
  REQUIRE(m.at("weighted").optimum == Rat(7 * 2 + 2 * 3));
  REQUIRE(m.at("expanded").optimum == m.at("weighted").optimum);
}

TEST_CASE("formula chain respects the expanded-stage guard", "[chain][formula]") {
  ChainOptions opts;
  opts.expanded_edge_guard = 10;  // force the skip path
  ChainReport rep = verify_chain(tiny_sat(), opts);
  REQUIRE(rep.ok());  // skipped stages never fail a chain
  auto m = by_name(rep);
  REQUIRE(m.at("weighted").status == "ok");
  REQUIRE(m.at("expanded").status == "skipped");
  REQUIRE_THAT(m.at("expanded").detail, Catch::Matchers::ContainsSubstring("guard"));
}

TEST_CASE("formula chain reports stage failures on invalid input", "[chain][formula]") {
  Formula bad;
  bad.n = 2;
  bad.clauses = {{1, 2}, {1, 2}, {1, -2}};  // variable 1 occurs three times positive
  ChainReport rep = verify_chain(bad);
  REQUIRE_FALSE(rep.ok());
  auto m = by_name(rep);
  REQUIRE(m.at("formula").status == "failed");
  REQUIRE(m.at("weighted").status == "failed");
}

TEST_CASE("instance chain runs all six stages on a micro star", "[chain][instance]") {
  ChainReport rep = verify_chain(star4());
  REQUIRE(rep.ok());
  REQUIRE(rep.stages.size() == 6);
  for (const auto& s : rep.stages) {
    INFO(s.name << ": " << s.status << " - " << s.detail);
    REQUIRE(s.status == "ok");
  }
  auto m = by_name(rep);
  REQUIRE(m.at("edge-exact").optimum == Rat(3));
  REQUIRE(m.at("honeycomb").optimum == Rat(3));
  REQUIRE(m.at("nmwc").optimum == Rat(3));
  REQUIRE(m.at("nmwc-dt").optimum == Rat(1));  // vertex cover of a star
}

TEST_CASE("instance chain skips expansion stages for fractional weights", "[chain][instance]") {
  Instance inst = random_edge_instance(501, 6, 3, 3, WeightStyle::Rational);
  ChainReport rep = verify_chain(inst);
  REQUIRE(rep.ok());
  auto m = by_name(rep);
  REQUIRE(m.at("edge-exact").status == "ok");
  REQUIRE(m.at("expanded").status == "skipped");
  REQUIRE_THAT(m.at("expanded").detail, Catch::Matchers::ContainsSubstring("integral"));
  REQUIRE(m.at("honeycomb").status == "skipped");
  REQUIRE(m.at("nmwc").status == "skipped");
  REQUIRE(m.at("nmwc-dt").status == "ok");  // works on the topology alone
}

TEST_CASE("instance chain handles graphs that need no replacement", "[chain][instance]") {
  // A unit path is already subcubic: the honeycomb stage replaces nothing.
  Instance inst;
  inst.kind = ProblemKind::Edge;
  for (int v = 1; v <= 4; ++v) inst.g.add_vertex(v);
  for (int e = 1; e <= 3; ++e) inst.g.add_edge(e, e, e + 1, Rat(1));
  inst.terminals = {1, 4};
  inst.budget = Rat(3);
  ChainReport rep = verify_chain(inst);
  REQUIRE(rep.ok());
  auto m = by_name(rep);
  REQUIRE(m.at("honeycomb").status == "ok");
  REQUIRE_THAT(m.at("honeycomb").detail, Catch::Matchers::ContainsSubstring("0 vertices replaced"));
}

TEST_CASE("instance chain rejects non-edge inputs outright", "[chain][instance]") {
  Instance node = random_node_instance(502, 6, 3, 2, ProblemKind::Node);
  REQUIRE_THROWS_AS(verify_chain(node), GraphError);
}

TEST_CASE("chain report serializes stage by stage", "[chain][json]") {
  ChainReport rep = verify_chain(star4());
  json j = chain_report_to_json(rep);
  REQUIRE(j.at("ok").get<bool>());
  REQUIRE(j.at("stages").size() == 6);
  REQUIRE(j.at("stages")[0].at("name") == "instance");
  REQUIRE(j.at("stages")[1].at("optimum") == "3");
  for (const auto& s : j.at("stages")) REQUIRE(s.at("status") == "ok");
}

TEST_CASE("every small corpus formula passes its chain", "[chain][corpus]") {
  const char* dir = std::getenv("MWCUT_CORPUS");
  REQUIRE(dir != nullptr);
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.find("n4") != std::string::npos) continue;  // heavy files run in acceptance
    Formula f = formula_from_json(read_json_file(entry.path().string()));
    ChainReport rep = verify_chain(f);
    INFO(name);
    REQUIRE(rep.ok());
    auto m = by_name(rep);
    REQUIRE(m.at("weighted").status == "ok");
    REQUIRE(m.at("expanded").status == "ok");
    REQUIRE(m.at("honeycomb").status == "skipped");
    ++seen;
  }
  REQUIRE(seen == 8);  // four n=2 and four n=3 fixtures
}
