#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mwcut/graph.hpp"

namespace mwcut {

// CNF with a fixed occurrence discipline: every variable appears exactly
// twice positively and once negatively, clauses have 2 or 3 distinct
// variables, and every variable sits in at least two clauses of size 2.
// Literals are signed 1-based variable indices. Clause order and literal
// order are significant: gadget wiring consumes them as given.
struct Formula {
  int n = 0;
  std::vector<std::vector<int>> clauses;
  bool planar_certified = false;

  int m() const { return static_cast<int>(clauses.size()); }
};

// Assignment a[i] is the value of variable i+1.
using Assignment = std::vector<bool>;

inline bool literal_true(int lit, const Assignment& a) {
  int v = lit > 0 ? lit : -lit;
  bool val = a[v - 1];
  return lit > 0 ? val : !val;
}

inline bool clause_satisfied(const std::vector<int>& clause, const Assignment& a) {
  for (int lit : clause)
    if (literal_true(lit, a)) return true;
  return false;
}

inline bool satisfies(const Formula& f, const Assignment& a) {
  for (const auto& c : f.clauses)
    if (!clause_satisfied(c, a)) return false;
  return true;
}

struct FormulaVerdict {
  bool ok = true;
  std::string message;            // names the first violated rule and offender
  std::vector<std::string> warnings;
};

// Rule checks in a fixed order; the verdict carries the first violation.
// The Euler lint on the variable-clause incidence graph is a warning only.
inline FormulaVerdict validate_formula(const Formula& f) {
  FormulaVerdict v;
  auto fail = [&](const std::string& msg) {
    v.ok = false;
    v.message = msg;
    return v;
  };

  if (f.n < 0) return fail("negative variable count");
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& c = f.clauses[ci];
    if (c.size() != 2 && c.size() != 3)
      return fail("clause " + std::to_string(ci + 1) + " has size " + std::to_string(c.size()) + " (must be 2 or 3)");
    std::set<int> vars;
    for (int lit : c) {
      int var = lit > 0 ? lit : -lit;
      if (var == 0 || var > f.n)
        return fail("clause " + std::to_string(ci + 1) + " names variable " + std::to_string(var) + " outside 1.." + std::to_string(f.n));
      if (!vars.insert(var).second)
        return fail("clause " + std::to_string(ci + 1) + " repeats variable " + std::to_string(var));
    }
  }

  std::vector<int> pos(f.n, 0), neg(f.n, 0), in_size2(f.n, 0);
  for (const auto& c : f.clauses) {
    for (int lit : c) {
      int var = (lit > 0 ? lit : -lit) - 1;
      (lit > 0 ? pos[var] : neg[var])++;
      if (c.size() == 2) in_size2[var]++;
    }
  }
  for (int i = 0; i < f.n; ++i) {
    if (pos[i] != 2 || neg[i] != 1)
      return fail("variable " + std::to_string(i + 1) + " occurs " + std::to_string(pos[i]) +
                  " times positively and " + std::to_string(neg[i]) + " negatively (need 2 and 1)");
    if (in_size2[i] < 2)
      return fail("variable " + std::to_string(i + 1) + " is in only " + std::to_string(in_size2[i]) +
                  " size-2 clauses (need at least 2)");
  }

  // Incidence graph: variables and clauses as vertices, occurrence edges.
  if (f.n > 0 || !f.clauses.empty()) {
    MultiGraph inc;
    for (int i = 1; i <= f.n; ++i) inc.add_vertex(i);
    for (int j = 0; j < f.m(); ++j) inc.add_vertex(f.n + 1 + j);
    int eid = 0;
    for (int j = 0; j < f.m(); ++j)
      for (int lit : f.clauses[j])
        inc.add_edge(eid++, (lit > 0 ? lit : -lit), f.n + 1 + j, Rat(1));
    EulerLint lint = euler_lint(inc);
    if (!lint.ok)
      v.warnings.push_back("incidence graph fails the Euler bound (" + std::to_string(lint.m_simple) +
                           " > " + std::to_string(lint.bound) + "): not planar");
  }
  return v;
}

// Exhaustive SAT oracle. Returns the lexicographically first satisfying
// assignment over (x1, ..., xn) with false < true, or nullopt.
inline std::optional<Assignment> brute_force_sat(const Formula& f) {
  if (f.n > 25) throw GuardError("instance too large for oracle (n=" + std::to_string(f.n) + " > 25)");
  Assignment a(f.n, false);
  uint64_t total = 1ull << f.n;
  for (uint64_t mask = 0; mask < total; ++mask) {
    for (int i = 0; i < f.n; ++i)
      a[i] = (mask >> (f.n - 1 - i)) & 1;  // x1 is the most significant position
    if (satisfies(f, a)) return a;
  }
  return std::nullopt;
}

// Seeded generator, planar by construction. The n variables sit on a cycle;
// each variable's two positive occurrences are the size-2 clauses with its
// cycle neighbors, and the negative occurrences are grouped into clauses of
// 2-3 cyclically consecutive variables. The incidence graph is a cycle with
// disjoint fans attached inside, so planar_certified is sound. The seed
// drives block sizes and the final clause/literal orders.
inline Formula gen_formula(uint64_t seed, int n) {
  if (n < 2) throw GraphError("gen_formula needs n >= 2");
  std::mt19937_64 rng(seed);
  Formula f;
  f.n = n;
  f.planar_certified = true;

  for (int i = 1; i <= n; ++i)
    f.clauses.push_back({i, i % n + 1});

  int at = 1;
  while (at <= n) {
    int remaining = n - at + 1;
    int block;
    if (remaining == 2 || remaining == 3) block = remaining;
    else if (remaining == 4) block = 2;
    else block = 2 + static_cast<int>(rng() % 2);
    std::vector<int> c;
    for (int i = 0; i < block; ++i) c.push_back(-(at + i));
    f.clauses.push_back(c);
    at += block;
  }

  for (auto& c : f.clauses) std::shuffle(c.begin(), c.end(), rng);
  std::shuffle(f.clauses.begin(), f.clauses.end(), rng);
  return f;
}

// Seeded search for an unsatisfiable valid formula at a given n: sample
// random valid formulas and filter with the SAT oracle. Any formula this
// returns passes validate_formula. For even n all clauses have size 2; for
// odd n one size-3 clause takes up the odd slots. planar_certified is set
// only for n <= 4, where the incidence graph is a subdivision of a graph on
// at most 4 vertices and is therefore always planar.
inline std::optional<Formula> find_unsat_formula(uint64_t seed, int n, int max_tries = 2000000) {
  if (n < 2) throw GraphError("find_unsat_formula needs n >= 2");
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Formula f;
    f.n = n;
    f.planar_certified = n <= 4;

    // Remaining literal slots per variable: two positive, one negative.
    std::vector<std::vector<int>> slots(n);
    for (int i = 0; i < n; ++i) slots[i] = {i + 1, i + 1, -(i + 1)};

    if (3 * n % 2 == 1) {
      // One size-3 clause over three distinct variables, one random slot each.
      std::vector<int> vars(n);
      for (int i = 0; i < n; ++i) vars[i] = i;
      std::shuffle(vars.begin(), vars.end(), rng);
      std::vector<int> c;
      for (int k = 0; k < 3; ++k) {
        int var = vars[k];
        size_t pick = rng() % slots[var].size();
        c.push_back(slots[var][pick]);
        slots[var].erase(slots[var].begin() + pick);
      }
      f.clauses.push_back(c);
    }

    std::vector<int> pool;  // flat slot list for pairing into size-2 clauses
    for (int i = 0; i < n; ++i)
      for (int lit : slots[i]) pool.push_back(lit);
    std::shuffle(pool.begin(), pool.end(), rng);

    bool stuck = false;
    while (!pool.empty()) {
      int a = pool.back();
      pool.pop_back();
      int va = a > 0 ? a : -a;
      // Partner with a different variable; give up on collision pile-ups.
      int idx = -1;
      for (int probe = 0; probe < static_cast<int>(pool.size()); ++probe) {
        int b = pool[probe];
        if ((b > 0 ? b : -b) != va) { idx = probe; break; }
      }
      if (idx < 0) { stuck = true; break; }
      f.clauses.push_back({a, pool[idx]});
      pool.erase(pool.begin() + idx);
    }
    if (stuck) continue;

    if (!validate_formula(f).ok) continue;
    if (!brute_force_sat(f).has_value()) return f;
  }
  return std::nullopt;
}

} // namespace mwcut
