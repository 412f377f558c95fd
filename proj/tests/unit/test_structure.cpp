#include <random>

#include "../common/examples.hpp"
#include "doctest.h"
#include "ntacert/structure.hpp"

using namespace ntacert;
using namespace ntacert::structure;

namespace {

std::vector<Term> equations_of(const Formula& f) {
  std::vector<Term> out;
  for (const auto& c : f.clauses) out.push_back(c.literals.at(0).term());
  return out;
}

std::vector<std::string> names(const BipartiteGraph& g, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(g.variables[i]);
  return out;
}

// Maximum matching by exhaustive search over equations.
std::size_t brute_matching(const BipartiteGraph& g, std::size_t eq, std::vector<char>& used) {
  if (eq == g.num_equations) return 0;
  std::size_t best = brute_matching(g, eq + 1, used);
  for (std::size_t v : g.adjacency[eq]) {
    if (used[v]) continue;
    used[v] = 1;
    best = std::max(best, 1 + brute_matching(g, eq + 1, used));
    used[v] = 0;
  }
  return best;
}

BipartiteGraph random_graph(std::mt19937_64& rng) {
  BipartiteGraph g;
  g.num_equations = rng() % 7;
  const std::size_t nv = rng() % 7;
  for (std::size_t i = 0; i < nv; ++i) g.variables.push_back("v" + std::to_string(i));
  g.adjacency.resize(g.num_equations);
  const double density = std::uniform_real_distribution<double>(0.1, 0.7)(rng);
  for (auto& row : g.adjacency)
    for (std::size_t v = 0; v < nv; ++v)
      if (std::uniform_real_distribution<double>(0, 1)(rng) < density) row.push_back(v);
  return g;
}

}  // namespace

TEST_CASE("graph of the four-equation example") {
  Formula f = parse_normalized(testdata::kDmExample);
  BipartiteGraph g = build_graph(equations_of(f), f.vars);
  CHECK(g.num_equations == 4);
  CHECK(g.variables == std::vector<std::string>{"x", "y", "z", "w"});
  CHECK(g.adjacency == std::vector<std::vector<std::size_t>>{{0, 1}, {2}, {3}, {3}});
  CHECK(g.num_edges() == 5);
}

TEST_CASE("graph edge cases") {
  BipartiteGraph empty = build_graph({}, {"x", "y"});
  CHECK(empty.num_equations == 0);
  CHECK(empty.num_variables() == 2);
  const Term x = Term::variable("x");
  BipartiteGraph dup = build_graph({Term::add(x, x)}, {"x"});
  CHECK(dup.num_edges() == 1);
  CHECK_THROWS_AS(build_graph({x}, {"y"}), std::invalid_argument);
  CHECK(build_graph({x}, {"y"}, true).num_edges() == 0);
}

TEST_CASE("DM decomposition of the four-equation example") {
  Formula f = parse_normalized(testdata::kDmExample);
  BipartiteGraph g = build_graph(equations_of(f), f.vars);
  DMDecomposition dm = dm_decompose(g);
  CHECK(dm.under.equations == std::vector<std::size_t>{0});
  CHECK(names(g, dm.under.variables) == std::vector<std::string>{"x", "y"});
  CHECK(dm.well.equations == std::vector<std::size_t>{1});
  CHECK(names(g, dm.well.variables) == std::vector<std::string>{"z"});
  CHECK(dm.over.equations == std::vector<std::size_t>{2, 3});
  CHECK(names(g, dm.over.variables) == std::vector<std::string>{"w"});
  CHECK_FALSE(is_overconstrained_free(equations_of(f), f.vars));
}

TEST_CASE("square and under-constrained systems") {
  Formula sq = parse_normalized("(declare-fun x () Real)(declare-fun y () Real)(assert (= x 0))(assert (= y 0))");
  DMDecomposition dm = dm_decompose(build_graph(equations_of(sq), sq.vars));
  CHECK(dm.over.empty());
  CHECK(dm.under.empty());
  CHECK(dm.well.equations.size() == 2);
  CHECK(is_overconstrained_free(equations_of(sq), sq.vars));
  CHECK(is_well_constrained(equations_of(sq), sq.vars));

  Formula un = parse_normalized(
      "(declare-fun x () Real)(declare-fun y () Real)(declare-fun z () Real)(declare-fun w () Real)"
      "(assert (= (+ x y) 0))(assert (= (+ z w) 0))");
  DMDecomposition du = dm_decompose(build_graph(equations_of(un), un.vars));
  CHECK(du.under.equations.size() == 2);
  CHECK(du.under.variables.size() == 4);
  CHECK(du.well.empty());
  CHECK(du.over.empty());

  Formula ov = parse_normalized("(declare-fun w () Real)(assert (= w 0))(assert (= (sin w) 0))");
  CHECK_FALSE(is_overconstrained_free(equations_of(ov), ov.vars));
}

TEST_CASE("DM properties on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const BipartiteGraph g = random_graph(rng);
    const Matching m = maximum_matching(g);
    std::vector<char> used(g.num_variables(), 0);
    CHECK(m.size == brute_matching(g, 0, used));
    const DMDecomposition dm = dm_decompose(g);

    std::vector<int> eq_seen(g.num_equations, 0), var_seen(g.num_variables(), 0);
    for (const Part* p : {&dm.over, &dm.under, &dm.well}) {
      for (std::size_t e : p->equations) ++eq_seen[e];
      for (std::size_t v : p->variables) ++var_seen[v];
    }
    for (int c : eq_seen) CHECK(c == 1);
    for (int c : var_seen) CHECK(c == 1);

    if (!dm.over.empty()) CHECK(dm.over.equations.size() > dm.over.variables.size());
    if (!dm.under.empty()) CHECK(dm.under.variables.size() > dm.under.equations.size());
    CHECK(dm.well.equations.size() == dm.well.variables.size());

    // Hall: the well part restricted to its own variables has a perfect matching.
    BipartiteGraph w;
    w.num_equations = dm.well.equations.size();
    for (std::size_t v : dm.well.variables) w.variables.push_back(g.variables[v]);
    for (std::size_t e : dm.well.equations) {
      std::vector<std::size_t> row;
      for (std::size_t v : g.adjacency[e]) {
        auto it = std::find(dm.well.variables.begin(), dm.well.variables.end(), v);
        if (it != dm.well.variables.end()) row.push_back(static_cast<std::size_t>(it - dm.well.variables.begin()));
      }
      w.adjacency.push_back(row);
    }
    std::vector<char> wu(w.num_variables(), 0);
    CHECK(brute_matching(w, 0, wu) == w.num_equations);

    // Well equations only touch well or over-part variables... never under ones.
    for (std::size_t e : dm.well.equations)
      for (std::size_t v : g.adjacency[e])
        CHECK(std::find(dm.under.variables.begin(), dm.under.variables.end(), v) == dm.under.variables.end());
  }
}
