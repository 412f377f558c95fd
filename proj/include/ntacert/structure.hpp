#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ntacert/formula.hpp"

namespace ntacert::structure {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Equation/variable incidence graph.  adjacency[j] lists, in increasing
/// order, the variables occurring in equation j.
struct BipartiteGraph {
  std::size_t num_equations = 0;
  std::vector<std::string> variables;
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_edges() const;
};

/// Occurrences of variables outside `variables` are an error unless
/// `ignore_unknown` is set, in which case they are treated as constants.
BipartiteGraph build_graph(const std::vector<Term>& equations, const std::vector<std::string>& variables,
                           bool ignore_unknown = false);

struct Matching {
  std::vector<std::size_t> eq_to_var;
  std::vector<std::size_t> var_to_eq;
  std::size_t size = 0;
};

Matching maximum_matching(const BipartiteGraph& graph);

struct Part {
  std::vector<std::size_t> equations;
  std::vector<std::size_t> variables;

  bool empty() const { return equations.empty() && variables.empty(); }
};

struct DMDecomposition {
  Part over;
  Part under;
  Part well;
};

DMDecomposition dm_decompose(const BipartiteGraph& graph);

bool is_overconstrained_free(const std::vector<Term>& equations, const std::vector<std::string>& variables);
/// Over and under parts both empty.
bool is_well_constrained(const std::vector<Term>& equations, const std::vector<std::string>& variables);

}  // namespace ntacert::structure
