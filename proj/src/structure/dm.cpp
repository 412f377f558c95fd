#include <algorithm>
#include <deque>
#include <stdexcept>

#include "ntacert/structure.hpp"

namespace ntacert::structure {

std::size_t BipartiteGraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& row : adjacency) n += row.size();
  return n;
}

BipartiteGraph build_graph(const std::vector<Term>& equations, const std::vector<std::string>& variables,
                           bool ignore_unknown) {
  BipartiteGraph g;
  g.num_equations = equations.size();
  g.variables = variables;
  g.adjacency.resize(equations.size());
  for (std::size_t j = 0; j < equations.size(); ++j) {
    for (const auto& v : equations[j].vars()) {
      auto it = std::find(variables.begin(), variables.end(), v);
      if (it == variables.end()) {
        if (ignore_unknown) continue;
        throw std::invalid_argument("equation variable '" + v + "' not in variable list");
      }
      g.adjacency[j].push_back(static_cast<std::size_t>(it - variables.begin()));
    }
    std::sort(g.adjacency[j].begin(), g.adjacency[j].end());
  }
  return g;
}

namespace {

// Hopcroft-Karp with equations on the left.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g), m_{std::vector<std::size_t>(g.num_equations, kUnmatched),
                  std::vector<std::size_t>(g.num_variables(), kUnmatched), 0},
        dist_(g.num_equations) {}

  Matching run() {
    while (bfs()) {
      for (std::size_t u = 0; u < g_.num_equations; ++u)
        if (m_.eq_to_var[u] == kUnmatched && dfs(u)) ++m_.size;
    }
    return m_;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::deque<std::size_t> q;
    for (std::size_t u = 0; u < g_.num_equations; ++u) {
      if (m_.eq_to_var[u] == kUnmatched) {
        dist_[u] = 0;
        q.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : g_.adjacency[u]) {
        const std::size_t w = m_.var_to_eq[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : g_.adjacency[u]) {
      const std::size_t w = m_.var_to_eq[v];
      if (w == kUnmatched || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        m_.eq_to_var[u] = v;
        m_.var_to_eq[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  Matching m_;
  std::vector<std::size_t> dist_;
};

}  // namespace

Matching maximum_matching(const BipartiteGraph& graph) { return HopcroftKarp(graph).run(); }

DMDecomposition dm_decompose(const BipartiteGraph& graph) {
  const Matching m = maximum_matching(graph);
  const std::size_t ne = graph.num_equations, nv = graph.num_variables();
  std::vector<std::vector<std::size_t>> var_eqs(nv);
  for (std::size_t j = 0; j < ne; ++j)
    for (std::size_t v : graph.adjacency[j]) var_eqs[v].push_back(j);

  // Over: reachable from unmatched equations along eq -edge-> var -match-> eq.
  std::vector<char> eq_over(ne, 0), var_over(nv, 0);
  std::deque<std::size_t> q;
  for (std::size_t j = 0; j < ne; ++j)
    if (m.eq_to_var[j] == kUnmatched) {
      eq_over[j] = 1;
      q.push_back(j);
    }
  while (!q.empty()) {
    const std::size_t j = q.front();
    q.pop_front();
    for (std::size_t v : graph.adjacency[j]) {
      if (var_over[v]) continue;
      var_over[v] = 1;
      const std::size_t w = m.var_to_eq[v];
      if (w != kUnmatched && !eq_over[w]) {
        eq_over[w] = 1;
        q.push_back(w);
      }
    }
  }

  // Under: reachable from unmatched variables along var -edge-> eq -match-> var.
  std::vector<char> eq_under(ne, 0), var_under(nv, 0);
  for (std::size_t v = 0; v < nv; ++v)
    if (m.var_to_eq[v] == kUnmatched) {
      var_under[v] = 1;
      q.push_back(v);
    }
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop_front();
    for (std::size_t j : var_eqs[v]) {
      if (eq_under[j]) continue;
      eq_under[j] = 1;
      const std::size_t w = m.eq_to_var[j];
      if (w != kUnmatched && !var_under[w]) {
        var_under[w] = 1;
        q.push_back(w);
      }
    }
  }

  DMDecomposition dm;
  for (std::size_t j = 0; j < ne; ++j) {
    if (eq_over[j]) dm.over.equations.push_back(j);
    else if (eq_under[j]) dm.under.equations.push_back(j);
    else dm.well.equations.push_back(j);
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (var_over[v]) dm.over.variables.push_back(v);
    else if (var_under[v]) dm.under.variables.push_back(v);
    else dm.well.variables.push_back(v);
  }
  return dm;
}

bool is_overconstrained_free(const std::vector<Term>& equations, const std::vector<std::string>& variables) {
  return dm_decompose(build_graph(equations, variables)).over.empty();
}

bool is_well_constrained(const std::vector<Term>& equations, const std::vector<std::string>& variables) {
  const DMDecomposition dm = dm_decompose(build_graph(equations, variables));
  return dm.over.empty() && dm.under.empty();
}

}  // namespace ntacert::structure
