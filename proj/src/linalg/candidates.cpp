#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "ntacert/linalg.hpp"

namespace ntacert::linalg {

std::vector<double> kearfott_weights(const JacobianAt& j) {
  std::vector<std::size_t> all(j.vars.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<double> w(j.vars.size(), 0.0);
  for (const auto& b : null_space(j.restrict(all)))
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += std::fabs(b[i]);
  return w;
}

namespace {

std::vector<std::size_t> column_indices(const std::vector<std::string>& order, const std::vector<std::string>& names) {
  std::vector<std::size_t> out;
  for (const auto& n : names) {
    auto it = std::find(order.begin(), order.end(), n);
    if (it != order.end()) out.push_back(static_cast<std::size_t>(it - order.begin()));
  }
  return out;
}

}  // namespace

std::vector<std::string> kearfott_order(const JacobianAt& j, const std::vector<std::string>& under) {
  std::vector<std::size_t> all(j.vars.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto basis = null_space(j.restrict(all));
  if (basis.empty()) return {};
  std::vector<double> w(j.vars.size(), 0.0);
  for (const auto& b : basis)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += std::fabs(b[i]);
  std::vector<std::size_t> idx = column_indices(j.vars, under);
  std::sort(idx.begin(), idx.end());
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(j.vars[i]);
  return out;
}

bool well_constrained_after(const std::vector<Term>& equations, const std::vector<std::string>& vars,
                            const std::vector<std::string>& instantiated) {
  std::vector<std::string> rest;
  for (const auto& v : vars)
    if (std::find(instantiated.begin(), instantiated.end(), v) == instantiated.end()) rest.push_back(v);
  const auto dm = structure::dm_decompose(structure::build_graph(equations, rest, true));
  return dm.over.empty() && dm.under.empty();
}

bool full_rank_after(const JacobianAt& j, const std::vector<std::string>& instantiated) {
  if (!j.all_finite()) return false;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < j.vars.size(); ++i)
    if (std::find(instantiated.begin(), instantiated.end(), j.vars[i]) == instantiated.end()) cols.push_back(i);
  if (cols.size() != j.matrix.rows) return false;
  return rank_with_threshold(j.restrict(cols)).robust;
}

std::vector<InstantiationCandidate> instantiation_candidates(const std::vector<Term>& equations,
                                                             const std::vector<std::string>& vars,
                                                             const JacobianAt& j, const CandidateOptions& o) {
  std::vector<InstantiationCandidate> out;
  if (equations.size() > vars.size()) return out;
  const std::size_t s = vars.size() - equations.size();
  if (s == 0) {
    InstantiationCandidate empty;
    if ((!o.filter_overconstr_v || well_constrained_after(equations, vars, {})) &&
        (!o.filter_rank_deficient || full_rank_after(j, {})))
      out.push_back(empty);
    return out;
  }
  const auto dm = structure::dm_decompose(structure::build_graph(equations, vars));
  std::vector<std::size_t> pool = dm.under.variables;  // indices into vars, ascending
  if (pool.size() < s) return out;

  std::vector<double> weight(vars.size(), 0.0);
  if (j.vars == vars) weight = kearfott_weights(j);
  if (o.kearfott_ordering)
    std::stable_sort(pool.begin(), pool.end(), [&](std::size_t a, std::size_t b) { return weight[a] > weight[b]; });

  auto accept = [&](const std::vector<std::size_t>& combo) {
    InstantiationCandidate c;
    std::vector<std::size_t> chosen;
    for (std::size_t k : combo) chosen.push_back(pool[k]);
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t v : chosen) {
      c.vars.push_back(vars[v]);
      c.score += weight[v];
    }
    if (o.filter_overconstr_v && !well_constrained_after(equations, vars, c.vars)) return;
    if (o.filter_rank_deficient && !full_rank_after(j, c.vars)) return;
    out.push_back(std::move(c));
  };

  std::size_t examined = 0;
  std::vector<std::size_t> first(s);
  std::iota(first.begin(), first.end(), std::size_t{0});
  if (!o.kearfott_ordering) {
    // Lexicographic combinations of the pool.
    std::vector<std::size_t> combo = first;
    while (out.size() < o.cap && examined++ < o.max_examined) {
      accept(combo);
      std::size_t i = s;
      while (i > 0 && combo[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t k = i; k < s; ++k) combo[k] = combo[k - 1] + 1;
    }
    return out;
  }

  // Best-first by cumulative weight, starting from the top-s prefix.
  auto score = [&](const std::vector<std::size_t>& combo) {
    double t = 0;
    for (std::size_t k : combo) t += weight[pool[k]];
    return t;
  };
  using Entry = std::pair<double, std::vector<std::size_t>>;
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  std::set<std::vector<std::size_t>> seen;
  heap.emplace(score(first), first);
  seen.insert(first);
  while (!heap.empty() && out.size() < o.cap && examined++ < o.max_examined) {
    auto [sc, combo] = heap.top();
    heap.pop();
    accept(combo);
    for (std::size_t i = 0; i < s; ++i) {
      const std::size_t limit = i + 1 < s ? combo[i + 1] : pool.size();
      if (combo[i] + 1 >= limit) continue;
      auto next = combo;
      ++next[i];
      if (seen.insert(next).second) heap.emplace(score(next), std::move(next));
    }
  }
  return out;
}

}  // namespace ntacert::linalg
