#include <algorithm>
#include <cmath>
#include <numeric>

#include "ntacert/l2o.hpp"
#include "ntacert/linalg.hpp"
#include "ntacert/search.hpp"
#include "ntacert/structure.hpp"

namespace ntacert::search {

const char* box_strategy_name(BoxStrategy s) {
  switch (s) {
    case BoxStrategy::Eps: return "eps";
    case BoxStrategy::Grid: return "grid";
    case BoxStrategy::EpsThenGrid: return "eps+grid";
  }
  return "?";
}

namespace {

// Minimum-norm Gauss-Newton step -J^+ r.
std::optional<std::vector<double>> newton_step(const linalg::JacobianAt& j, const std::vector<double>& r) {
  if (!j.all_finite()) return std::nullopt;
  const linalg::Matrix& a = j.matrix;
  linalg::Svd s;
  try {
    s = linalg::svd(a);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  const double tol = linalg::rank_threshold(a, s);
  std::vector<double> step(a.cols, 0.0);
  for (std::size_t k = 0; k < a.cols; ++k) {
    const double sk = s.singular_values[k];
    if (!(sk > tol)) continue;
    double ur = 0.0;  // (J v_k) . r
    for (std::size_t i = 0; i < a.rows; ++i) {
      double jv = 0.0;
      for (std::size_t c = 0; c < a.cols; ++c) jv += a(i, c) * s.v(c, k);
      ur += jv * r[i];
    }
    for (std::size_t c = 0; c < a.cols; ++c) step[c] -= s.v(c, k) * ur / (sk * sk);
  }
  return step;
}

}  // namespace

void polish_point(const Formula& formula, const l2o::Objective& h, localopt::MinimumPoint& m) {
  for (int iter = 0; iter < 30 && m.value > 0.0; ++iter) {
    std::vector<Term> eqs;
    for (std::size_t c = 0; c < formula.clauses.size(); ++c) {
      std::size_t best = 0;
      double best_value = h.literal_value(c, 0, m.point);
      for (std::size_t l = 1; l < formula.clauses[c].literals.size(); ++l) {
        const double v = h.literal_value(c, l, m.point);
        if (v < best_value) {
          best = l;
          best_value = v;
        }
      }
      const Literal& lit = formula.clauses[c].literals[best];
      if (lit.is_equation()) eqs.push_back(lit.term());
    }
    if (eqs.empty()) return;
    const linalg::JacobianAt j = linalg::jacobian_at(eqs, formula.vars, m.point);
    std::vector<double> r;
    for (const auto& e : eqs) r.push_back(ia::Tape(e, formula.vars).eval(std::span<const double>(m.point)));
    const auto step = newton_step(j, r);
    if (!step) return;
    bool improved = false;
    for (double t = 1.0; t > 1e-3; t /= 2) {
      std::vector<double> q = m.point;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += t * (*step)[i];
      const double v = h.eval(q);
      if (v < m.value) {
        m.point = std::move(q);
        m.value = v;
        improved = true;
        break;
      }
    }
    if (!improved) return;
  }
}

std::vector<localopt::MinimumPoint> children_points(const Formula& formula, const SearchConfig& config) {
  const l2o::Objective h(formula);
  localopt::BasinHoppingOptions o;
  o.k = config.k;
  o.seed = config.seed;
  o.budget = config.optimizer_budget;
  o.start_box = localopt::start_box_from_formula(formula, formula.vars);
  std::vector<localopt::MinimumPoint> points = localopt::basin_hopping(h, o).points;
  if (!config.polish_points) return points;
  for (auto& m : points) polish_point(formula, h, m);
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  std::vector<localopt::MinimumPoint> out;
  for (auto& m : points) {
    bool dup = false;
    for (const auto& q : out) {
      double d = 0.0;
      for (std::size_t i = 0; i < m.point.size(); ++i) d = std::max(d, std::abs(m.point[i] - q.point[i]));
      dup = dup || d <= o.dedup_distance;
    }
    if (!dup) out.push_back(std::move(m));
  }
  return out;
}

LiteralChildren literal_children(const Formula& formula, std::span<const double> point, const SearchConfig& config) {
  LiteralChildren out;
  const l2o::Objective h(formula);
  const std::size_t nc = formula.clauses.size();
  std::vector<std::vector<std::size_t>> sets(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t l = 0; l < formula.clauses[c].literals.size(); ++l) {
      const double v = h.literal_value(c, l, point);
      if (v <= config.eps_lit) scored.emplace_back(v, l);
    }
    if (scored.empty()) return out;
    if (config.sort_literals)
      std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& s : scored) sets[c].push_back(s.second);
  }
  out.all_nonempty = true;

  if (config.check_forced_literals) {
    std::vector<Literal> forced;
    for (std::size_t c = 0; c < nc; ++c)
      if (sets[c].size() == 1) forced.push_back(formula.clauses[c].literals[sets[c][0]]);
    if (forced_literal_consistency(forced) == Consistency::Inconsistent) {
      out.forced_inconsistent = true;
      return out;
    }
  }

  // Cartesian product, first clause slowest.
  std::vector<std::size_t> odo(nc, 0);
  std::size_t examined = 0;
  const std::size_t max_examined = std::max<std::size_t>(config.max_selectors * 64, 4096);
  while (out.selectors.size() < config.max_selectors && examined++ < max_examined) {
    LiteralSelector sel(nc);
    for (std::size_t c = 0; c < nc; ++c) sel[c] = sets[c][odo[c]];
    bool keep = true;
    if (config.filter_overconstr) {
      std::vector<Term> eqs;
      std::set<std::string> used;
      for (std::size_t c = 0; c < nc; ++c) {
        const Literal& l = formula.clauses[c].literals[sel[c]];
        if (l.is_equation()) {
          eqs.push_back(l.term());
          l.term().collect_vars(used);
        }
      }
      keep = structure::is_overconstrained_free(eqs, ordered_subset(formula.vars, used));
    }
    if (keep) out.selectors.push_back(std::move(sel));
    std::size_t i = nc;
    while (i > 0) {
      --i;
      if (++odo[i] < sets[i].size()) break;
      odo[i] = 0;
      if (i == 0) return out;
    }
    if (nc == 0) break;
  }
  return out;
}

std::vector<LiteralSelector> children_literals(const Formula& formula, std::span<const double> point,
                                               const SearchConfig& config) {
  return literal_children(formula, point, config).selectors;
}

std::vector<PartialAssignment> children_instantiations(const Formula& formula, std::span<const double> point,
                                                       const LiteralSelector& selector, const SearchConfig& config) {
  const std::set<std::string> used = selected_vars(formula, selector);
  const std::vector<std::string> rest = ordered_subset(formula.vars, used);
  PartialAssignment outside;
  std::vector<double> p_rest;
  for (std::size_t i = 0; i < formula.vars.size(); ++i) {
    if (used.count(formula.vars[i])) p_rest.push_back(point[i]);
    else outside[formula.vars[i]] = point[i];
  }
  std::vector<Term> eqs;
  for (std::size_t c = 0; c < selector.size(); ++c) {
    const Literal& l = formula.clauses[c].literals[selector[c]];
    if (l.is_equation()) eqs.push_back(l.term());
  }
  const linalg::JacobianAt j = linalg::jacobian_at(eqs, rest, p_rest);
  linalg::CandidateOptions o;
  o.kearfott_ordering = config.kearfott_ordering;
  o.filter_overconstr_v = config.filter_overconstr_v;
  o.filter_rank_deficient = config.filter_rank_deficient;
  o.cap = config.max_instantiations;
  std::vector<PartialAssignment> out;
  for (const auto& cand : linalg::instantiation_candidates(eqs, rest, j, o)) {
    PartialAssignment nu = outside;
    for (const auto& v : cand.vars) nu[v] = point[formula.var_index(v)];
    out.push_back(std::move(nu));
  }
  return out;
}

}  // namespace ntacert::search
