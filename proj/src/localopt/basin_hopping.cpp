#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ntacert/localopt.hpp"

namespace ntacert::localopt {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

std::mt19937_64 round_rng(std::uint64_t seed, std::size_t round) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(round), static_cast<std::uint32_t>(round >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

DescentResult local_descent(const l2o::Objective& h, std::vector<double> x, const DescentOptions& o) {
  const std::size_t n = x.size();
  std::vector<double> g(n), trial(n);
  DescentResult r;
  double fx = h.eval_gradient(x, g);
  if (!std::isfinite(fx)) {
    r.point = std::move(x);
    r.value = fx;
    return r;
  }
  for (; r.steps < o.max_steps; ++r.steps) {
    const double gnorm = inf_norm(g);
    if (gnorm < o.gradient_tol) break;
    double g2 = 0.0;
    for (double gi : g) g2 += gi * gi;
    double t = 1.0;
    bool accepted = false;
    while (t * gnorm >= o.min_step) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - t * g[i];
      const double ft = h.eval(trial);
      if (ft <= fx - o.armijo * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    x.swap(trial);
    fx = h.eval_gradient(x, g);
  }
  r.point = std::move(x);
  r.value = fx;
  return r;
}

MinimizerResult basin_hopping(const l2o::Objective& h, const BasinHoppingOptions& o) {
  const std::size_t n = h.arity();
  MinimizerResult result;
  result.seed = o.seed;
  std::vector<MinimumPoint> found;
  auto record = [&](MinimumPoint m) {
    if (!std::isfinite(m.value)) return;
    for (auto& f : found) {
      if (distance(f.point, m.point) <= o.dedup_distance) {
        if (m.value < f.value) f = std::move(m);
        return;
      }
    }
    found.push_back(std::move(m));
  };

  const std::size_t rounds = std::max<std::size_t>(o.k, 1);
  for (std::size_t round = 0; round < rounds && result.iterations < o.budget; ++round) {
    auto rng = round_rng(o.seed, round);
    std::vector<double> start(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Bound b = i < o.start_box.size() ? o.start_box[i] : Bound{};
      start[i] = std::uniform_real_distribution<double>(b.lo, b.hi)(rng);
    }
    const double start_value = h.eval(start);
    DescentResult cur = local_descent(h, start, o.descent);
    result.iterations += cur.steps;
    record({cur.point, cur.value, start_value, round});

    double step = o.initial_step;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t hop = 0; hop < o.hops_per_round && result.iterations < o.budget; ++hop) {
      std::vector<double> proposal = cur.point;
      for (double& xi : proposal) xi += step * gauss(rng);
      const double proposal_value = h.eval(proposal);
      DescentResult next = local_descent(h, proposal, o.descent);
      result.iterations += next.steps;
      record({next.point, next.value, proposal_value, round});
      const bool accept = std::isfinite(next.value) &&
                          (next.value <= cur.value || unit(rng) < std::exp(-(next.value - cur.value) / o.temperature));
      if (accept) {
        cur = std::move(next);
        step *= 0.9;
      } else {
        step *= 1.1;
      }
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const MinimumPoint& a, const MinimumPoint& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.round < b.round;
  });
  if (found.size() > o.k) found.resize(o.k);
  result.points = std::move(found);
  return result;
}

namespace {

// Matches x - c, c - x, x + c, -x + c style linear unit terms: returns the
// variable, its coefficient sign and the constant offset.
bool unit_bound(const Term& t, std::string& var, int& sign, Rational& offset) {
  auto as_var = [&](const Term& u, int s) {
    if (u.op() == Op::Var) {
      var = u.name();
      sign = s;
      return true;
    }
    if (u.op() == Op::Neg && u.first().op() == Op::Var) {
      var = u.first().name();
      sign = -s;
      return true;
    }
    return false;
  };
  offset = 0;
  if (as_var(t, 1)) return true;
  if (t.op() != Op::Add) return false;
  if (t.second().is_constant() && as_var(t.first(), 1)) {
    offset = t.second().value();
    return true;
  }
  if (t.first().is_constant() && as_var(t.second(), 1)) {
    offset = t.first().value();
    return true;
  }
  if (t.first().is_constant() && t.second().op() == Op::Neg && t.second().first().op() == Op::Var) {
    var = t.second().first().name();
    sign = -1;
    offset = t.first().value();
    return true;
  }
  return false;
}

}  // namespace

std::vector<Bound> start_box_from_formula(const Formula& formula, const std::vector<std::string>& vars) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Bound> lo_hi(vars.size(), Bound{-kInf, kInf});
  for (const auto& clause : formula.clauses) {
    if (clause.literals.size() != 1) continue;
    const Literal& lit = clause.literals[0];
    if (lit.rel == Relation::Eq) continue;
    std::string var;
    int sign = 0;
    Rational offset;
    if (!unit_bound(lit.term(), var, sign, offset)) continue;
    auto it = std::find(vars.begin(), vars.end(), var);
    if (it == vars.end()) continue;
    Bound& b = lo_hi[static_cast<std::size_t>(it - vars.begin())];
    // sign*x + offset <= 0
    const double c = static_cast<double>(Rational(-offset));
    if (sign > 0) b.hi = std::min(b.hi, c);
    else b.lo = std::max(b.lo, -c);
  }
  for (auto& b : lo_hi) {
    if (std::isinf(b.lo) && std::isinf(b.hi)) b = Bound{};
    else if (std::isinf(b.lo)) b.lo = b.hi - 20.0;
    else if (std::isinf(b.hi)) b.hi = b.lo + 20.0;
    if (b.lo > b.hi) b = Bound{};
  }
  return lo_hi;
}

}  // namespace ntacert::localopt
