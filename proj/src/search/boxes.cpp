#include <algorithm>
#include <cmath>
#include <deque>

#include "ntacert/search.hpp"
#include "ntacert/topdeg.hpp"

namespace ntacert::search {

namespace {

using Clock = std::chrono::steady_clock;

bool expired(const std::optional<Clock::time_point>& deadline) { return deadline && Clock::now() >= *deadline; }

enum class IneqState { Verified, Unknown, Refuted };

// Strict inequalities are checked as g <= -eps_strict.
IneqState inequalities_on(const std::vector<Inequality>& g, const ia::NamedBox& box, double eps_strict) {
  IneqState state = IneqState::Verified;
  for (const auto& q : g) {
    const ia::Interval v = ia::eval_interval(q.term, box);
    if (q.strict ? v.lo >= 0 : v.lo > 0) return IneqState::Refuted;
    if (v.hi > (q.strict ? -eps_strict : 0.0)) state = IneqState::Unknown;
  }
  return state;
}

bool equation_refuted(const std::vector<Term>& f, const ia::NamedBox& box) {
  for (const auto& t : f)
    if (!ia::eval_interval(t, box).contains_zero()) return true;
  return false;
}

std::pair<ia::NamedBox, ia::NamedBox> bisect_longest(const ia::NamedBox& b) {
  std::size_t axis = 0;
  for (std::size_t i = 1; i < b.dim(); ++i)
    if (b[i].width() > b[axis].width()) axis = i;
  ia::NamedBox l = b, r = b;
  const double mid = b[axis].mid();
  l[axis].hi = mid;
  r[axis].lo = mid;
  return {l, r};
}

// Splits `box` until the inequalities hold on every piece.
std::optional<std::vector<ia::NamedBox>> split_for_inequalities(const std::vector<Inequality>& g,
                                                               const ia::NamedBox& box, const SearchConfig& cfg) {
  std::vector<ia::NamedBox> done;
  std::deque<ia::NamedBox> todo{box};
  while (!todo.empty()) {
    ia::NamedBox b = std::move(todo.front());
    todo.pop_front();
    switch (inequalities_on(g, b, cfg.eps_strict)) {
      case IneqState::Verified: done.push_back(std::move(b)); break;
      case IneqState::Refuted: return std::nullopt;
      case IneqState::Unknown: {
        if (done.size() + todo.size() + 2 > cfg.split_limit || b.dim() == 0) return std::nullopt;
        auto [l, r] = bisect_longest(b);
        if (l == b || r == b) return std::nullopt;
        todo.push_back(std::move(l));
        todo.push_back(std::move(r));
      }
    }
  }
  return done;
}

std::vector<ia::NamedBox> refine(const ia::NamedBox& b) {
  if (b.dim() > 3) {
    auto [l, r] = bisect_longest(b);
    return {l, r};
  }
  std::vector<ia::NamedBox> out{b};
  for (std::size_t axis = 0; axis < b.dim(); ++axis) {
    std::vector<ia::NamedBox> next;
    for (const auto& c : out) {
      const double mid = c[axis].mid();
      if (!(c[axis].lo < mid && mid < c[axis].hi)) {
        next.push_back(c);
        continue;
      }
      ia::NamedBox l = c, r = c;
      l[axis].hi = mid;
      r[axis].lo = mid;
      next.push_back(std::move(l));
      next.push_back(std::move(r));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::optional<BoxEvidence> box_search_eps_inflation(const std::vector<Term>& f, const std::vector<Inequality>& g,
                                                    const std::vector<std::string>& domain,
                                                    std::span<const double> center, const SearchConfig& cfg,
                                                    std::size_t* iterations,
                                                    std::optional<Clock::time_point> deadline) {
  BoxEvidence ev;
  std::size_t iter = 0;
  std::optional<ia::NamedBox> previous;
  for (std::size_t i = 0; i < cfg.eps_iterations && !expired(deadline); ++i) {
    const double side = std::ldexp(cfg.eps_box, static_cast<int>(i));
    if (side > 1.0) break;
    ++iter;
    std::vector<ia::Interval> ivs;
    for (std::size_t k = 0; k < domain.size(); ++k) {
      const double c = center[k];
      ivs.push_back({std::min(c - side / 2, ia::next_down(c)), std::max(c + side / 2, ia::next_up(c))});
    }
    ia::NamedBox box(domain, std::move(ivs));
    if (previous && *previous == box) continue;
    previous = box;
    if (inequalities_on(g, box, cfg.eps_strict) != IneqState::Verified) continue;
    ++ev.degree_queries;
    const topdeg::DegreeResult d = topdeg::degree(f, box, cfg.degree_budget);
    if (d.nonzero()) {
      ev.beta = {box};
      ev.degree = d.degree;
      ev.iterations = iter;
      if (iterations) *iterations = iter;
      return ev;
    }
    if (domain.empty()) break;
  }
  if (iterations) *iterations = iter;
  return std::nullopt;
}

std::optional<BoxEvidence> box_search_gridding(const std::vector<Term>& f, const std::vector<Inequality>& g,
                                               const ia::NamedBox& start, const SearchConfig& cfg,
                                               std::optional<Clock::time_point> deadline) {
  BoxEvidence ev;
  std::vector<ia::NamedBox> grid{start};
  while (!grid.empty() && !expired(deadline)) {
    ++ev.iterations;
    std::vector<ia::NamedBox> next;
    for (const auto& b : grid) {
      if (expired(deadline)) return std::nullopt;
      if (equation_refuted(f, b)) continue;
      if (inequalities_on(g, b, cfg.eps_strict) == IneqState::Refuted) continue;
      ++ev.degree_queries;
      const topdeg::DegreeResult d = topdeg::degree(f, b, cfg.degree_budget);
      if (d.nonzero()) {
        if (auto beta = split_for_inequalities(g, b, cfg)) {
          ev.beta = std::move(*beta);
          ev.degree = d.degree;
          return ev;
        }
      }
      if (b.dim() == 0) continue;
      for (auto& c : refine(b)) {
        if (c == b) continue;
        next.push_back(std::move(c));
      }
      if (next.size() > cfg.grid_limit) return std::nullopt;
    }
    grid = std::move(next);
  }
  return std::nullopt;
}

}  // namespace ntacert::search
