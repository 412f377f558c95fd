#include <cmath>
#include <limits>
#include <stdexcept>

#include "ntacert/l2o.hpp"

namespace ntacert::l2o {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Objective::Objective(const Formula& formula) : Objective(formula, formula.vars) {}

Objective::Objective(const Formula& formula, std::vector<std::string> vars) : vars_(std::move(vars)) {
  for (const auto& clause : formula.clauses) {
    std::vector<Piece> pieces;
    for (const auto& lit : clause.literals) {
      if (!lit.is_normalized()) throw std::invalid_argument("objective requires normalized literals");
      pieces.push_back({ia::Tape(lit.term(), vars_), lit.rel});
    }
    clauses_.push_back(std::move(pieces));
  }
}

Objective::Objective(const Literal& literal, std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (!literal.is_normalized()) throw std::invalid_argument("objective requires normalized literals");
  clauses_.push_back({Piece{ia::Tape(literal.term(), vars_), literal.rel}});
}

double Objective::penalty(Relation rel, double f) {
  if (std::isnan(f)) return kInf;
  return rel == Relation::Eq ? std::fabs(f) : std::max(f, 0.0);
}

double Objective::literal_value(std::size_t c, std::size_t l, std::span<const double> point) const {
  const Piece& p = clauses_.at(c).at(l);
  return penalty(p.rel, p.tape.eval(point));
}

double Objective::eval(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& clause : clauses_) {
    double best = kInf;
    for (const auto& p : clause) best = std::min(best, penalty(p.rel, p.tape.eval(point)));
    total += best;
  }
  return std::isnan(total) ? kInf : total;
}

double Objective::eval_gradient(std::span<const double> point, std::span<double> gradient) const {
  const std::size_t n = vars_.size();
  if (gradient.size() < n) throw std::invalid_argument("gradient buffer too small");
  std::fill(gradient.begin(), gradient.begin() + n, 0.0);
  std::vector<double> g(n);
  double total = 0.0;
  for (const auto& clause : clauses_) {
    double best = kInf;
    const Piece* active = nullptr;
    double active_f = 0.0;
    for (const auto& p : clause) {
      const double f = p.tape.eval(point);
      const double h = penalty(p.rel, f);
      if (h < best) {
        best = h;
        active = &p;
        active_f = f;
      }
    }
    total += best;
    if (!active || std::isinf(best)) continue;
    double slope;
    if (active->rel == Relation::Eq) slope = active_f < 0 ? -1.0 : 1.0;
    else slope = active_f > 0 ? 1.0 : 0.0;
    if (slope == 0.0) continue;
    active->tape.eval_gradient(point, g);
    for (std::size_t k = 0; k < n; ++k) gradient[k] += slope * g[k];
  }
  if (std::isnan(total) || std::isinf(total)) {
    std::fill(gradient.begin(), gradient.begin() + n, 0.0);
    return kInf;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!std::isfinite(gradient[k])) gradient[k] = 0.0;
  return total;
}

std::vector<double> Objective::gradient(std::span<const double> point) const {
  std::vector<double> g(vars_.size());
  eval_gradient(point, g);
  return g;
}

Objective build_objective(const Formula& formula) { return Objective(formula); }

Objective build_objective(const Literal& literal, const std::vector<std::string>& vars) {
  return Objective(literal, vars);
}

}  // namespace ntacert::l2o
