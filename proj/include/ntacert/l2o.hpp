#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntacert/formula.hpp"
#include "ntacert/interval.hpp"

namespace ntacert::l2o {

/// Non-negative objective H = sum over clauses of the minimum literal
/// penalty, with |f| for f = 0 and max(f, 0) for f <= 0 and f < 0.
class Objective {
 public:
  Objective() = default;
  /// Objective of a normalized formula over `vars` (default: formula.vars).
  explicit Objective(const Formula& formula);
  Objective(const Formula& formula, std::vector<std::string> vars);
  /// Objective of a single literal.
  Objective(const Literal& literal, std::vector<std::string> vars);

  std::size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }

  /// NaN penalties count as +inf.
  double eval(std::span<const double> point) const;
  /// Gradient of the branch active at `point`; zero when H is infinite.
  std::vector<double> gradient(std::span<const double> point) const;
  double eval_gradient(std::span<const double> point, std::span<double> gradient) const;

  /// Penalty h_l of literal `l` of clause `c`.
  double literal_value(std::size_t c, std::size_t l, std::span<const double> point) const;
  std::size_t num_clauses() const { return clauses_.size(); }
  std::size_t clause_size(std::size_t c) const { return clauses_[c].size(); }

 private:
  struct Piece {
    ia::Tape tape;
    Relation rel;
  };
  static double penalty(Relation rel, double f);

  std::vector<std::string> vars_;
  std::vector<std::vector<Piece>> clauses_;
};

Objective build_objective(const Formula& formula);
Objective build_objective(const Literal& literal, const std::vector<std::string>& vars);

}  // namespace ntacert::l2o
