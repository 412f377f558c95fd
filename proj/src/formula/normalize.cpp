#include <algorithm>

#include "ntacert/formula.hpp"

namespace ntacert {

namespace {

void push_normalized(const Literal& l, std::vector<Literal>& out) {
  if (l.is_normalized()) {
    out.push_back(l);
    return;
  }
  const Term f = Term::sub(l.lhs, l.rhs);
  if (!l.negated) {
    out.push_back({f, l.rel, Term(), false});
    return;
  }
  switch (l.rel) {
    case Relation::Eq:  // not (f = 0)  ->  f < 0 or 0 < f
      out.push_back({f, Relation::Lt, Term(), false});
      out.push_back({Term::neg(f), Relation::Lt, Term(), false});
      return;
    case Relation::Le:  // not (f <= 0)  ->  0 < f
      out.push_back({Term::neg(f), Relation::Lt, Term(), false});
      return;
    case Relation::Lt:  // not (f < 0)  ->  0 <= f
      out.push_back({Term::neg(f), Relation::Le, Term(), false});
      return;
  }
}

}  // namespace

Formula normalize(const Formula& formula) {
  Formula out;
  out.clauses.reserve(formula.clauses.size());
  std::set<std::string> used;
  for (const auto& c : formula.clauses) {
    Clause nc;
    for (const auto& l : c.literals) push_normalized(l, nc.literals);
    for (const auto& l : nc.literals) l.lhs.collect_vars(used);
    out.clauses.push_back(std::move(nc));
  }
  out.vars = ordered_subset(formula.vars, used);
  return out;
}

std::set<std::string> selected_vars(const Formula& formula, const LiteralSelector& selector) {
  if (selector.size() != formula.clauses.size())
    throw std::invalid_argument("selector covers " + std::to_string(selector.size()) + " of " +
                                std::to_string(formula.clauses.size()) + " clauses");
  std::set<std::string> vars;
  for (std::size_t i = 0; i < selector.size(); ++i) {
    const auto& c = formula.clauses[i];
    if (selector[i] >= c.literals.size())
      throw std::invalid_argument("selector picks literal " + std::to_string(selector[i]) + " of clause " +
                                  std::to_string(i) + " which has " + std::to_string(c.literals.size()));
    c.literals[selector[i]].lhs.collect_vars(vars);
    c.literals[selector[i]].rhs.collect_vars(vars);
  }
  return vars;
}

SystemPair partition_selected(const Formula& formula, const LiteralSelector& selector,
                              const PartialAssignment& assignment) {
  const std::set<std::string> sel_vars = selected_vars(formula, selector);
  SystemPair out;
  std::map<std::string, Rational> exact;
  for (const auto& [name, value] : assignment) {
    if (!formula.has_var(name))
      throw std::invalid_argument("assignment to unknown variable '" + name + "'");
    if (!sel_vars.count(name)) out.warnings.push_back("variable '" + name + "' does not occur in the selected literals");
    exact.emplace(name, rational_from_double(value));
  }
  for (std::size_t i = 0; i < selector.size(); ++i) {
    const Literal& l = formula.clauses[i].literals[selector[i]];
    if (!l.is_normalized()) throw std::invalid_argument("partition_selected expects a normalized formula");
    Term t = l.lhs.substitute(exact);
    if (l.rel == Relation::Eq) out.equations.push_back(std::move(t));
    else out.inequalities.push_back({std::move(t), l.rel == Relation::Lt});
  }
  for (const auto& v : formula.vars)
    if (!assignment.count(v)) out.domain.push_back(v);
  return out;
}

DnfEnumerator::DnfEnumerator(const Formula& formula, std::size_t cap)
    : formula_(&formula), cap_(cap), odometer_(formula.clauses.size(), 0) {
  for (const auto& c : formula.clauses)
    if (c.literals.empty()) done_ = true;
}

std::optional<DnfTerm> DnfEnumerator::next() {
  if (done_) return std::nullopt;
  if (produced_ >= cap_) {
    truncated_ = true;
    done_ = true;
    return std::nullopt;
  }
  DnfTerm term;
  term.selection = odometer_;
  std::set<std::string> used;
  for (std::size_t i = 0; i < odometer_.size(); ++i) {
    const Literal& l = formula_->clauses[i].literals[odometer_[i]];
    l.lhs.collect_vars(used);
    l.rhs.collect_vars(used);
    term.conjunction.clauses.push_back(Clause{{l}});
  }
  term.conjunction.vars = ordered_subset(formula_->vars, used);
  ++produced_;
  // advance: last clause varies fastest
  std::size_t i = odometer_.size();
  while (i > 0) {
    --i;
    if (++odometer_[i] < formula_->clauses[i].literals.size()) break;
    odometer_[i] = 0;
    if (i == 0) done_ = true;
  }
  if (odometer_.empty()) done_ = true;
  return term;
}

DnfExpansion dnf_expand(const Formula& formula, std::size_t cap) {
  DnfEnumerator e(formula, cap);
  DnfExpansion out;
  while (auto t = e.next()) out.terms.push_back(std::move(*t));
  out.truncated = e.truncated();
  return out;
}

}  // namespace ntacert
