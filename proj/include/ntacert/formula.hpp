#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ntacert {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational value of a finite binary64 number.
Rational rational_from_double(double value);

enum class Op { Var, Const, Add, Mul, Neg, Pow, Sin, Cos, Tan, Exp };

/// Immutable expression tree over real variables.
///
/// Nodes are shared, so copying a Term is cheap.  The smart constructors keep
/// a small canonical form: negation of a constant folds into the constant and
/// double negation cancels.  Parser and printer rely on this to round-trip.
class Term {
 public:
  struct Node {
    Op op;
    std::string name;   // Var
    Rational value;     // Const
    unsigned exponent;  // Pow
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  Term();  // the constant 0

  static Term variable(std::string name);
  static Term constant(Rational value);
  static Term constant(long value) { return constant(Rational(value)); }
  static Term add(Term lhs, Term rhs);
  static Term mul(Term lhs, Term rhs);
  static Term neg(Term arg);
  static Term sub(Term lhs, Term rhs);
  static Term pow(Term base, unsigned exponent);
  static Term sin(Term arg);
  static Term cos(Term arg);
  static Term tan(Term arg);
  static Term exp(Term arg);

  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Rational& value() const { return node_->value; }
  unsigned exponent() const { return node_->exponent; }
  Term first() const { return Term(node_->a); }
  Term second() const { return Term(node_->b); }
  const Node* node() const { return node_.get(); }

  bool is_constant() const { return node_->op == Op::Const; }
  bool is_zero() const { return is_constant() && node_->value == 0; }
  bool is_ground() const;

  std::set<std::string> vars() const;
  void collect_vars(std::set<std::string>& out) const;

  /// Replaces variables by exact constants.
  Term substitute(const std::map<std::string, Rational>& values) const;
  /// Replaces variables by terms.
  Term substitute(const std::map<std::string, Term>& values) const;

  friend bool operator==(const Term& lhs, const Term& rhs);
  friend bool operator!=(const Term& lhs, const Term& rhs) { return !(lhs == rhs); }

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Op op, Term a, Term b = Term());

  std::shared_ptr<const Node> node_;
};

enum class Relation { Eq, Le, Lt };

const char* relation_symbol(Relation rel);

/// `lhs rel rhs`, possibly negated.  Normalized literals have rhs == 0 and
/// negated == false, i.e. the shape `f rel 0`.
struct Literal {
  Term lhs;
  Relation rel = Relation::Eq;
  Term rhs;
  bool negated = false;

  bool is_normalized() const { return !negated && rhs.is_zero(); }
  bool is_equation() const { return rel == Relation::Eq; }
  /// The term f of a normalized literal.
  const Term& term() const { return lhs; }
  std::set<std::string> vars() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.rel == b.rel && a.negated == b.negated && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

struct Clause {
  std::vector<Literal> literals;
  friend bool operator==(const Clause& a, const Clause& b) { return a.literals == b.literals; }
};

/// Conjunction of clauses.  `vars` lists the variables that occur in the
/// clauses, in declaration order.
struct Formula {
  std::vector<Clause> clauses;
  std::vector<std::string> vars;

  std::size_t var_index(const std::string& name) const;  // throws if absent
  bool has_var(const std::string& name) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.clauses == b.clauses && a.vars == b.vars;
  }
};

/// Orders `names` by the position of each name in `order`.
std::vector<std::string> ordered_subset(const std::vector<std::string>& order,
                                        const std::set<std::string>& names);

// ---------------------------------------------------------------- parsing

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnsupportedError : public std::runtime_error {
 public:
  UnsupportedError(const std::string& construct, std::size_t line, std::size_t column);
  const std::string& construct() const { return construct_; }

 private:
  std::string construct_;
};

struct ParseOptions {
  std::size_t cnf_clause_cap = 1000;
};

/// Parses the SMT-LIB subset into CNF.  Literals keep their original
/// orientation and negation; see normalize().
Formula parse_formula(std::string_view text, const ParseOptions& options = {});

/// Negation-free CNF over atoms `f rel 0`.
Formula normalize(const Formula& formula);

Formula parse_normalized(std::string_view text, const ParseOptions& options = {});

std::string print_term(const Term& term);
std::string print_literal(const Literal& literal);
/// Deterministic script in the accepted input subset.
std::string print_formula(const Formula& formula);

// ------------------------------------------------------------ systems

using LiteralSelector = std::vector<std::size_t>;    // clause index -> literal index
using PartialAssignment = std::map<std::string, double>;

struct Inequality {
  Term term;  // term <= 0, or term < 0 when strict
  bool strict = false;
};

/// Equations F = 0 and inequalities G <= 0 of a selected conjunction after
/// substituting a partial assignment.
struct SystemPair {
  std::vector<Term> equations;
  std::vector<Inequality> inequalities;
  std::vector<std::string> domain;
  std::vector<std::string> warnings;
};

std::set<std::string> selected_vars(const Formula& formula, const LiteralSelector& selector);

SystemPair partition_selected(const Formula& formula, const LiteralSelector& selector,
                              const PartialAssignment& assignment);

// ---------------------------------------------------------------- DNF

struct DnfTerm {
  Formula conjunction;       // unit clauses
  LiteralSelector selection;  // literal picked from each clause of the source
};

/// Lazy enumeration of the DNF conjunctions of a CNF formula in lexicographic
/// clause-literal order, stopping after `cap` conjunctions.
class DnfEnumerator {
 public:
  explicit DnfEnumerator(const Formula& formula, std::size_t cap = 10000);

  std::optional<DnfTerm> next();
  /// Set once the enumeration stops at the cap with conjunctions left over.
  bool truncated() const { return truncated_; }
  std::size_t produced() const { return produced_; }

 private:
  const Formula* formula_;
  std::size_t cap_;
  std::vector<std::size_t> odometer_;
  bool done_ = false;
  bool truncated_ = false;
  std::size_t produced_ = 0;
};

struct DnfExpansion {
  std::vector<DnfTerm> terms;
  bool truncated = false;
};

DnfExpansion dnf_expand(const Formula& formula, std::size_t cap = 10000);

}  // namespace ntacert
