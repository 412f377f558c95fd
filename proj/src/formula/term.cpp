#include "ntacert/formula.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace ntacert {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (value == 0.0) return Rational(0);
  int exponent = 0;
  double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent, |mantissa| in [0.5,1)
  // 53 bits of mantissa as an integer.
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  boost::multiprecision::cpp_int numerator(scaled);
  if (exponent >= 0) return Rational(numerator << exponent);
  boost::multiprecision::cpp_int denominator(1);
  denominator <<= -exponent;
  return Rational(numerator, denominator);
}

namespace {

const std::shared_ptr<const Term::Node>& zero_node() {
  static const auto node = std::make_shared<const Term::Node>(
      Term::Node{Op::Const, {}, Rational(0), 0, nullptr, nullptr});
  return node;
}

}  // namespace

Term::Term() : node_(zero_node()) {}

Term Term::make(Op op, Term a, Term b) {
  return Term(std::make_shared<const Node>(Node{op, {}, Rational(0), 0, a.node_, b.node_}));
}

Term Term::variable(std::string name) {
  return Term(std::make_shared<const Node>(Node{Op::Var, std::move(name), Rational(0), 0, nullptr, nullptr}));
}

Term Term::constant(Rational value) {
  return Term(std::make_shared<const Node>(Node{Op::Const, {}, std::move(value), 0, nullptr, nullptr}));
}

Term Term::add(Term lhs, Term rhs) { return make(Op::Add, std::move(lhs), std::move(rhs)); }
Term Term::mul(Term lhs, Term rhs) { return make(Op::Mul, std::move(lhs), std::move(rhs)); }

Term Term::neg(Term arg) {
  if (arg.op() == Op::Const) return constant(-arg.value());
  if (arg.op() == Op::Neg) return arg.first();
  return make(Op::Neg, std::move(arg));
}

Term Term::sub(Term lhs, Term rhs) {
  if (rhs.is_zero()) return lhs;
  if (lhs.is_zero()) return neg(std::move(rhs));
  return add(std::move(lhs), neg(std::move(rhs)));
}

Term Term::pow(Term base, unsigned exponent) {
  auto node = std::make_shared<const Node>(Node{Op::Pow, {}, Rational(0), exponent, base.node_, nullptr});
  return Term(std::move(node));
}

Term Term::sin(Term arg) { return make(Op::Sin, std::move(arg)); }
Term Term::cos(Term arg) { return make(Op::Cos, std::move(arg)); }
Term Term::tan(Term arg) { return make(Op::Tan, std::move(arg)); }
Term Term::exp(Term arg) { return make(Op::Exp, std::move(arg)); }

bool Term::is_ground() const {
  switch (op()) {
    case Op::Var: return false;
    case Op::Const: return true;
    case Op::Add:
    case Op::Mul: return first().is_ground() && second().is_ground();
    default: return first().is_ground();
  }
}

void Term::collect_vars(std::set<std::string>& out) const {
  switch (op()) {
    case Op::Var: out.insert(name()); return;
    case Op::Const: return;
    case Op::Add:
    case Op::Mul:
      first().collect_vars(out);
      second().collect_vars(out);
      return;
    default: first().collect_vars(out);
  }
}

std::set<std::string> Term::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

namespace {

template <class Leaf>
Term rebuild(const Term& t, const Leaf& leaf, std::unordered_map<const Term::Node*, Term>& memo) {
  if (auto it = memo.find(t.node()); it != memo.end()) return it->second;
  Term out;
  switch (t.op()) {
    case Op::Var: out = leaf(t); break;
    case Op::Const: out = t; break;
    case Op::Add: out = Term::add(rebuild(t.first(), leaf, memo), rebuild(t.second(), leaf, memo)); break;
    case Op::Mul: out = Term::mul(rebuild(t.first(), leaf, memo), rebuild(t.second(), leaf, memo)); break;
    case Op::Neg: out = Term::neg(rebuild(t.first(), leaf, memo)); break;
    case Op::Pow: out = Term::pow(rebuild(t.first(), leaf, memo), t.exponent()); break;
    case Op::Sin: out = Term::sin(rebuild(t.first(), leaf, memo)); break;
    case Op::Cos: out = Term::cos(rebuild(t.first(), leaf, memo)); break;
    case Op::Tan: out = Term::tan(rebuild(t.first(), leaf, memo)); break;
    case Op::Exp: out = Term::exp(rebuild(t.first(), leaf, memo)); break;
  }
  memo.emplace(t.node(), out);
  return out;
}

}  // namespace

Term Term::substitute(const std::map<std::string, Rational>& values) const {
  std::unordered_map<const Node*, Term> memo;
  return rebuild(*this, [&](const Term& v) {
    auto it = values.find(v.name());
    return it == values.end() ? v : Term::constant(it->second);
  }, memo);
}

Term Term::substitute(const std::map<std::string, Term>& values) const {
  std::unordered_map<const Node*, Term> memo;
  return rebuild(*this, [&](const Term& v) {
    auto it = values.find(v.name());
    return it == values.end() ? v : it->second;
  }, memo);
}

bool operator==(const Term& lhs, const Term& rhs) {
  const Term::Node* a = lhs.node();
  const Term::Node* b = rhs.node();
  if (a == b) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::Var: return a->name == b->name;
    case Op::Const: return a->value == b->value;
    case Op::Add:
    case Op::Mul: return lhs.first() == rhs.first() && lhs.second() == rhs.second();
    case Op::Pow: return a->exponent == b->exponent && lhs.first() == rhs.first();
    default: return lhs.first() == rhs.first();
  }
}

const char* relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
  }
  return "?";
}

std::set<std::string> Literal::vars() const {
  std::set<std::string> out;
  lhs.collect_vars(out);
  rhs.collect_vars(out);
  return out;
}

std::size_t Formula::var_index(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw std::out_of_range("unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - vars.begin());
}

bool Formula::has_var(const std::string& name) const {
  return std::find(vars.begin(), vars.end(), name) != vars.end();
}

std::vector<std::string> ordered_subset(const std::vector<std::string>& order,
                                        const std::set<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& v : order)
    if (names.count(v)) out.push_back(v);
  return out;
}

}  // namespace ntacert
