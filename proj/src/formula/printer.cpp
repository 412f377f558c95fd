#include <sstream>

#include "ntacert/formula.hpp"

namespace ntacert {

namespace {

void print_rational(std::ostream& out, const Rational& v) {
  const bool negative = v < 0;
  const Rational a = negative ? Rational(-v) : v;
  if (negative) out << "(- ";
  const auto num = boost::multiprecision::numerator(a);
  const auto den = boost::multiprecision::denominator(a);
  if (den == 1) out << num;
  else out << "(/ " << num << ' ' << den << ')';
  if (negative) out << ')';
}

void print(std::ostream& out, const Term& t) {
  switch (t.op()) {
    case Op::Var: out << t.name(); return;
    case Op::Const: print_rational(out, t.value()); return;
    case Op::Add:
      if (t.second().op() == Op::Neg) {
        out << "(- ";
        print(out, t.first());
        out << ' ';
        print(out, t.second().first());
        out << ')';
        return;
      }
      out << "(+ ";
      print(out, t.first());
      out << ' ';
      print(out, t.second());
      out << ')';
      return;
    case Op::Mul:
      out << "(* ";
      print(out, t.first());
      out << ' ';
      print(out, t.second());
      out << ')';
      return;
    case Op::Neg:
      out << "(- ";
      print(out, t.first());
      out << ')';
      return;
    case Op::Pow:
      out << "(^ ";
      print(out, t.first());
      out << ' ' << t.exponent() << ')';
      return;
    case Op::Sin: out << "(sin "; break;
    case Op::Cos: out << "(cos "; break;
    case Op::Tan: out << "(tan "; break;
    case Op::Exp: out << "(exp "; break;
  }
  print(out, t.first());
  out << ')';
}

}  // namespace

std::string print_term(const Term& term) {
  std::ostringstream out;
  print(out, term);
  return out.str();
}

std::string print_literal(const Literal& literal) {
  std::ostringstream out;
  if (literal.negated) out << "(not ";
  out << '(' << relation_symbol(literal.rel) << ' ';
  print(out, literal.lhs);
  out << ' ';
  print(out, literal.rhs);
  out << ')';
  if (literal.negated) out << ')';
  return out.str();
}

std::string print_formula(const Formula& formula) {
  std::ostringstream out;
  out << "(set-logic QF_NRA)\n";
  for (const auto& v : formula.vars) out << "(declare-fun " << v << " () Real)\n";
  for (const auto& c : formula.clauses) {
    out << "(assert ";
    if (c.literals.size() == 1) {
      out << print_literal(c.literals[0]);
    } else {
      out << "(or";
      for (const auto& l : c.literals) out << ' ' << print_literal(l);
      out << ')';
    }
    out << ")\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace ntacert
