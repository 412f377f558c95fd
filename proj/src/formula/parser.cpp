#include <algorithm>
#include <cctype>
#include <variant>

#include "ntacert/formula.hpp"

namespace ntacert {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

UnsupportedError::UnsupportedError(const std::string& construct, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": unsupported construct '" + construct + "'"),
      construct_(construct) {}

namespace {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  bool is_list = false;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == '(') {
      e.is_list = true;
      advance();
      skip_space();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        e.items.push_back(read());
        skip_space();
      }
      if (pos_ >= text_.size()) throw ParseError("unbalanced parenthesis", e.line, e.column);
      advance();
      return e;
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '|') {
      advance();
      std::string name;
      while (pos_ < text_.size() && text_[pos_] != '|') {
        name.push_back(text_[pos_]);
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted symbol", e.line, e.column);
      advance();
      e.atom = name;
      return e;
    }
    if (c == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') advance();
      if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
      advance();
      e.atom = "\"\"";
      return e;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

std::optional<Rational> parse_numeral(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i >= s.size() || !(std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) return std::nullopt;
  boost::multiprecision::cpp_int digits = 0;
  boost::multiprecision::cpp_int scale = 1;
  bool seen_digit = false;
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (after_point) scale *= 10;
      seen_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return std::nullopt;
  Rational value(digits, scale);
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return std::nullopt;
    ++i;
    bool exp_negative = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      exp_negative = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) return std::nullopt;
    long exponent = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 4000) return std::nullopt;
    }
    boost::multiprecision::cpp_int p = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                   static_cast<unsigned>(exponent));
    value = exp_negative ? value / Rational(p) : value * Rational(p);
  }
  return negative ? Rational(-value) : value;
}

// Boolean structure before CNF conversion; negation lives in the literals.
struct BoolNode;
using BoolPtr = std::shared_ptr<const BoolNode>;
struct BoolNode {
  enum Kind { Atom, And, Or, True, False } kind;
  Literal literal;
  std::vector<BoolPtr> children;
};

BoolPtr make_bool(BoolNode::Kind kind, std::vector<BoolPtr> children = {}) {
  return std::make_shared<const BoolNode>(BoolNode{kind, {}, std::move(children)});
}

BoolPtr make_atom(Literal literal) {
  return std::make_shared<const BoolNode>(BoolNode{BoolNode::Atom, std::move(literal), {}});
}

class FormulaBuilder {
 public:
  explicit FormulaBuilder(const ParseOptions& options) : options_(options) {}

  void command(const SExpr& e) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list)
      throw ParseError("expected a command", e.line, e.column);
    const std::string& head = e.items[0].atom;
    if (head == "set-logic" || head == "set-info" || head == "set-option" || head == "check-sat" ||
        head == "exit" || head == "get-model" || head == "get-value" || head == "get-info") {
      return;
    }
    if (head == "declare-fun") {
      if (e.items.size() != 4 || e.items[1].is_list || !e.items[2].is_list)
        throw ParseError("malformed declare-fun", e.line, e.column);
      if (!e.items[2].items.empty()) throw UnsupportedError("uninterpreted function", e.line, e.column);
      declare(e.items[1], e.items[3]);
      return;
    }
    if (head == "declare-const") {
      if (e.items.size() != 3 || e.items[1].is_list) throw ParseError("malformed declare-const", e.line, e.column);
      declare(e.items[1], e.items[2]);
      return;
    }
    if (head == "assert") {
      if (e.items.size() != 2) throw ParseError("assert takes one argument", e.line, e.column);
      asserts_.push_back(boolean(e.items[1], false));
      return;
    }
    if (head == "push" || head == "pop" || head == "define-fun" || head == "define-sort" ||
        head == "declare-sort" || head == "declare-datatypes")
      throw UnsupportedError(head, e.line, e.column);
    throw ParseError("unknown command '" + head + "'", e.line, e.column);
  }

  Formula finish() {
    std::vector<Clause> clauses;
    for (const auto& a : asserts_) {
      auto part = cnf(a);
      for (auto& c : part) {
        clauses.push_back(std::move(c));
        if (clauses.size() > options_.cnf_clause_cap)
          throw ParseError("CNF conversion exceeds the clause cap of " + std::to_string(options_.cnf_clause_cap), 0, 0);
      }
    }
    std::set<std::string> used;
    for (const auto& c : clauses)
      for (const auto& l : c.literals) {
        l.lhs.collect_vars(used);
        l.rhs.collect_vars(used);
      }
    Formula f;
    f.clauses = std::move(clauses);
    f.vars = ordered_subset(declared_, used);
    return f;
  }

 private:
  void declare(const SExpr& name, const SExpr& sort) {
    if (sort.is_list) throw UnsupportedError("parametric sort", sort.line, sort.column);
    if (sort.atom == "Int") throw UnsupportedError("Int sort", sort.line, sort.column);
    if (sort.atom == "Bool") throw UnsupportedError("Bool sort", sort.line, sort.column);
    if (sort.atom != "Real") throw UnsupportedError(sort.atom + " sort", sort.line, sort.column);
    if (std::find(declared_.begin(), declared_.end(), name.atom) != declared_.end())
      throw ParseError("variable '" + name.atom + "' declared twice", name.line, name.column);
    declared_.push_back(name.atom);
  }

  bool is_declared(const std::string& n) const {
    return std::find(declared_.begin(), declared_.end(), n) != declared_.end();
  }

  Term term(const SExpr& e) {
    if (!e.is_list) {
      if (auto num = parse_numeral(e.atom)) return Term::constant(*num);
      if (is_declared(e.atom)) return Term::variable(e.atom);
      if (e.atom == "true" || e.atom == "false") throw UnsupportedError("Boolean term", e.line, e.column);
      throw ParseError("undeclared symbol '" + e.atom + "'", e.line, e.column);
    }
    if (e.items.empty() || e.items[0].is_list) throw ParseError("malformed term", e.line, e.column);
    const std::string& head = e.items[0].atom;
    const std::size_t argc = e.items.size() - 1;
    auto arg = [&](std::size_t i) { return term(e.items[i]); };
    if (head == "+") {
      if (argc == 0) throw ParseError("'+' needs arguments", e.line, e.column);
      Term acc = arg(1);
      for (std::size_t i = 2; i <= argc; ++i) acc = Term::add(acc, arg(i));
      return acc;
    }
    if (head == "*") {
      if (argc == 0) throw ParseError("'*' needs arguments", e.line, e.column);
      Term acc = arg(1);
      for (std::size_t i = 2; i <= argc; ++i) acc = Term::mul(acc, arg(i));
      return acc;
    }
    if (head == "-") {
      if (argc == 0) throw ParseError("'-' needs arguments", e.line, e.column);
      if (argc == 1) return Term::neg(arg(1));
      Term acc = arg(1);
      for (std::size_t i = 2; i <= argc; ++i) acc = Term::add(acc, Term::neg(arg(i)));
      return acc;
    }
    if (head == "/") {
      if (argc < 2) throw ParseError("'/' needs two arguments", e.line, e.column);
      Term acc = arg(1);
      for (std::size_t i = 2; i <= argc; ++i) {
        Term d = arg(i);
        if (!d.is_constant()) throw UnsupportedError("division by a non-constant term", e.line, e.column);
        if (d.value() == 0) throw ParseError("division by zero", e.line, e.column);
        Rational inv = Rational(1) / d.value();
        acc = acc.is_constant() ? Term::constant(acc.value() * inv) : Term::mul(acc, Term::constant(inv));
      }
      return acc;
    }
    if (head == "^" || head == "pow") {
      if (argc != 2) throw ParseError("'^' takes two arguments", e.line, e.column);
      Term ex = arg(2);
      if (!ex.is_constant() || boost::multiprecision::denominator(ex.value()) != 1 || ex.value() < 0 ||
          ex.value() > 1024)
        throw UnsupportedError("non-integer exponent", e.line, e.column);
      return Term::pow(arg(1), static_cast<unsigned>(boost::multiprecision::numerator(ex.value())));
    }
    if (head == "sin" || head == "cos" || head == "tan" || head == "exp") {
      if (argc != 1) throw ParseError("'" + head + "' takes one argument", e.line, e.column);
      Term a = arg(1);
      if (head == "sin") return Term::sin(a);
      if (head == "cos") return Term::cos(a);
      if (head == "tan") return Term::tan(a);
      return Term::exp(a);
    }
    if (head == "let") throw UnsupportedError("let", e.line, e.column);
    if (head == "ite") throw UnsupportedError("ite", e.line, e.column);
    if (head == "to_real" || head == "to_int" || head == "div" || head == "mod" || head == "abs")
      throw UnsupportedError(head, e.line, e.column);
    throw UnsupportedError(head, e.line, e.column);
  }

  BoolPtr relation(const SExpr& e, const std::string& head, bool negated) {
    const std::size_t argc = e.items.size() - 1;
    if (argc < 2) throw ParseError("'" + head + "' needs two arguments", e.line, e.column);
    std::vector<Term> args;
    for (std::size_t i = 1; i <= argc; ++i) args.push_back(term(e.items[i]));
    std::vector<BoolPtr> atoms;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      Literal l;
      if (head == "=") l = {args[i], Relation::Eq, args[i + 1], negated};
      else if (head == "<=") l = {args[i], Relation::Le, args[i + 1], negated};
      else if (head == "<") l = {args[i], Relation::Lt, args[i + 1], negated};
      else if (head == ">=") l = {args[i + 1], Relation::Le, args[i], negated};
      else l = {args[i + 1], Relation::Lt, args[i], negated};  // ">"
      atoms.push_back(make_atom(std::move(l)));
    }
    if (atoms.size() == 1) return atoms[0];
    // chained relations are conjunctions; their negation is a disjunction
    return make_bool(negated ? BoolNode::Or : BoolNode::And, std::move(atoms));
  }

  BoolPtr boolean(const SExpr& e, bool negated) {
    if (!e.is_list) {
      if (e.atom == "true") return make_bool(negated ? BoolNode::False : BoolNode::True);
      if (e.atom == "false") return make_bool(negated ? BoolNode::True : BoolNode::False);
      if (is_declared(e.atom)) throw ParseError("real variable used as a formula", e.line, e.column);
      throw UnsupportedError("Boolean variable '" + e.atom + "'", e.line, e.column);
    }
    if (e.items.empty() || e.items[0].is_list) throw ParseError("malformed formula", e.line, e.column);
    const std::string& head = e.items[0].atom;
    if (head == "not") {
      if (e.items.size() != 2) throw ParseError("'not' takes one argument", e.line, e.column);
      return boolean(e.items[1], !negated);
    }
    if (head == "and" || head == "or") {
      std::vector<BoolPtr> kids;
      for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(boolean(e.items[i], negated));
      bool conj = (head == "and") != negated;
      return make_bool(conj ? BoolNode::And : BoolNode::Or, std::move(kids));
    }
    if (head == "=>") {
      if (e.items.size() != 3) throw ParseError("'=>' takes two arguments", e.line, e.column);
      std::vector<BoolPtr> kids{boolean(e.items[1], !negated), boolean(e.items[2], negated)};
      return make_bool(negated ? BoolNode::And : BoolNode::Or, std::move(kids));
    }
    if (head == "=" || head == "<=" || head == "<" || head == ">=" || head == ">") return relation(e, head, negated);
    if (head == "forall" || head == "exists") throw UnsupportedError("quantifier " + head, e.line, e.column);
    if (head == "let") throw UnsupportedError("let", e.line, e.column);
    if (head == "ite") throw UnsupportedError("ite", e.line, e.column);
    if (head == "xor" || head == "distinct") throw UnsupportedError(head, e.line, e.column);
    throw ParseError("unknown Boolean operator '" + head + "'", e.line, e.column);
  }

  std::vector<Clause> cnf(const BoolPtr& node) {
    switch (node->kind) {
      case BoolNode::Atom: return {Clause{{node->literal}}};
      case BoolNode::True: return {};
      case BoolNode::False: return {Clause{}};
      case BoolNode::And: {
        std::vector<Clause> out;
        for (const auto& k : node->children) {
          auto part = cnf(k);
          for (auto& c : part) out.push_back(std::move(c));
          check_cap(out.size());
        }
        return out;
      }
      case BoolNode::Or: {
        std::vector<Clause> acc{Clause{}};
        for (const auto& k : node->children) {
          auto part = cnf(k);
          std::vector<Clause> next;
          check_cap(acc.size() * part.size());
          for (const auto& a : acc)
            for (const auto& b : part) {
              Clause c = a;
              c.literals.insert(c.literals.end(), b.literals.begin(), b.literals.end());
              next.push_back(std::move(c));
            }
          acc = std::move(next);
        }
        return acc;
      }
    }
    return {};
  }

  void check_cap(std::size_t n) const {
    if (n > options_.cnf_clause_cap)
      throw ParseError("CNF conversion exceeds the clause cap of " + std::to_string(options_.cnf_clause_cap), 0, 0);
  }

  const ParseOptions& options_;
  std::vector<std::string> declared_;
  std::vector<BoolPtr> asserts_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseOptions& options) {
  Reader reader(text);
  FormulaBuilder builder(options);
  for (const auto& e : reader.read_all()) builder.command(e);
  Formula f = builder.finish();
  for (const auto& c : f.clauses)
    if (c.literals.empty()) throw ParseError("formula contains an empty clause (asserts false)", 0, 0);
  return f;
}

Formula parse_normalized(std::string_view text, const ParseOptions& options) {
  return normalize(parse_formula(text, options));
}

}  // namespace ntacert
