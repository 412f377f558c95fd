#include <random>

#include "../common/examples.hpp"
#include "doctest.h"
#include "ntacert/formula.hpp"

using namespace ntacert;

namespace {

Term x() { return Term::variable("x"); }
Term y() { return Term::variable("y"); }

Term random_term(std::mt19937_64& rng, int depth, const std::vector<std::string>& pool) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
  std::uniform_int_distribution<int> small(-20, 20);
  std::uniform_int_distribution<std::size_t> var(0, pool.size() - 1);
  switch (pick(rng)) {
    case 0: return Term::variable(pool[var(rng)]);
    case 1: return Term::constant(Rational(small(rng), 1 + std::abs(small(rng))));
    case 2: return Term::add(random_term(rng, depth - 1, pool), random_term(rng, depth - 1, pool));
    case 3: return Term::sub(random_term(rng, depth - 1, pool), random_term(rng, depth - 1, pool));
    case 4: return Term::mul(random_term(rng, depth - 1, pool), random_term(rng, depth - 1, pool));
    case 5: return Term::neg(random_term(rng, depth - 1, pool));
    case 6: return Term::pow(random_term(rng, depth - 1, pool), static_cast<unsigned>(std::abs(small(rng)) % 5));
    case 7: return Term::sin(random_term(rng, depth - 1, pool));
    case 8: return Term::exp(random_term(rng, depth - 1, pool));
    default: return Term::tan(random_term(rng, depth - 1, pool));
  }
}

Formula random_formula(std::mt19937_64& rng, bool normalized) {
  const std::vector<std::string> pool{"a", "b", "c", "d"};
  std::uniform_int_distribution<int> clauses(1, 4), lits(1, 3), rel(0, 2), coin(0, 1);
  Formula f;
  std::set<std::string> used;
  const int nc = clauses(rng);
  for (int i = 0; i < nc; ++i) {
    Clause c;
    const int nl = lits(rng);
    for (int j = 0; j < nl; ++j) {
      Literal l;
      l.lhs = random_term(rng, 3, pool);
      l.lhs.collect_vars(used);
      l.rel = static_cast<Relation>(rel(rng));
      if (!normalized) {
        l.rhs = random_term(rng, 2, pool);
        l.rhs.collect_vars(used);
        l.negated = coin(rng) == 1;
      }
      c.literals.push_back(l);
    }
    f.clauses.push_back(c);
  }
  f.vars = ordered_subset(pool, used);
  return f;
}

}  // namespace

TEST_CASE("parse a single equation") {
  Formula f = parse_formula("(declare-fun x () Real) (assert (= (* x x) 0))");
  REQUIRE(f.clauses.size() == 1);
  REQUIRE(f.clauses[0].literals.size() == 1);
  const Literal& l = f.clauses[0].literals[0];
  CHECK(l.rel == Relation::Eq);
  CHECK(l.lhs == Term::mul(x(), x()));
  CHECK(l.rhs.is_zero());
  CHECK(f.vars == std::vector<std::string>{"x"});
}

TEST_CASE("DM example parses into four clauses over x y z w") {
  Formula f = parse_normalized(testdata::kDmExample);
  CHECK(f.clauses.size() == 4);
  CHECK(f.vars == std::vector<std::string>{"x", "y", "z", "w"});
  CHECK(f.clauses[0].literals[0].lhs == Term::sub(x(), Term::tan(y())));
}

TEST_CASE("negated equation becomes a disjunction of strict inequalities") {
  Formula raw = parse_formula("(declare-fun x () Real)(assert (not (= x 0)))");
  CHECK(raw.clauses[0].literals[0].negated);
  Formula f = normalize(raw);
  REQUIRE(f.clauses.size() == 1);
  REQUIRE(f.clauses[0].literals.size() == 2);
  CHECK(f.clauses[0].literals[0] == Literal{x(), Relation::Lt, Term(), false});
  CHECK(f.clauses[0].literals[1] == Literal{Term::neg(x()), Relation::Lt, Term(), false});
}

TEST_CASE("normalize moves constants left and removes negation") {
  Formula f = parse_normalized("(declare-fun x () Real)(declare-fun y () Real)(assert (<= x 3))");
  CHECK(f.clauses[0].literals[0].lhs == Term::add(x(), Term::constant(-3)));

  Formula g = parse_normalized(
      "(declare-fun x () Real)(declare-fun y () Real)(assert (and (not (<= x 0)) (= y 0)))");
  REQUIRE(g.clauses.size() == 2);
  CHECK(g.clauses[0].literals[0] == Literal{Term::neg(x()), Relation::Lt, Term(), false});
  CHECK(g.clauses[1].literals[0] == Literal{y(), Relation::Eq, Term(), false});

  Formula h = parse_normalized("(declare-fun x () Real)(assert (not (< x 1)))");
  CHECK(h.clauses[0].literals[0].rel == Relation::Le);
  CHECK(h.clauses[0].literals[0].lhs == Term::neg(Term::add(x(), Term::constant(-1))));
}

TEST_CASE("greater-or-equal flips sides") {
  Formula f = parse_normalized("(declare-fun x () Real)(declare-fun y () Real)(assert (>= (+ x y) 1))");
  CHECK(f.clauses[0].literals[0].lhs == Term::sub(Term::constant(1), Term::add(x(), y())));
  CHECK(f.clauses[0].literals[0].rel == Relation::Le);
}

TEST_CASE("decimals and division by constants are exact") {
  Formula f = parse_formula("(declare-fun x () Real)(assert (= (/ x 4) 0.2))");
  const Literal& l = f.clauses[0].literals[0];
  CHECK(l.lhs == Term::mul(x(), Term::constant(Rational(1, 4))));
  CHECK(l.rhs == Term::constant(Rational(1, 5)));
}

TEST_CASE("parse errors and unsupported constructs") {
  CHECK_THROWS_AS(parse_formula("(declare-fun x () Real)(assert (= x 0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(assert (= x 0))"), ParseError);
  CHECK_THROWS_AS(parse_formula("(declare-fun n () Int)"), UnsupportedError);
  CHECK_THROWS_AS(parse_formula("(declare-fun x () Real)(assert (forall ((y Real)) (= x y)))"), UnsupportedError);
  CHECK_THROWS_AS(parse_formula("(declare-fun x () Real)(assert (= (/ 1 x) 0))"), UnsupportedError);
  CHECK_THROWS_AS(parse_formula("(declare-fun x () Real)(assert (let ((y x)) (= y 0)))"), UnsupportedError);
  try {
    parse_formula("(declare-fun x () Real)\n(assert (= (foo x) 0))");
    FAIL("expected an error");
  } catch (const UnsupportedError& e) {
    CHECK(e.construct() == "foo");
  }
  try {
    parse_formula("(declare-fun x () Real)\n  (assert (= x y))");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 16);
  }
}

TEST_CASE("non-CNF asserts are distributed, with a cap") {
  Formula f = parse_formula(
      "(declare-fun x () Real)(declare-fun y () Real)"
      "(assert (or (and (= x 0) (= y 0)) (= x 1)))");
  REQUIRE(f.clauses.size() == 2);
  CHECK(f.clauses[0].literals.size() == 2);
  CHECK(f.clauses[1].literals.size() == 2);

  std::string big = "(declare-fun x () Real)(assert (or";
  for (int i = 0; i < 11; ++i) big += " (and (= x " + std::to_string(i) + ") (< x 100))";
  big += "))";
  CHECK_THROWS_AS(parse_formula(big), ParseError);  // 2^11 clauses
}

TEST_CASE("print then parse is the identity on generated formulas") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Formula f = random_formula(rng, i % 2 == 0);
    const std::string text = print_formula(f);
    Formula g = parse_formula(text);
    REQUIRE_MESSAGE(g == f, text);
  }
}

TEST_CASE("normalize is idempotent") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Formula f = normalize(random_formula(rng, false));
    CHECK(normalize(f) == f);
    for (const auto& c : f.clauses)
      for (const auto& l : c.literals) CHECK(l.is_normalized());
  }
}

TEST_CASE("partition_selected on the certificate example") {
  Formula f = parse_normalized(testdata::kCertificateExample);
  SystemPair s = partition_selected(f, {1, 1, 0, 0}, {{"z", 0.2}});
  REQUIRE(s.equations.size() == 2);
  REQUIRE(s.inequalities.size() == 2);
  CHECK(s.domain == std::vector<std::string>{"x", "y"});
  CHECK(s.equations[0] == Term::sub(Term::sin(y()), Term::exp(x())));
  const Term z02 = Term::constant(rational_from_double(0.2));
  CHECK(s.equations[1] ==
        Term::sub(Term::cos(y()), Term::sin(Term::sub(Term::mul(Term::constant(8), Term::pow(x(), 2)), z02))));
  for (const auto& e : s.equations) CHECK(e.vars().count("z") == 0);
  for (const auto& g : s.inequalities) CHECK(g.term.vars().count("z") == 0);
  CHECK(s.warnings.empty());
}

TEST_CASE("partition_selected edge cases") {
  Formula f = parse_normalized("(declare-fun x () Real)(declare-fun y () Real)(assert (<= x 0))(assert (< y x))");
  SystemPair s = partition_selected(f, {0, 0}, {});
  CHECK(s.equations.empty());
  REQUIRE(s.inequalities.size() == 2);
  CHECK(s.inequalities[1].strict);

  SystemPair full = partition_selected(f, {0, 0}, {{"x", 1.0}, {"y", 2.0}});
  CHECK(full.domain.empty());
  for (const auto& g : full.inequalities) CHECK(g.term.is_ground());

  Formula h = parse_normalized("(declare-fun x () Real)(declare-fun y () Real)(assert (or (= x 0) (= y 0)))");
  SystemPair w = partition_selected(h, {0}, {{"y", 3.0}});
  CHECK(w.warnings.size() == 1);
  CHECK(w.domain == std::vector<std::string>{"x"});

  CHECK_THROWS_AS(partition_selected(f, {0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(partition_selected(f, {0, 1}, {}), std::invalid_argument);
}

TEST_CASE("partition keeps variables inside the remaining domain") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Formula f = normalize(random_formula(rng, true));
    LiteralSelector sel;
    for (const auto& c : f.clauses) sel.push_back(rng() % c.literals.size());
    PartialAssignment nu;
    for (const auto& v : selected_vars(f, sel))
      if (rng() % 2) nu[v] = 0.5;
    SystemPair s = partition_selected(f, sel, nu);
    std::set<std::string> dom(s.domain.begin(), s.domain.end());
    for (const auto& e : s.equations)
      for (const auto& v : e.vars()) CHECK(dom.count(v));
    for (const auto& g : s.inequalities)
      for (const auto& v : g.term.vars()) CHECK(dom.count(v));
  }
}

TEST_CASE("dnf expansion order, identity and truncation") {
  Formula f = parse_normalized(
      "(declare-fun a () Real)(declare-fun b () Real)(declare-fun c () Real)"
      "(assert (or (= a 0) (= b 0)))(assert (= c 0))");
  DnfExpansion d = dnf_expand(f);
  REQUIRE(d.terms.size() == 2);
  CHECK_FALSE(d.truncated);
  CHECK(d.terms[0].selection == LiteralSelector{0, 0});
  CHECK(d.terms[1].selection == LiteralSelector{1, 0});
  CHECK(d.terms[0].conjunction.vars == std::vector<std::string>{"a", "c"});

  Formula unit = parse_normalized("(declare-fun a () Real)(assert (= a 0))(assert (<= a 1))");
  DnfExpansion u = dnf_expand(unit);
  REQUIRE(u.terms.size() == 1);
  CHECK(u.terms[0].conjunction == unit);

  std::string text = "(declare-fun a () Real)";
  for (int i = 0; i < 14; ++i)
    text += "(assert (or (= a " + std::to_string(i) + ") (< a " + std::to_string(i) + ")))";
  Formula wide = parse_normalized(text);
  DnfExpansion w = dnf_expand(wide);
  CHECK(w.truncated);
  CHECK(w.terms.size() == 10000);
}

TEST_CASE("dnf count equals the product of clause sizes") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Formula f = normalize(random_formula(rng, true));
    std::size_t product = 1;
    for (const auto& c : f.clauses) product *= c.literals.size();
    // brute force: walk every selector explicitly
    std::size_t brute = 0;
    std::vector<std::size_t> idx(f.clauses.size(), 0);
    while (true) {
      ++brute;
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == f.clauses[k].literals.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    CHECK(product == brute);
    DnfExpansion d = dnf_expand(f);
    CHECK(d.terms.size() == brute);
    CHECK_FALSE(d.truncated);
  }
}

TEST_CASE("rational_from_double is exact") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-3.0) == Rational(-3));
  CHECK(rational_from_double(0.2) != Rational(1, 5));
  CHECK(static_cast<double>(rational_from_double(0.1)) == 0.1);
  CHECK(rational_from_double(std::ldexp(1.0, -1074)) > 0);
}
