#include <cmath>
#include <random>

#include "../common/examples.hpp"
#include "doctest.h"
#include "ntacert/l2o.hpp"

using namespace ntacert;
using l2o::Objective;

namespace {

Formula single_var(const std::string& body) { return parse_normalized("(declare-fun x () Real)" + body); }

double h1(const Objective& h, double x) { return h.eval(std::vector<double>{x}); }

Term random_smooth(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7);
  std::uniform_int_distribution<int> small(-5, 5);
  switch (pick(rng)) {
    case 0: return Term::variable(rng() % 2 ? "x" : "y");
    case 1: return Term::constant(Rational(small(rng), 1 + std::abs(small(rng))));
    case 2: return Term::add(random_smooth(rng, depth - 1), random_smooth(rng, depth - 1));
    case 3: return Term::sub(random_smooth(rng, depth - 1), random_smooth(rng, depth - 1));
    case 4: return Term::mul(random_smooth(rng, depth - 1), random_smooth(rng, depth - 1));
    case 5: return Term::pow(random_smooth(rng, depth - 1), 2 + rng() % 2);
    case 6: return Term::sin(random_smooth(rng, depth - 1));
    default: return Term::cos(random_smooth(rng, depth - 1));
  }
}

Formula random_formula(std::mt19937_64& rng) {
  Formula f;
  f.vars = {"x", "y"};
  const std::size_t clauses = 1 + rng() % 3;
  for (std::size_t c = 0; c < clauses; ++c) {
    Clause cl;
    const std::size_t lits = 1 + rng() % 3;
    for (std::size_t l = 0; l < lits; ++l)
      cl.literals.push_back(Literal{random_smooth(rng, 3), static_cast<Relation>(rng() % 3), Term(), false});
    f.clauses.push_back(cl);
  }
  return f;
}

}  // namespace

TEST_CASE("objective values") {
  Objective eq(single_var("(assert (= x 0))"));
  CHECK(h1(eq, 0) == 0);
  CHECK(h1(eq, 3) == 3);
  CHECK(h1(eq, -3) == 3);
  Objective le(single_var("(assert (<= x 1))"));
  CHECK(h1(le, 2) == 1);
  CHECK(h1(le, 0) == 0);
  Objective mix(single_var("(assert (or (= x 0) (= x 2)))(assert (<= x 2))"));
  CHECK(h1(mix, 2) == 0);
  CHECK(h1(mix, 0) == 0);
  CHECK(h1(mix, 3) == doctest::Approx(2));
  CHECK(mix.literal_value(0, 1, std::vector<double>{3.0}) == 1);
}

TEST_CASE("tan pole maps to infinity") {
  Objective t(single_var("(assert (= (tan x) 0))"));
  // tan(pi/2) in doubles is finite but huge; a NaN argument is the pole case.
  CHECK(std::isinf(h1(t, std::nan(""))));
  std::vector<double> g{0.0};
  CHECK(std::isinf(t.eval_gradient(std::vector<double>{std::nan("")}, g)));
  CHECK(g[0] == 0);
}

TEST_CASE("gradient branches") {
  Objective a(single_var("(assert (= x 0))"));
  CHECK(a.gradient(std::vector<double>{3.0})[0] == 1);
  CHECK(a.gradient(std::vector<double>{-3.0})[0] == -1);
  CHECK(a.gradient(std::vector<double>{0.0})[0] == 1);
  Objective m(single_var("(assert (<= x 0))"));
  CHECK(m.gradient(std::vector<double>{-1.0})[0] == 0);
  CHECK(m.gradient(std::vector<double>{0.0})[0] == 0);
  CHECK(m.gradient(std::vector<double>{2.0})[0] == 1);
  // |x - 1| and |1 - x| tie; the first literal's branch is used
  Objective tie(single_var("(assert (or (= (- x 1) 0) (= (- 1 x) 0)))"));
  CHECK(tie.gradient(std::vector<double>{3.0})[0] == 1);
}

TEST_CASE("certificate example objective at a near-root is tiny") {
  Formula f = parse_normalized(testdata::kCertificateExample);
  Objective h(f);
  CHECK(h.arity() == 3);
  // All four clauses defined; value is finite and non-negative.
  CHECK(h.eval(std::vector<double>{0.0, 1.5, 0.2}) >= 0);
}

TEST_CASE("non-negativity and model-zero") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 10000; ++i) {
    Objective h(random_formula(rng));
    CHECK(h.eval(std::vector<double>{u(rng), u(rng)}) >= 0);
  }
  // planted rational model x = 1/2, y = -3
  Formula f = parse_normalized(
      "(declare-fun x () Real)(declare-fun y () Real)"
      "(assert (or (= (+ (* 2 x) y 2) 0) (= x 7)))(assert (<= (* x y) 0))(assert (< y 0))");
  CHECK(Objective(f).eval(std::vector<double>{0.5, -3.0}) == 0);
}

TEST_CASE("gradient agrees with central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    Objective h(random_formula(rng));
    std::vector<double> p{u(rng), u(rng)};
    const std::vector<double> g = h.gradient(p);
    const double step = 1e-6;
    bool smooth = true;
    std::vector<double> fd(2);
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<double> a = p, b = p;
      a[k] += step;
      b[k] -= step;
      fd[k] = (h.eval(a) - h.eval(b)) / (2 * step);
      // A kink inside the stencil shows up as one-sided slopes that disagree.
      std::vector<double> c = p;
      c[k] += step / 2;
      const double right = (h.eval(a) - h.eval(c)) / (step / 2);
      std::vector<double> d = p;
      d[k] -= step / 2;
      const double left = (h.eval(d) - h.eval(b)) / (step / 2);
      if (std::fabs(right - left) > 1e-3 * (1 + std::fabs(right))) smooth = false;
    }
    if (!smooth || !std::isfinite(h.eval(p))) continue;
    ++compared;
    const double norm = std::max(std::fabs(g[0]), std::fabs(g[1]));
    for (std::size_t k = 0; k < 2; ++k) CHECK(std::fabs(g[k] - fd[k]) <= std::max(1e-5, 1e-3 * norm));
  }
  CHECK(compared >= 1000);
}
