#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <random>

#include "../common/examples.hpp"
#include "doctest.h"
#include "ntacert/interval.hpp"
#include "ntacert/linalg.hpp"

using namespace ntacert;
using namespace ntacert::linalg;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

std::vector<Term> equations(const std::string& script) {
  std::vector<Term> out;
  for (const auto& c : parse_normalized(script).clauses) out.push_back(c.literals[0].term());
  return out;
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
  std::uniform_int_distribution<int> small(-4, 4);
  switch (pick(rng)) {
    case 0: return Term::variable(vars[rng() % vars.size()]);
    case 1: return Term::constant(Rational(small(rng), 1 + std::abs(small(rng))));
    case 2:
    case 3: return Term::add(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 4: return Term::mul(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1));
    case 5: return Term::pow(random_term(rng, vars, depth - 1), 2);
    case 6: return Term::sin(random_term(rng, vars, depth - 1));
    case 7: return Term::cos(random_term(rng, vars, depth - 1));
    default: return Term::exp(Term::mul(Term::constant(Rational(1, 4)), random_term(rng, vars, depth - 1)));
  }
}

}  // namespace

TEST_CASE("rank examples") {
  auto i2 = rank_with_threshold(from_rows({{1, 0}, {0, 1}}));
  CHECK(i2.rank == 2);
  CHECK(i2.robust);
  auto ones = rank_with_threshold(from_rows({{1, 1}, {1, 1}}));
  CHECK(ones.rank == 1);
  CHECK_FALSE(ones.robust);
  auto tiny = rank_with_threshold(from_rows({{1, 0}, {0, 1e-30}}));
  CHECK(tiny.rank == 1);
  CHECK_FALSE(tiny.robust);
  Matrix bad = from_rows({{1, std::nan("")}});
  CHECK_THROWS_AS(rank_with_threshold(bad), std::domain_error);
  CHECK(rank_with_threshold(Matrix(0, 3)).robust);
}

TEST_CASE("singular values match Eigen") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m(r, c);
    Eigen::MatrixXd e(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) e(i, j) = m(i, j) = u(rng);
    if (rng() % 4 == 0 && c > 1)  // planted dependency
      for (std::size_t i = 0; i < r; ++i) e(i, c - 1) = m(i, c - 1) = 2 * m(i, 0);
    const Svd s = svd(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> ref(e);
    const auto& sv = ref.singularValues();
    for (long k = 0; k < sv.size(); ++k) CHECK(s.singular_values[k] == doctest::Approx(sv(k)).epsilon(1e-9).scale(1));
    for (std::size_t k = sv.size(); k < c; ++k) CHECK(s.singular_values[k] <= 1e-12);
    // rank is transpose-invariant
    CHECK(rank_with_threshold(m).rank == rank_with_threshold(m.transpose()).rank);
    // V is orthogonal
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        double dot = 0;
        for (std::size_t i = 0; i < c; ++i) dot += s.v(i, a) * s.v(i, b);
        CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).scale(1).epsilon(1e-9));
      }
  }
}

TEST_CASE("jacobian examples") {
  auto sq = equations("(declare-fun x () Real)(assert (= (- (^ x 2) 1) 0))");
  auto j = jacobian_at(sq, {"x"}, std::vector<double>{3.0});
  CHECK(j.matrix(0, 0) == 6);
  auto lin = equations("(declare-fun x () Real)(declare-fun y () Real)(assert (= (+ x y) 0))");
  auto jl = jacobian_at(lin, {"x", "y"}, std::vector<double>{0.3, -7.0});
  CHECK(jl.matrix(0, 0) == 1);
  CHECK(jl.matrix(0, 1) == 1);
  CHECK(jl.all_finite());
}

TEST_CASE("jacobian agrees with central differences") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::vector<std::string> vars{"x", "y", "z"};
  std::size_t compared = 0;
  // the two transcendental equations of the certificate example, z = 0.2
  {
    auto f = equations(
        "(declare-fun x () Real)(declare-fun y () Real)"
        "(assert (= (sin y) (exp x)))(assert (= (cos y) (sin (- (* 8 (^ x 2)) 0.2))))");
    const std::vector<double> p{0.0, std::numbers::pi / 2};
    auto j = jacobian_at(f, {"x", "y"}, p);
    CHECK(j.matrix(0, 0) == doctest::Approx(-1));
    CHECK(j.matrix(0, 1) == doctest::Approx(0).scale(1));
    CHECK(j.matrix(1, 0) == doctest::Approx(0).scale(1));
    CHECK(j.matrix(1, 1) == doctest::Approx(-1));
  }
  for (int t = 0; t < 1000; ++t) {
    std::vector<Term> f{random_term(rng, vars, 4), random_term(rng, vars, 4)};
    std::vector<double> p{u(rng), u(rng), u(rng)};
    auto j = jacobian_at(f, vars, p);
    if (!j.all_finite()) continue;
    for (std::size_t r = 0; r < f.size(); ++r) {
      ia::Tape tape(f[r], vars);
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const double h = 1e-6 * std::max(1.0, std::fabs(p[k]));
        auto a = p, b = p;
        a[k] += h;
        b[k] -= h;
        const double fd = (tape.eval(std::span<const double>(a)) - tape.eval(std::span<const double>(b))) / (2 * h);
        CHECK(std::fabs(j.matrix(r, k) - fd) <= 1e-4 * std::max(1.0, std::fabs(fd)));
        ++compared;
      }
    }
  }
  CHECK(compared >= 3000);
}

TEST_CASE("kearfott order") {
  JacobianAt j;
  j.vars = {"x", "y"};
  j.matrix = from_rows({{1, 0}});
  j.row_finite = {true};
  CHECK(kearfott_order(j, {"y"}) == std::vector<std::string>{"y"});
  auto w = kearfott_weights(j);
  CHECK(w[0] == doctest::Approx(0).scale(1));
  CHECK(w[1] == doctest::Approx(1));

  j.matrix = from_rows({{1, 1}});
  w = kearfott_weights(j);
  CHECK(w[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(w[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(kearfott_order(j, {"x", "y"}) == std::vector<std::string>{"x", "y"});
  CHECK(kearfott_order(j, {"y", "x"}) == std::vector<std::string>{"x", "y"});

  j.matrix = from_rows({{2, 1}, {0, 3}});
  j.row_finite = {true, true};
  CHECK(kearfott_order(j, {"x", "y"}).empty());
}

TEST_CASE("candidates for two independent sums") {
  const std::vector<std::string> vars{"x", "y", "z", "w"};
  auto f = equations(
      "(declare-fun x () Real)(declare-fun y () Real)(declare-fun z () Real)(declare-fun w () Real)"
      "(assert (= (+ x y) 0))(assert (= (+ z w) 0))");
  auto j = jacobian_at(f, vars, std::vector<double>{1, -1, 2, -2});
  for (bool kear : {false, true}) {
    CandidateOptions o;
    o.kearfott_ordering = kear;
    o.filter_overconstr_v = true;
    auto cs = instantiation_candidates(f, vars, j, o);
    CHECK(cs.size() == 4);
    for (const auto& c : cs) {
      CHECK(c.vars.size() == 2);
      CHECK(c.vars != std::vector<std::string>{"x", "y"});
      CHECK(c.vars != std::vector<std::string>{"z", "w"});
      CHECK(well_constrained_after(f, vars, c.vars));
    }
    o.filter_overconstr_v = false;
    CHECK(instantiation_candidates(f, vars, j, o).size() == 6);
    o.filter_rank_deficient = true;
    CHECK(instantiation_candidates(f, vars, j, o).size() == 4);
  }
}

TEST_CASE("candidates for the certificate example") {
  Formula phi = parse_normalized(testdata::kCertificateExample);
  auto sys = partition_selected(phi, {1, 1, 0, 0}, {});
  REQUIRE(sys.equations.size() == 2);
  auto j = jacobian_at(sys.equations, sys.domain, std::vector<double>{-0.03, 1.6, 0.2});
  CandidateOptions o;
  o.kearfott_ordering = true;
  o.filter_overconstr_v = true;
  o.filter_rank_deficient = true;
  auto cs = instantiation_candidates(sys.equations, sys.domain, j, o);
  bool has_z = false;
  for (const auto& c : cs) has_z |= c.vars == std::vector<std::string>{"z"};
  CHECK(has_z);
}

TEST_CASE("square system gives the empty candidate") {
  auto f = equations("(declare-fun x () Real)(assert (= x 0))");
  auto j = jacobian_at(f, {"x"}, std::vector<double>{0.0});
  auto cs = instantiation_candidates(f, {"x"}, j, {});
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].vars.empty());
  auto over = equations("(declare-fun x () Real)(assert (= x 0))(assert (= (sin x) 0))");
  CHECK(instantiation_candidates(over, {"x"}, jacobian_at(over, {"x"}, std::vector<double>{0.0}), {}).empty());
}

TEST_CASE("rank filter implies the well-constrained filter") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::vector<std::string> all{"a", "b", "c", "d", "e"};
  std::size_t checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t nv = 2 + rng() % 4, ne = 1 + rng() % (nv - 1);
    std::vector<std::string> vars(all.begin(), all.begin() + static_cast<long>(nv));
    std::vector<Term> f;
    for (std::size_t e = 0; e < ne; ++e) {
      // sparse random sums of products
      Term t = Term::constant(Rational(static_cast<long>(rng() % 5) - 2));
      for (const auto& v : vars)
        if (rng() % 3 == 0) t = Term::add(t, Term::mul(Term::constant(1 + static_cast<long>(rng() % 3)), Term::sin(Term::variable(v))));
      if (rng() % 2 && nv > 1) t = Term::add(t, Term::mul(Term::variable(vars[0]), Term::variable(vars[1])));
      f.push_back(t);
    }
    std::vector<double> p;
    for (std::size_t i = 0; i < nv; ++i) p.push_back(u(rng));
    auto j = jacobian_at(f, vars, p);
    CandidateOptions rank_only;
    rank_only.filter_rank_deficient = true;
    rank_only.kearfott_ordering = rng() % 2;
    for (const auto& c : instantiation_candidates(f, vars, j, rank_only)) {
      CHECK(well_constrained_after(f, vars, c.vars));
      ++checked;
    }
  }
  CHECK(checked > 100);
}
