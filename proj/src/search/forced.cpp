#include <map>

#include "ntacert/interval.hpp"
#include "ntacert/search.hpp"

namespace ntacert::search {

namespace {

// Affine form over atoms: variables by name, other subterms by their printed
// form.
struct Linear {
  std::map<std::string, Rational> coef;
  Rational constant = 0;

  bool is_constant() const { return coef.empty(); }

  void add(const Linear& o, const Rational& scale) {
    for (const auto& [a, c] : o.coef) {
      Rational& slot = coef[a];
      slot += scale * c;
      if (slot == 0) coef.erase(a);
    }
    constant += scale * o.constant;
  }
};

Linear atom(const std::string& key) {
  Linear l;
  l.coef[key] = 1;
  return l;
}

Linear linearize(const Term& t) {
  switch (t.op()) {
    case Op::Var: return atom(t.name());
    case Op::Const: {
      Linear l;
      l.constant = t.value();
      return l;
    }
    case Op::Add: {
      Linear l = linearize(t.first());
      l.add(linearize(t.second()), 1);
      return l;
    }
    case Op::Neg: {
      Linear l;
      l.add(linearize(t.first()), -1);
      return l;
    }
    case Op::Mul: {
      Linear a = linearize(t.first()), b = linearize(t.second());
      if (a.is_constant()) {
        Linear l;
        l.add(b, a.constant);
        return l;
      }
      if (b.is_constant()) {
        Linear l;
        l.add(a, b.constant);
        return l;
      }
      return atom("#" + print_term(t));
    }
    case Op::Pow: {
      Linear a = linearize(t.first());
      if (a.is_constant()) {
        Linear l;
        Rational v = 1;
        for (unsigned i = 0; i < t.exponent(); ++i) v *= a.constant;
        l.constant = v;
        return l;
      }
      if (t.exponent() == 1) return a;
      return atom("#" + print_term(t));
    }
    default: return atom("#" + print_term(t));
  }
}

struct Row {
  std::string pivot;
  Linear form;  // pivot coefficient 1
};

void reduce(Linear& l, const std::vector<Row>& rows) {
  for (const auto& r : rows) {
    auto it = l.coef.find(r.pivot);
    if (it == l.coef.end()) continue;
    const Rational c = it->second;
    l.add(r.form, -c);
  }
}

bool constant_violates(Relation rel, const Rational& c) {
  switch (rel) {
    case Relation::Eq: return c != 0;
    case Relation::Le: return c > 0;
    case Relation::Lt: return c >= 0;
  }
  return false;
}

}  // namespace

Consistency forced_literal_consistency(const std::vector<Literal>& literals) {
  // Ground literals: interval evaluation decides.
  for (const auto& l : literals) {
    if (!l.is_normalized() || !l.term().is_ground()) continue;
    const ia::Interval v = ia::eval_interval(l.term(), ia::NamedBox{});
    if ((l.rel == Relation::Eq && !v.contains_zero()) || (l.rel == Relation::Le && v.lo > 0) ||
        (l.rel == Relation::Lt && v.lo >= 0))
      return Consistency::Inconsistent;
  }

  // Gaussian elimination on the linear equations.
  std::vector<Row> rows;
  for (const auto& l : literals) {
    if (!l.is_normalized() || l.rel != Relation::Eq) continue;
    Linear f = linearize(l.term());
    reduce(f, rows);
    if (f.is_constant()) {
      if (f.constant != 0) return Consistency::Inconsistent;
      continue;
    }
    auto [pivot, c] = *f.coef.begin();
    Linear normalized;
    normalized.add(f, Rational(1) / c);
    for (auto& r : rows) {
      auto it = r.form.coef.find(pivot);
      if (it == r.form.coef.end()) continue;
      const Rational k = it->second;
      r.form.add(normalized, -k);
    }
    rows.push_back({pivot, std::move(normalized)});
  }

  // Substitute into the inequalities and look for clashes.
  std::vector<std::pair<Linear, Relation>> ineqs;
  for (const auto& l : literals) {
    if (!l.is_normalized() || l.rel == Relation::Eq) continue;
    Linear f = linearize(l.term());
    reduce(f, rows);
    if (f.is_constant()) {
      if (constant_violates(l.rel, f.constant)) return Consistency::Inconsistent;
      continue;
    }
    ineqs.emplace_back(std::move(f), l.rel);
  }
  // Opposite pairs a + c1 <= 0, -a + c2 <= 0 sum to c1 + c2 <= 0.
  for (std::size_t i = 0; i < ineqs.size(); ++i)
    for (std::size_t j = i + 1; j < ineqs.size(); ++j) {
      Linear sum = ineqs[i].first;
      sum.add(ineqs[j].first, 1);
      if (!sum.is_constant()) continue;
      const bool strict = ineqs[i].second == Relation::Lt || ineqs[j].second == Relation::Lt;
      if (constant_violates(strict ? Relation::Lt : Relation::Le, sum.constant)) return Consistency::Inconsistent;
    }
  return Consistency::ConsistentUnknown;
}

}  // namespace ntacert::search
