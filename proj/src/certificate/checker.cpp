#include <chrono>
#include <cmath>
#include <set>

#include "ntacert/certificate.hpp"

namespace ntacert::cert {

namespace {

class Report {
 public:
  explicit Report(CheckReport& r) : r_(r) {}

  void pass(const std::string& name, std::string detail = {}) { r_.conditions.push_back({name, true, true, std::move(detail)}); }

  void fail(const std::string& name, std::string detail, Verdict v = Verdict::Invalid) {
    r_.conditions.push_back({name, true, false, detail});
    r_.verdict = v;
    r_.reason = name + ": " + detail;
  }

 private:
  CheckReport& r_;
};

}  // namespace

CheckReport check_certificate(const Formula& input, const Certificate& cert, const CheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  Report rep(report);
  auto finish = [&]() -> CheckReport {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
  const Formula phi = normalize(input);

  if (cert.formula_digest != formula_digest(phi)) {
    rep.fail("digest", "certificate is bound to a different formula");
    return finish();
  }

  // (a) one literal per clause
  if (cert.sigma.size() != phi.clauses.size()) {
    rep.fail("sigma", "selector has " + std::to_string(cert.sigma.size()) + " entries for " +
                          std::to_string(phi.clauses.size()) + " clauses");
    return finish();
  }
  for (std::size_t i = 0; i < cert.sigma.size(); ++i)
    if (cert.sigma[i] >= phi.clauses[i].literals.size()) {
      rep.fail("sigma", "clause " + std::to_string(i) + " has no literal " + std::to_string(cert.sigma[i]));
      return finish();
    }
  rep.pass("sigma");

  PreparedSystem sys;
  try {
    sys = prepare_system(phi, cert.sigma, cert.nu);
  } catch (const std::exception& e) {
    rep.fail("count", e.what());
    return finish();
  }
  report.warnings = sys.warnings;

  // (b) as many equations as uninstantiated variables
  for (const auto& g : sys.ground_equations)
    if (!ground_equation_holds(g)) {
      rep.fail("count", "instantiated equation " + print_term(g) + " = 0 does not hold exactly");
      return finish();
    }
  if (sys.equations.size() != sys.domain.size()) {
    rep.fail("count", std::to_string(sys.equations.size()) + " equations for " + std::to_string(sys.domain.size()) +
                          " uninstantiated variables");
    return finish();
  }
  rep.pass("count", std::to_string(sys.equations.size()) + " equations, " +
                        std::to_string(sys.ground_equations.size()) + " verified ground equations");

  // Boxes over the uninstantiated variables, in formula order.
  if (cert.beta.empty()) {
    rep.fail("union_is_box", "beta is empty");
    return finish();
  }
  std::vector<ia::NamedBox> boxes;
  const std::set<std::string> domain(sys.domain.begin(), sys.domain.end());
  for (const auto& b : cert.beta) {
    const std::set<std::string> names(b.names().begin(), b.names().end());
    if (names != domain || b.dim() != domain.size()) {
      rep.fail("union_is_box", "box domain differs from the uninstantiated variables");
      return finish();
    }
    std::vector<ia::Interval> ivs;
    for (const auto& v : sys.domain) ivs.push_back(b.at(v));
    for (const auto& iv : ivs)
      if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
        rep.fail("union_is_box", "box has an empty or unbounded interval");
        return finish();
      }
    boxes.emplace_back(sys.domain, std::move(ivs));
  }

  // (c)
  std::optional<ia::NamedBox> hull;
  try {
    hull = ia::union_is_box(boxes);
  } catch (const std::length_error& e) {
    rep.fail("union_is_box", e.what(), Verdict::Undetermined);
    return finish();
  }
  if (!hull) {
    rep.fail("union_is_box", "union of the boxes is not a box");
    return finish();
  }
  rep.pass("union_is_box");

  // (d)
  switch (topdeg::check_boundary(sys.equations, *hull, options.degree_budget)) {
    case topdeg::Status::Degree: rep.pass("boundary"); break;
    case topdeg::Status::BudgetExceeded:
      rep.fail("boundary", "budget exhausted", Verdict::Undetermined);
      return finish();
    default: rep.fail("boundary", "could not verify 0 outside F(boundary)"); return finish();
  }

  // (e)
  const topdeg::DegreeResult d = topdeg::degree(sys.equations, *hull, options.degree_budget);
  if (d.status == topdeg::Status::BudgetExceeded) {
    rep.fail("degree", "budget exhausted", Verdict::Undetermined);
    return finish();
  }
  if (!d.ok()) {
    rep.fail("degree", topdeg::status_name(d.status));
    return finish();
  }
  report.degree = d.degree;
  if (d.degree == 0) {
    rep.fail("degree", "degree is 0");
    return finish();
  }
  rep.pass("degree", std::to_string(d.degree));

  // (f)
  for (std::size_t b = 0; b < boxes.size(); ++b)
    for (const auto& g : sys.inequalities)
      if (!inequality_holds(g, boxes[b])) {
        rep.fail("inequalities", print_term(g.term) + (g.strict ? " < 0" : " <= 0") + " fails on box " +
                                     std::to_string(b));
        return finish();
      }
  rep.pass("inequalities", std::to_string(sys.inequalities.size()) + " inequalities on " +
                               std::to_string(boxes.size()) + " boxes");
  report.verdict = Verdict::Valid;
  return finish();
}

}  // namespace ntacert::cert
