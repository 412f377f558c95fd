#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ntacert/formula.hpp"
#include "ntacert/interval.hpp"
#include "ntacert/topdeg.hpp"

namespace ntacert::cert {

inline constexpr const char* kVersion = "ntacert/1";

struct Certificate {
  LiteralSelector sigma;
  PartialAssignment nu;
  std::vector<ia::NamedBox> beta;
  std::string formula_digest;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// SHA-256 (lowercase hex) of the printed normalized formula.
std::string formula_digest(const Formula& formula);

std::string serialize(const Certificate& cert);
Certificate deserialize(const std::string& text);

/// Selected system with ground equations split off: those are verified
/// directly and do not count as equations.
struct PreparedSystem {
  std::vector<Term> equations;
  std::vector<Term> ground_equations;
  std::vector<Inequality> inequalities;
  std::vector<std::string> domain;
  std::vector<std::string> warnings;
};

PreparedSystem prepare_system(const Formula& formula, const LiteralSelector& sigma, const PartialAssignment& nu);

/// A ground equation g = 0 holds iff its enclosure is exactly [0, 0].
bool ground_equation_holds(const Term& g);
bool inequality_holds(const Inequality& g, const ia::NamedBox& box);

enum class Verdict { Valid, Invalid, Undetermined };
const char* verdict_name(Verdict v);

struct ConditionResult {
  std::string name;
  bool checked = false;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  Verdict verdict = Verdict::Invalid;
  std::string reason;
  std::vector<ConditionResult> conditions;
  std::vector<std::string> warnings;
  std::optional<int> degree;
  double seconds = 0.0;

  bool valid() const { return verdict == Verdict::Valid; }
};

struct CheckOptions {
  std::size_t degree_budget = topdeg::kDefaultBudget;
};

/// Independent validation of a certificate against a formula.  Uses only
/// the formula, interval and degree code.
CheckReport check_certificate(const Formula& formula, const Certificate& cert, const CheckOptions& options = {});

}  // namespace ntacert::cert
