#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntacert/formula.hpp"

namespace ntacert::ia {

/// Closed interval [lo, hi] of binary64 endpoints.  Infinite endpoints are
/// allowed; NaN never is.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  static Interval whole() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }
  bool is_point() const { return lo == hi; }
  double width() const { return hi - lo; }
  double mid() const;
  /// Distance of the interval from zero; 0 when it contains zero.
  double magnitude_from_zero() const { return lo > 0 ? lo : (hi < 0 ? -hi : 0.0); }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

double next_up(double x);
double next_down(double x);

Interval hull(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval scale(double c, const Interval& a);
Interval pow(const Interval& a, unsigned n);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval tan(const Interval& a);
Interval exp(const Interval& a);

/// Tightest binary64 interval around an exact rational.
Interval from_rational(const Rational& v);

/// Enclosure of pi.
Interval pi();

// ------------------------------------------------------------- tapes

/// A Term compiled against a fixed variable order; shared subterms are
/// evaluated once.
class Tape {
 public:
  struct Instr {
    Op op;
    std::size_t a = 0;
    std::size_t b = 0;
    unsigned exponent = 0;
    std::size_t slot = 0;  // Var
    Interval constant;     // Const (enclosure)
    double constant_value = 0.0;  // Const (nearest double, for point evaluation)
  };

  Tape() = default;
  Tape(const Term& term, const std::vector<std::string>& slots);

  std::size_t num_slots() const { return num_slots_; }
  const std::vector<Instr>& code() const { return code_; }
  bool empty() const { return code_.empty(); }

  Interval eval(std::span<const Interval> box) const;
  double eval(std::span<const double> point) const;
  /// Value and gradient with respect to all slots.
  double eval_gradient(std::span<const double> point, std::span<double> gradient) const;

 private:
  std::vector<Instr> code_;
  std::size_t num_slots_ = 0;
};

// ------------------------------------------------------- named boxes

/// Interval assignment over an ordered variable list; doubles as a box.
class NamedBox {
 public:
  NamedBox() = default;
  NamedBox(std::vector<std::string> names, std::vector<Interval> intervals);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& intervals() const { return intervals_; }
  std::vector<Interval>& intervals() { return intervals_; }
  std::size_t dim() const { return names_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  Interval& operator[](std::size_t i) { return intervals_[i]; }
  const Interval& at(const std::string& name) const;
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool contains(std::span<const double> point) const;
  bool subset_of(const NamedBox& other) const;

  friend bool operator==(const NamedBox& a, const NamedBox& b) {
    return a.names_ == b.names_ && a.intervals_ == b.intervals_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> intervals_;
};

enum class Side { Lo, Hi };

struct Face {
  NamedBox box;  // parent with `var` collapsed to one endpoint
  std::string var;
  Side side;
};

/// Evaluates `f` over `box`; every variable of `f` must be in the box.
Interval eval_interval(const Term& f, const NamedBox& box);

/// The hull of the boxes if their union is exactly that hull.  Throws
/// std::invalid_argument when the boxes do not share one variable list.
std::optional<NamedBox> union_is_box(std::span<const NamedBox> boxes);

std::vector<Face> boundary_faces(const NamedBox& box);

/// Lowercase hexadecimal float literal; parse_hex inverts it bit-exactly.
std::string format_hex(double v);
double parse_hex(const std::string& s);

}  // namespace ntacert::ia
