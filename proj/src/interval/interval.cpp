#include "ntacert/interval.hpp"

#include <algorithm>
#include <cfloat>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ntacert::ia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude a product may have lost bits to underflow, so the
// fma residual is no longer exact.
constexpr double kTinyProduct = 0x1p-969;
// Widening applied to library transcendental results.
constexpr int kTranscendentalUlps = 2;

double add_down(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) return -kInf;
  if (std::isinf(s)) return (std::isfinite(a) && std::isfinite(b) && s > 0) ? kMax : s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) return kInf;
  if (std::isinf(s)) return (std::isfinite(a) && std::isfinite(b) && s < 0) ? -kMax : s;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return err > 0 ? next_up(s) : s;
}

double mul_down(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(p)) return (std::isfinite(a) && std::isfinite(b) && p > 0) ? kMax : p;
  if (std::fabs(p) < kTinyProduct) return next_down(p);
  const double err = std::fma(a, b, -p);
  return err < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  const double p = a * b;
  if (std::isinf(p)) return (std::isfinite(a) && std::isfinite(b) && p < 0) ? -kMax : p;
  if (std::fabs(p) < kTinyProduct) return next_up(p);
  const double err = std::fma(a, b, -p);
  return err > 0 ? next_up(p) : p;
}

double widen_down(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = next_down(v);
  return v;
}

double widen_up(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = next_up(v);
  return v;
}

double pow_up(double x, unsigned n) {  // x >= 0
  double result = 1.0;
  double base = x;
  while (n) {
    if (n & 1u) result = mul_up(result, base);
    n >>= 1u;
    if (n) base = mul_up(base, base);
  }
  return result;
}

double pow_down(double x, unsigned n) {  // x >= 0
  double result = 1.0;
  double base = x;
  while (n) {
    if (n & 1u) result = std::max(0.0, mul_down(result, base));
    n >>= 1u;
    if (n) base = std::max(0.0, mul_down(base, base));
  }
  return result;
}

// Reciprocal enclosure of a positive interval.
Interval reciprocal_positive(const Interval& a) {
  return {next_down(1.0 / a.hi), next_up(1.0 / a.lo)};
}

// Whether some offset + k*period (k integer) may lie in [a, b].  Errs
// towards true.
bool may_contain_lattice_point(double a, double b, const Interval& offset, const Interval& period) {
  const Interval inv = reciprocal_positive(period);
  const Interval ta = (Interval::point(a) - offset) * inv;
  const Interval tb = (Interval::point(b) - offset) * inv;
  if (!std::isfinite(ta.lo) || !std::isfinite(tb.hi)) return true;
  return std::ceil(ta.lo) <= std::floor(tb.hi);
}

Interval clamp_unit(Interval r) {
  r.lo = std::max(r.lo, -1.0);
  r.hi = std::min(r.hi, 1.0);
  return r;
}

}  // namespace

double next_up(double x) { return std::nextafter(x, kInf); }
double next_down(double x) { return std::nextafter(x, -kInf); }

double Interval::mid() const {
  if (std::isinf(lo) || std::isinf(hi)) {
    if (std::isinf(lo) && std::isinf(hi)) return 0.0;
    return std::isinf(lo) ? (hi > 0 ? 0.0 : hi - 1.0) : (lo < 0 ? 0.0 : lo + 1.0);
  }
  const double m = 0.5 * lo + 0.5 * hi;
  return std::clamp(m, lo, hi);
}

Interval pi() {
  // M_PI is the double nearest to pi, which is below pi.
  constexpr double p = 3.141592653589793115997963468544185161590576171875;
  return {p, next_up(p)};
}

Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Interval operator+(const Interval& a, const Interval& b) { return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)}; }

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
  const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval scale(double c, const Interval& a) { return Interval::point(c) * a; }

Interval pow(const Interval& a, unsigned n) {
  if (n == 0) return Interval::point(1.0);
  if (n == 1) return a;
  if (n % 2 == 0) {
    const double m = a.contains_zero() ? 0.0 : std::min(std::fabs(a.lo), std::fabs(a.hi));
    const double big = std::max(std::fabs(a.lo), std::fabs(a.hi));
    return {pow_down(m, n), pow_up(big, n)};
  }
  const double lo = a.lo >= 0 ? pow_down(a.lo, n) : -pow_up(-a.lo, n);
  const double hi = a.hi >= 0 ? pow_up(a.hi, n) : -pow_down(-a.hi, n);
  return {lo, hi};
}

Interval exp(const Interval& a) {
  const double lo = std::max(0.0, widen_down(std::exp(a.lo), kTranscendentalUlps));
  const double hi = widen_up(std::exp(a.hi), kTranscendentalUlps);
  return {lo, hi};
}

Interval sin(const Interval& a) {
  const Interval p = pi();
  const Interval two_pi{2 * p.lo, 2 * p.hi};
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.hi - a.lo >= 6.0) return {-1.0, 1.0};
  const Interval half_pi{0.5 * p.lo, 0.5 * p.hi};
  const bool has_max = may_contain_lattice_point(a.lo, a.hi, half_pi, two_pi);
  const bool has_min = may_contain_lattice_point(a.lo, a.hi, -half_pi, two_pi);
  const double sa = std::sin(a.lo);
  const double sb = std::sin(a.hi);
  Interval r;
  r.lo = has_min ? -1.0 : widen_down(std::min(sa, sb), kTranscendentalUlps);
  r.hi = has_max ? 1.0 : widen_up(std::max(sa, sb), kTranscendentalUlps);
  return clamp_unit(r);
}

Interval cos(const Interval& a) {
  const Interval p = pi();
  const Interval two_pi{2 * p.lo, 2 * p.hi};
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.hi - a.lo >= 6.0) return {-1.0, 1.0};
  const bool has_max = may_contain_lattice_point(a.lo, a.hi, Interval::point(0.0), two_pi);
  const bool has_min = may_contain_lattice_point(a.lo, a.hi, p, two_pi);
  const double ca = std::cos(a.lo);
  const double cb = std::cos(a.hi);
  Interval r;
  r.lo = has_min ? -1.0 : widen_down(std::min(ca, cb), kTranscendentalUlps);
  r.hi = has_max ? 1.0 : widen_up(std::max(ca, cb), kTranscendentalUlps);
  return clamp_unit(r);
}

Interval tan(const Interval& a) {
  const Interval p = pi();
  if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.hi - a.lo >= 3.0) return Interval::whole();
  const Interval half_pi{0.5 * p.lo, 0.5 * p.hi};
  if (may_contain_lattice_point(a.lo, a.hi, half_pi, p)) return Interval::whole();
  return {widen_down(std::tan(a.lo), kTranscendentalUlps), widen_up(std::tan(a.hi), kTranscendentalUlps)};
}

Interval from_rational(const Rational& v) {
  const double d = static_cast<double>(v);
  if (std::isinf(d) || std::isnan(d)) return v > 0 ? Interval{kMax, kInf} : Interval{-kInf, -kMax};
  double lo = d;
  double hi = d;
  while (std::isfinite(lo) && rational_from_double(lo) > v) lo = next_down(lo);
  while (std::isfinite(hi) && rational_from_double(hi) < v) hi = next_up(hi);
  return {lo, hi};
}

// ------------------------------------------------------------- boxes

NamedBox::NamedBox(std::vector<std::string> names, std::vector<Interval> intervals)
    : names_(std::move(names)), intervals_(std::move(intervals)) {
  if (names_.size() != intervals_.size()) throw std::invalid_argument("NamedBox: names and intervals differ in size");
  for (const auto& i : intervals_)
    if (std::isnan(i.lo) || std::isnan(i.hi) || i.lo > i.hi) throw std::invalid_argument("NamedBox: malformed interval");
}

std::optional<std::size_t> NamedBox::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

const Interval& NamedBox::at(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw std::out_of_range("NamedBox: no variable '" + name + "'");
  return intervals_[*i];
}

bool NamedBox::contains(std::span<const double> point) const {
  if (point.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!intervals_[i].contains(point[i])) return false;
  return true;
}

bool NamedBox::subset_of(const NamedBox& other) const {
  if (names_ != other.names_) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!intervals_[i].subset_of(other.intervals_[i])) return false;
  return true;
}

Interval eval_interval(const Term& f, const NamedBox& box) {
  Tape tape(f, box.names());
  return tape.eval(box.intervals());
}

std::optional<NamedBox> union_is_box(std::span<const NamedBox> boxes) {
  if (boxes.empty()) return std::nullopt;
  const auto& names = boxes[0].names();
  for (const auto& b : boxes)
    if (b.names() != names) throw std::invalid_argument("union_is_box: boxes over different variables");
  const std::size_t n = names.size();
  std::vector<Interval> h = boxes[0].intervals();
  for (const auto& b : boxes)
    for (std::size_t i = 0; i < n; ++i) h[i] = hull(h[i], b[i]);
  NamedBox result(names, h);
  if (boxes.size() == 1) return result;

  // Elementary cells of the grid spanned by all endpoints; the union is the
  // hull iff every cell lies inside some box.
  std::vector<std::vector<Interval>> cells(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> ends;
    for (const auto& b : boxes) {
      ends.push_back(b[i].lo);
      ends.push_back(b[i].hi);
    }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    if (ends.size() == 1) cells[i].push_back(Interval::point(ends[0]));
    for (std::size_t j = 0; j + 1 < ends.size(); ++j) cells[i].push_back({ends[j], ends[j + 1]});
    total *= cells[i].size();
    if (total > 4'000'000) throw std::length_error("union_is_box: too many grid cells");
  }
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t count = 0; count < total; ++count) {
    bool covered = false;
    for (const auto& b : boxes) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) inside = cells[i][idx[i]].subset_of(b[i]);
      if (inside) {
        covered = true;
        break;
      }
    }
    if (!covered) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      if (++idx[i] < cells[i].size()) break;
      idx[i] = 0;
    }
  }
  return result;
}

std::vector<Face> boundary_faces(const NamedBox& box) {
  std::vector<Face> faces;
  for (std::size_t i = 0; i < box.dim(); ++i) {
    for (Side side : {Side::Lo, Side::Hi}) {
      NamedBox f = box;
      const double v = side == Side::Lo ? box[i].lo : box[i].hi;
      f[i] = Interval::point(v);
      faces.push_back({std::move(f), box.names()[i], side});
    }
  }
  return faces;
}

std::string format_hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double parse_hex(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty float literal");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw std::invalid_argument("malformed float literal '" + s + "'");
  if (std::isnan(v)) throw std::invalid_argument("NaN float literal");
  return v;
}

}  // namespace ntacert::ia
