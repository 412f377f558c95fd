#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "ntacert/interval.hpp"

namespace ntacert::ia {

namespace {

class Compiler {
 public:
  Compiler(const std::vector<std::string>& slots, std::vector<Tape::Instr>& code) : code_(code) {
    for (std::size_t i = 0; i < slots.size(); ++i) slot_of_.emplace(slots[i], i);
  }

  std::size_t emit(const Term& t) {
    if (auto it = memo_.find(t.node()); it != memo_.end()) return it->second;
    Tape::Instr in{t.op()};
    switch (t.op()) {
      case Op::Var: {
        auto it = slot_of_.find(t.name());
        if (it == slot_of_.end()) throw std::invalid_argument("variable '" + t.name() + "' is not in the box");
        in.slot = it->second;
        break;
      }
      case Op::Const:
        in.constant = from_rational(t.value());
        in.constant_value = static_cast<double>(t.value());
        break;
      case Op::Add:
      case Op::Mul:
        in.a = emit(t.first());
        in.b = emit(t.second());
        break;
      case Op::Pow:
        in.a = emit(t.first());
        in.exponent = t.exponent();
        break;
      default: in.a = emit(t.first());
    }
    code_.push_back(in);
    const std::size_t id = code_.size() - 1;
    memo_.emplace(t.node(), id);
    return id;
  }

 private:
  std::vector<Tape::Instr>& code_;
  std::unordered_map<std::string, std::size_t> slot_of_;
  std::unordered_map<const Term::Node*, std::size_t> memo_;
};

double ipow(double x, unsigned n) {
  double result = 1.0;
  while (n) {
    if (n & 1u) result *= x;
    n >>= 1u;
    if (n) x *= x;
  }
  return result;
}

}  // namespace

Tape::Tape(const Term& term, const std::vector<std::string>& slots) : num_slots_(slots.size()) {
  Compiler c(slots, code_);
  c.emit(term);
}

Interval Tape::eval(std::span<const Interval> box) const {
  if (box.size() < num_slots_) throw std::invalid_argument("Tape::eval: box too small");
  std::vector<Interval> r(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Var: r[i] = box[in.slot]; break;
      case Op::Const: r[i] = in.constant; break;
      case Op::Add: r[i] = r[in.a] + r[in.b]; break;
      case Op::Mul: r[i] = in.a == in.b ? pow(r[in.a], 2) : r[in.a] * r[in.b]; break;
      case Op::Neg: r[i] = -r[in.a]; break;
      case Op::Pow: r[i] = pow(r[in.a], in.exponent); break;
      case Op::Sin: r[i] = sin(r[in.a]); break;
      case Op::Cos: r[i] = cos(r[in.a]); break;
      case Op::Tan: r[i] = tan(r[in.a]); break;
      case Op::Exp: r[i] = exp(r[in.a]); break;
    }
  }
  return r.back();
}

double Tape::eval(std::span<const double> point) const {
  if (point.size() < num_slots_) throw std::invalid_argument("Tape::eval: point too small");
  std::vector<double> r(code_.size());
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    switch (in.op) {
      case Op::Var: r[i] = point[in.slot]; break;
      case Op::Const: r[i] = in.constant_value; break;
      case Op::Add: r[i] = r[in.a] + r[in.b]; break;
      case Op::Mul: r[i] = r[in.a] * r[in.b]; break;
      case Op::Neg: r[i] = -r[in.a]; break;
      case Op::Pow: r[i] = ipow(r[in.a], in.exponent); break;
      case Op::Sin: r[i] = std::sin(r[in.a]); break;
      case Op::Cos: r[i] = std::cos(r[in.a]); break;
      case Op::Tan: r[i] = std::tan(r[in.a]); break;
      case Op::Exp: r[i] = std::exp(r[in.a]); break;
    }
  }
  return r.back();
}

double Tape::eval_gradient(std::span<const double> point, std::span<double> gradient) const {
  // Forward mode: one tangent vector per register.
  const std::size_t n = num_slots_;
  if (point.size() < n || gradient.size() < n) throw std::invalid_argument("Tape::eval_gradient: size mismatch");
  std::vector<double> v(code_.size());
  std::vector<double> d(code_.size() * n, 0.0);
  auto tangent = [&](std::size_t reg) { return d.data() + reg * n; };
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const Instr& in = code_[i];
    double* di = tangent(i);
    switch (in.op) {
      case Op::Var:
        v[i] = point[in.slot];
        di[in.slot] = 1.0;
        break;
      case Op::Const: v[i] = in.constant_value; break;
      case Op::Add: {
        v[i] = v[in.a] + v[in.b];
        const double* da = tangent(in.a);
        const double* db = tangent(in.b);
        for (std::size_t k = 0; k < n; ++k) di[k] = da[k] + db[k];
        break;
      }
      case Op::Mul: {
        const double a = v[in.a], b = v[in.b];
        v[i] = a * b;
        const double* da = tangent(in.a);
        const double* db = tangent(in.b);
        for (std::size_t k = 0; k < n; ++k) di[k] = a * db[k] + b * da[k];
        break;
      }
      case Op::Neg: {
        v[i] = -v[in.a];
        const double* da = tangent(in.a);
        for (std::size_t k = 0; k < n; ++k) di[k] = -da[k];
        break;
      }
      default: {
        const double a = v[in.a];
        double value = 0.0;
        double slope = 0.0;
        switch (in.op) {
          case Op::Pow:
            value = ipow(a, in.exponent);
            slope = in.exponent == 0 ? 0.0 : in.exponent * ipow(a, in.exponent - 1);
            break;
          case Op::Sin:
            value = std::sin(a);
            slope = std::cos(a);
            break;
          case Op::Cos:
            value = std::cos(a);
            slope = -std::sin(a);
            break;
          case Op::Tan:
            value = std::tan(a);
            slope = 1.0 + value * value;
            break;
          case Op::Exp:
            value = std::exp(a);
            slope = value;
            break;
          default: break;
        }
        v[i] = value;
        const double* da = tangent(in.a);
        for (std::size_t k = 0; k < n; ++k) di[k] = slope * da[k];
      }
    }
  }
  const double* dl = tangent(code_.size() - 1);
  std::copy(dl, dl + n, gradient.begin());
  return v.back();
}

}  // namespace ntacert::ia
