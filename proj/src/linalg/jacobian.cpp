#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ntacert/interval.hpp"
#include "ntacert/linalg.hpp"

namespace ntacert::linalg {

bool JacobianAt::all_finite() const {
  return std::all_of(row_finite.begin(), row_finite.end(), [](bool b) { return b; });
}

Matrix JacobianAt::restrict(const std::vector<std::size_t>& columns) const {
  std::size_t rows = 0;
  for (bool f : row_finite) rows += f;
  Matrix m(rows, columns.size());
  std::size_t r = 0;
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    if (!row_finite[i]) continue;
    for (std::size_t k = 0; k < columns.size(); ++k) m(r, k) = matrix(i, columns[k]);
    ++r;
  }
  return m;
}

JacobianAt jacobian_at(const std::vector<Term>& equations, const std::vector<std::string>& vars,
                       std::span<const double> point) {
  if (point.size() != vars.size()) throw std::invalid_argument("jacobian_at: point does not match variables");
  JacobianAt j;
  j.matrix = Matrix(equations.size(), vars.size());
  j.point.assign(point.begin(), point.end());
  j.vars = vars;
  j.row_finite.assign(equations.size(), true);
  std::vector<double> g(vars.size());
  for (std::size_t i = 0; i < equations.size(); ++i) {
    const ia::Tape tape(equations[i], vars);
    const double value = tape.eval_gradient(point, g);
    bool ok = std::isfinite(value);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      ok = ok && std::isfinite(g[k]);
      j.matrix(i, k) = g[k];
    }
    j.row_finite[i] = ok;
  }
  return j;
}

}  // namespace ntacert::linalg
