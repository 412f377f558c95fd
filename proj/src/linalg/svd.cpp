#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ntacert/linalg.hpp"

namespace ntacert::linalg {

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::finite() const {
  return std::all_of(data.begin(), data.end(), [](double x) { return std::isfinite(x); });
}

Svd svd(const Matrix& a) {
  if (!a.finite()) throw std::domain_error("svd: non-finite matrix entry");
  const std::size_t m = a.rows, n = a.cols;
  // Work on columns: u[j] is column j of the rotated A.
  std::vector<std::vector<double>> u(n, std::vector<double>(m));
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) u[j][i] = a(i, j);
    v[j][j] = 1.0;
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += u[p][i] * u[p][i];
          beta += u[q][i] * u[q][i];
          gamma += u[p][i] * u[q][i];
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::fabs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double up = u[p][i], uq = u[q][i];
          u[p][i] = c * up - s * uq;
          u[q][i] = s * up + c * uq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v[p][i], vq = v[q][i];
          v[p][i] = c * vp - s * vq;
          v[q][i] = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (double x : u[j]) s += x * x;
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
  Svd out;
  out.v = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.singular_values.push_back(sigma[order[k]]);
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v[order[k]][i];
  }
  return out;
}

double rank_threshold(const Matrix& a, const Svd& s) {
  const double smax = s.singular_values.empty() ? 0.0 : s.singular_values.front();
  return smax * static_cast<double>(std::max(a.rows, a.cols)) * std::numeric_limits<double>::epsilon();
}

RankResult rank_with_threshold(const Matrix& a) {
  RankResult r;
  if (a.rows == 0 || a.cols == 0) {
    if (!a.finite()) throw std::domain_error("rank: non-finite matrix entry");
    r.robust = true;
    return r;
  }
  // The Jacobi iteration orthogonalizes columns; use the shorter side.
  const Svd s = a.rows >= a.cols ? svd(a) : svd(a.transpose());
  const double th = rank_threshold(a, s);
  for (double sv : s.singular_values) r.rank += sv > th;
  r.robust = r.rank == std::min(a.rows, a.cols);
  return r;
}

std::vector<std::vector<double>> null_space(const Matrix& a) {
  std::vector<std::vector<double>> basis;
  if (a.cols == 0) return basis;
  const Svd s = svd(a);
  const double th = rank_threshold(a, s);
  for (std::size_t k = 0; k < a.cols; ++k) {
    if (a.rows != 0 && s.singular_values[k] > th) continue;
    std::vector<double> col(a.cols);
    for (std::size_t i = 0; i < a.cols; ++i) col[i] = s.v(i, k);
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace ntacert::linalg
