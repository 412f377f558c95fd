#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntacert/formula.hpp"
#include "ntacert/structure.hpp"

namespace ntacert::linalg {

/// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  Matrix transpose() const;
  bool finite() const;
};

struct Svd {
  std::vector<double> singular_values;  // descending, one per column
  Matrix v;                             // cols x cols, column k pairs with singular_values[k]
};

/// One-sided Jacobi SVD.  Throws std::domain_error on non-finite entries.
Svd svd(const Matrix& a);

/// sigma_max * max(rows, cols) * machine epsilon.
double rank_threshold(const Matrix& a, const Svd& s);

struct RankResult {
  std::size_t rank = 0;
  bool robust = false;  // rank == min(rows, cols)
};

RankResult rank_with_threshold(const Matrix& a);

/// Right singular vectors whose singular value is at most the threshold.
std::vector<std::vector<double>> null_space(const Matrix& a);

struct JacobianAt {
  Matrix matrix;                   // equations x vars
  std::vector<double> point;
  std::vector<std::string> vars;
  std::vector<bool> row_finite;

  bool all_finite() const;
  /// Rows that are finite, restricted to the given columns.
  Matrix restrict(const std::vector<std::size_t>& columns) const;
};

JacobianAt jacobian_at(const std::vector<Term>& equations, const std::vector<std::string>& vars,
                       std::span<const double> point);

/// Null-space weight of every column of J (finite rows only).
std::vector<double> kearfott_weights(const JacobianAt& j);

/// Variables of `under` sorted by decreasing null-space weight, ties by
/// position in J's variable order.  Empty when the null space is trivial.
std::vector<std::string> kearfott_order(const JacobianAt& j, const std::vector<std::string>& under);

struct InstantiationCandidate {
  std::vector<std::string> vars;  // in global order
  double score = 0.0;
};

struct CandidateOptions {
  bool kearfott_ordering = false;
  bool filter_overconstr_v = false;
  bool filter_rank_deficient = false;
  std::size_t cap = 64;
  std::size_t max_examined = 20000;
};

/// Size-(|vars| - |equations|) subsets of the under-constrained variables.
std::vector<InstantiationCandidate> instantiation_candidates(const std::vector<Term>& equations,
                                                             const std::vector<std::string>& vars,
                                                             const JacobianAt& j, const CandidateOptions& options);

/// The square system left after instantiating `instantiated` is
/// well-constrained.
bool well_constrained_after(const std::vector<Term>& equations, const std::vector<std::string>& vars,
                            const std::vector<std::string>& instantiated);
/// The Jacobian columns of the remaining variables form a full-rank square
/// matrix.
bool full_rank_after(const JacobianAt& j, const std::vector<std::string>& instantiated);

}  // namespace ntacert::linalg
