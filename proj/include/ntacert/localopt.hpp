#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ntacert/l2o.hpp"

namespace ntacert::localopt {

struct Bound {
  double lo = -10.0;
  double hi = 10.0;
};

struct DescentOptions {
  std::size_t max_steps = 500;
  double armijo = 1e-4;
  double min_step = 1e-12;
  double gradient_tol = 1e-9;
};

struct DescentResult {
  std::vector<double> point;
  double value = 0.0;
  std::size_t steps = 0;
};

/// Gradient descent with Armijo backtracking (halving from t = 1).
DescentResult local_descent(const l2o::Objective& h, std::vector<double> start, const DescentOptions& options = {});

struct BasinHoppingOptions {
  std::size_t k = 100;
  std::uint64_t seed = 0;
  /// Total descent steps over all rounds.
  std::size_t budget = 2'000'000;
  std::size_t hops_per_round = 4;
  double temperature = 1.0;
  double initial_step = 0.5;
  double dedup_distance = 1e-9;
  /// Per-variable start range; empty means [-10, 10] everywhere.
  std::vector<Bound> start_box;
  DescentOptions descent;
};

struct MinimumPoint {
  std::vector<double> point;
  double value = 0.0;
  double start_value = 0.0;  // objective at the descent's starting point
  std::size_t round = 0;
};

struct MinimizerResult {
  std::vector<MinimumPoint> points;  // ascending by value
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
};

MinimizerResult basin_hopping(const l2o::Objective& h, const BasinHoppingOptions& options);

/// Start box from unit clauses of the form x - c <= 0 or c - x <= 0 (and
/// strict variants); other variables get [-10, 10].
std::vector<Bound> start_box_from_formula(const Formula& formula, const std::vector<std::string>& vars);

}  // namespace ntacert::localopt
