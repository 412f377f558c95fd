#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ntacert/certificate.hpp"
#include "ntacert/formula.hpp"
#include "ntacert/interval.hpp"
#include "ntacert/l2o.hpp"
#include "ntacert/localopt.hpp"

namespace ntacert::search {

enum class BoxStrategy { Eps, Grid, EpsThenGrid };

const char* box_strategy_name(BoxStrategy s);

struct SearchConfig {
  bool sort_literals = false;
  bool check_forced_literals = false;
  bool filter_overconstr = false;
  bool filter_overconstr_v = false;
  bool filter_rank_deficient = false;
  bool kearfott_ordering = false;
  BoxStrategy boxes = BoxStrategy::EpsThenGrid;
  bool polish_points = true;  // Gauss-Newton on the best literals of each minimum

  double eps_lit = 1e-6;
  double eps_box = 1e-20;
  double eps_strict = 1e-20;
  std::size_t k = 100;
  std::size_t max_selectors = 64;
  std::size_t max_instantiations = 64;
  std::size_t eps_iterations = 67;
  double grid_start_side = 1.0;
  std::size_t grid_limit = 10000;
  std::size_t split_limit = 256;  // sub-boxes when refining for inequalities
  std::size_t degree_budget = topdeg::kDefaultBudget;
  std::size_t dnf_cap = 10000;
  std::size_t optimizer_budget = 2'000'000;
  double timeout_ms = 60000;  // <= 0: no limit
  std::uint64_t seed = 0;
};

struct SearchStats {
  std::size_t points = 0;
  std::size_t selectors = 0;
  std::size_t instantiations = 0;
  std::size_t box_searches = 0;
  std::size_t degree_queries = 0;
  std::size_t forced_prunes = 0;
  std::size_t self_check_failures = 0;
  std::size_t dnf_conjuncts = 0;
  bool dnf_restart = false;
  bool timed_out = false;
  double seconds = 0.0;
};

enum class Result { Sat, Unknown };

struct SearchOutcome {
  Result result = Result::Unknown;
  std::optional<cert::Certificate> certificate;
  SearchStats stats;
};

/// Depth-first search over (point, selector, instantiation, boxes).
SearchOutcome solve(const Formula& formula, const SearchConfig& config);

// ------------------------------------------------------------- levels

/// Gauss-Newton iterations on the equations among the currently best
/// literals; keeps only steps that lower H.
void polish_point(const Formula& formula, const l2o::Objective& h, localopt::MinimumPoint& m);

std::vector<localopt::MinimumPoint> children_points(const Formula& formula, const SearchConfig& config);

struct LiteralChildren {
  std::vector<LiteralSelector> selectors;
  bool all_nonempty = false;  // every L_C had a literal
  bool forced_inconsistent = false;
};

/// Selectors over the approximately satisfied literals at `point` (indexed
/// like formula.vars).
LiteralChildren literal_children(const Formula& formula, std::span<const double> point, const SearchConfig& config);

std::vector<LiteralSelector> children_literals(const Formula& formula, std::span<const double> point,
                                               const SearchConfig& config);

enum class Consistency { ConsistentUnknown, Inconsistent };

/// Symbolic check, sound only for Inconsistent.
Consistency forced_literal_consistency(const std::vector<Literal>& literals);

std::vector<PartialAssignment> children_instantiations(const Formula& formula, std::span<const double> point,
                                                       const LiteralSelector& selector, const SearchConfig& config);

// -------------------------------------------------------------- boxes

struct BoxEvidence {
  std::vector<ia::NamedBox> beta;
  int degree = 0;
  std::size_t iterations = 0;
  std::size_t degree_queries = 0;
};

/// Boxes of side 2^i eps_box centred on `center` (one value per domain var).
std::optional<BoxEvidence> box_search_eps_inflation(const std::vector<Term>& equations,
                                                    const std::vector<Inequality>& inequalities,
                                                    const std::vector<std::string>& domain,
                                                    std::span<const double> center, const SearchConfig& config,
                                                    std::size_t* iterations = nullptr,
                                                    std::optional<std::chrono::steady_clock::time_point> deadline = {});

/// Refinement of `start` into a grid of sub-boxes.
std::optional<BoxEvidence> box_search_gridding(const std::vector<Term>& equations,
                                               const std::vector<Inequality>& inequalities,
                                               const ia::NamedBox& start, const SearchConfig& config,
                                               std::optional<std::chrono::steady_clock::time_point> deadline = {});

}  // namespace ntacert::search
