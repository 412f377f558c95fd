#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ntacert/search.hpp"

namespace ntacert::cli {

/// Exit codes shared by all commands.
inline constexpr int kExitSat = 0;
inline constexpr int kExitValid = 0;
inline constexpr int kExitUnknown = 1;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUndetermined = 3;

/// Configuration identifiers 1a, 1b, 1c, 2b, 2c, ..., 7b, 7c.
const std::vector<std::string>& preset_ids();
std::optional<search::SearchConfig> preset(const std::string& id);

std::optional<search::BoxStrategy> parse_box_strategy(const std::string& name);

struct SolveOptions {
  std::string input;
  std::optional<std::string> out;  // default: beside the input
  search::SearchConfig config;
  bool quiet_stats = false;
};

std::string default_certificate_path(const std::string& input);

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct CheckOptions {
  std::string formula;
  std::string certificate;
  std::size_t degree_budget = topdeg::kDefaultBudget;
};

int cmd_check(const CheckOptions& options, std::ostream& out, std::ostream& err);

struct RunRecord {
  std::string benchmark;
  std::string config;
  std::string verdict;  // sat, unknown, timeout, error
  double solve_seconds = 0;
  std::string certificate;
  std::string check_verdict;  // empty unless sat
  double check_seconds = 0;
  std::string message;
};

struct BenchOptions {
  std::string directory;
  std::vector<std::string> configs{"1a", "7b"};
  std::string output_dir = "bench-out";
  double timeout_ms = 60000;
  std::uint64_t seed = 0;
};

struct BenchSummary {
  std::vector<RunRecord> records;
  std::vector<std::pair<std::string, std::size_t>> solved;  // per config, in option order
  std::vector<double> ratios;  // check / solve time of each sat record
  double median_ratio = 0;
  double mean_ratio = 0;
  std::size_t validation_failures = 0;
};

BenchSummary run_bench(const BenchOptions& options, std::ostream& log);
/// Writes results.tsv and summary.json under output_dir; returns the exit code.
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ntacert::cli
