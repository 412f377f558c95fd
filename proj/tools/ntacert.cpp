#include <iostream>

#include <CLI11.hpp>

#include "ntacert/cli.hpp"

using namespace ntacert;

int main(int argc, char** argv) {
  CLI::App app{"Certifying satisfiability for nonlinear real arithmetic with transcendental functions"};
  app.require_subcommand(1);

  cli::SolveOptions so;
  std::string config_id, boxes;
  bool sort = false, forced = false, over = false, over_v = false, rank = false, kearfott = false;
  std::optional<double> eps_lit, timeout_ms;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  auto* solve = app.add_subcommand("solve", "Search for a satisfiability certificate");
  solve->add_option("input", so.input, "SMT-LIB file")->required();
  solve->add_flag("--sort-literals", sort);
  solve->add_flag("--check-forced-literals", forced);
  solve->add_flag("--filter-overconstr", over);
  solve->add_flag("--filter-overconstr-v", over_v);
  solve->add_flag("--filter-rank-deficient", rank);
  solve->add_flag("--kearfott-ordering", kearfott);
  solve->add_option("--boxes", boxes, "eps, grid or eps+grid");
  solve->add_option("--eps-lit", eps_lit, "literal threshold");
  solve->add_option("--k", k, "number of local minima");
  solve->add_option("--seed", seed)->envname("NTACERT_SEED");
  solve->add_option("--timeout-ms", timeout_ms, "wall-clock limit, 0 for none");
  solve->add_option("--config", config_id, "preset 1a, 1b, 1c, 2b ... 7c");
  solve->add_option("--out", out_path, "certificate path");
  bool no_polish = false;
  solve->add_flag("--no-polish", no_polish, "skip Gauss-Newton polishing of the minima");
  solve->add_flag("--quiet", so.quiet_stats, "no statistics on stderr");

  cli::CheckOptions co;
  auto* check = app.add_subcommand("check", "Validate a certificate");
  check->add_option("formula", co.formula)->required();
  check->add_option("certificate", co.certificate)->required();
  check->add_option("--degree-budget", co.degree_budget, "sub-face budget of the degree computation");

  cli::BenchOptions bo;
  std::string configs;
  auto* bench = app.add_subcommand("bench", "Solve and re-check every file of a directory");
  bench->add_option("directory", bo.directory)->required();
  bench->add_option("--configs", configs, "comma-separated presets (default 1a,7b)");
  bench->add_option("--out-dir", bo.output_dir);
  bench->add_option("--timeout-ms", bo.timeout_ms);
  bench->add_option("--seed", bo.seed)->envname("NTACERT_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  if (*solve) {
    if (!config_id.empty()) {
      auto p = cli::preset(config_id);
      if (!p) {
        std::cerr << "error: unknown configuration '" << config_id << "'\n";
        return cli::kExitError;
      }
      so.config = *p;
    }
    auto& c = so.config;
    c.sort_literals |= sort;
    c.check_forced_literals |= forced;
    c.filter_overconstr |= over;
    c.filter_overconstr_v |= over_v;
    c.filter_rank_deficient |= rank;
    c.kearfott_ordering |= kearfott;
    if (!boxes.empty()) {
      auto b = cli::parse_box_strategy(boxes);
      if (!b) {
        std::cerr << "error: unknown box strategy '" << boxes << "'\n";
        return cli::kExitError;
      }
      c.boxes = *b;
    }
    if (eps_lit) {
      if (!(*eps_lit > 0)) {
        std::cerr << "error: --eps-lit must be positive\n";
        return cli::kExitError;
      }
      c.eps_lit = *eps_lit;
    }
    if (k) {
      if (*k == 0) {
        std::cerr << "error: --k must be at least 1\n";
        return cli::kExitError;
      }
      c.k = *k;
    }
    if (no_polish) c.polish_points = false;
    if (seed) c.seed = *seed;
    if (timeout_ms) c.timeout_ms = *timeout_ms;
    if (!out_path.empty()) so.out = out_path;
    return cli::cmd_solve(so, std::cout, std::cerr);
  }
  if (*check) return cli::cmd_check(co, std::cout, std::cerr);

  if (!configs.empty()) {
    bo.configs.clear();
    std::stringstream ss(configs);
    for (std::string id; std::getline(ss, id, ',');)
      if (!id.empty()) bo.configs.push_back(id);
  }
  for (const auto& id : bo.configs)
    if (!cli::preset(id)) {
      std::cerr << "error: unknown configuration '" << id << "'\n";
      return cli::kExitError;
    }
  return cli::cmd_bench(bo, std::cout, std::cerr);
}
