#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include "ntacert/search.hpp"

namespace ntacert::search {

namespace {

using Clock = std::chrono::steady_clock;

class Search {
 public:
  Search(const Formula& phi, const SearchConfig& cfg) : phi_(phi), cfg_(cfg), start_(Clock::now()) {
    if (cfg.timeout_ms > 0)
      deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(cfg.timeout_ms));
  }

  SearchOutcome run() {
    SearchOutcome out;
    // Clause i of the searched formula picks literal map[i][j] of phi.
    std::vector<std::vector<std::size_t>> identity;
    bool all_unit = true;
    for (const auto& c : phi_.clauses) {
      std::vector<std::size_t> m(c.literals.size());
      for (std::size_t j = 0; j < m.size(); ++j) m[j] = j;
      identity.push_back(std::move(m));
      all_unit = all_unit && c.literals.size() == 1;
    }
    bool any_nonempty = false;
    std::optional<cert::Certificate> found = search(phi_, identity, any_nonempty);
    if (!found && !any_nonempty && !all_unit && !expired()) {
      stats_.dnf_restart = true;
      DnfEnumerator dnf(phi_, cfg_.dnf_cap);
      while (!found && !expired()) {
        auto term = dnf.next();
        if (!term) break;
        ++stats_.dnf_conjuncts;
        std::vector<std::vector<std::size_t>> map;
        for (std::size_t s : term->selection) map.push_back({s});
        bool unused = false;
        found = search(term->conjunction, map, unused);
      }
    }
    stats_.timed_out = expired();
    stats_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    out.stats = stats_;
    if (found) {
      out.result = Result::Sat;
      out.certificate = std::move(found);
    }
    return out;
  }

 private:
  bool expired() const { return deadline_ && Clock::now() >= *deadline_; }

  std::optional<cert::Certificate> search(const Formula& s, const std::vector<std::vector<std::size_t>>& map,
                                          bool& any_nonempty) {
    if (expired()) return std::nullopt;
    std::vector<std::vector<double>> points;
    if (s.vars.empty()) {
      points.emplace_back();
    } else {
      for (auto& m : children_points(s, cfg_)) points.push_back(std::move(m.point));
    }
    for (const auto& p : points) {
      if (expired()) return std::nullopt;
      ++stats_.points;
      const LiteralChildren lc = literal_children(s, p, cfg_);
      any_nonempty = any_nonempty || lc.all_nonempty;
      if (lc.forced_inconsistent) ++stats_.forced_prunes;
      for (const auto& sigma : lc.selectors) {
        if (expired()) return std::nullopt;
        ++stats_.selectors;
        for (const auto& nu : children_instantiations(s, p, sigma, cfg_)) {
          if (expired()) return std::nullopt;
          ++stats_.instantiations;
          if (auto c = boxes(s, map, p, sigma, nu)) return c;
        }
        if (auto c = snapped(s, map, p, sigma)) return c;
      }
    }
    return std::nullopt;
  }

  std::optional<cert::Certificate> boxes(const Formula& s, const std::vector<std::vector<std::size_t>>& map,
                                         const std::vector<double>& p, const LiteralSelector& sigma,
                                         const PartialAssignment& nu) {
    const cert::PreparedSystem sys = cert::prepare_system(s, sigma, nu);
    if (sys.equations.size() != sys.domain.size()) return std::nullopt;
    for (const auto& g : sys.ground_equations)
      if (!cert::ground_equation_holds(g)) return std::nullopt;
    std::vector<double> center;
    for (const auto& v : sys.domain) center.push_back(p[s.var_index(v)]);

    ++stats_.box_searches;
    std::optional<BoxEvidence> ev;
    if (cfg_.boxes != BoxStrategy::Grid) {
      ev = box_search_eps_inflation(sys.equations, sys.inequalities, sys.domain, center, cfg_, nullptr, deadline_);
      if (ev) stats_.degree_queries += ev->degree_queries;
    }
    if (!ev && cfg_.boxes != BoxStrategy::Eps && !sys.domain.empty()) {
      std::vector<ia::Interval> ivs;
      for (double c : center) ivs.push_back({c - cfg_.grid_start_side / 2, c + cfg_.grid_start_side / 2});
      ev = box_search_gridding(sys.equations, sys.inequalities, ia::NamedBox(sys.domain, ivs), cfg_, deadline_);
      if (ev) stats_.degree_queries += ev->degree_queries;
    }
    if (!ev) return std::nullopt;

    cert::Certificate c;
    for (std::size_t i = 0; i < sigma.size(); ++i) c.sigma.push_back(map[i][sigma[i]]);
    c.nu = nu;
    for (const auto& v : phi_.vars)
      if (!s.has_var(v)) c.nu[v] = 0.0;
    c.beta = ev->beta;
    c.formula_digest = cert::formula_digest(phi_);
    cert::CheckOptions co;
    co.degree_budget = cfg_.degree_budget;
    if (!cert::check_certificate(phi_, c, co).valid()) {
      ++stats_.self_check_failures;
      return std::nullopt;
    }
    return c;
  }

  // Full instantiation at p rounded to fewer and fewer significant digits.
  std::optional<cert::Certificate> snapped(const Formula& s, const std::vector<std::vector<std::size_t>>& map,
                                           const std::vector<double>& p, const LiteralSelector& sigma) {
    if (s.vars.empty()) return std::nullopt;
    std::vector<std::vector<double>> tried;
    for (int digits = 17; digits >= 1 && !expired(); --digits) {
      std::vector<double> q(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, p[i]);
        q[i] = std::strtod(buf, nullptr);
      }
      if (std::find(tried.begin(), tried.end(), q) != tried.end()) continue;
      tried.push_back(q);
      PartialAssignment nu;
      for (std::size_t i = 0; i < s.vars.size(); ++i) nu[s.vars[i]] = q[i];
      ++stats_.instantiations;
      if (auto c = boxes(s, map, q, sigma, nu)) return c;
    }
    return std::nullopt;
  }

  const Formula& phi_;
  const SearchConfig& cfg_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  SearchStats stats_;
};

}  // namespace

SearchOutcome solve(const Formula& formula, const SearchConfig& config) {
  const Formula phi = normalize(formula);
  return Search(phi, config).run();
}

}  // namespace ntacert::search
