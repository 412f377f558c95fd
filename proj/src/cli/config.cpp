#include "ntacert/cli.hpp"

namespace ntacert::cli {

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v{"1a", "1b", "1c"};
    for (int row = 2; row <= 7; ++row) {
      v.push_back(std::to_string(row) + "b");
      v.push_back(std::to_string(row) + "c");
    }
    return v;
  }();
  return ids;
}

std::optional<search::SearchConfig> preset(const std::string& id) {
  if (id.size() != 2 || id[0] < '1' || id[0] > '7') return std::nullopt;
  const int row = id[0] - '0';
  search::SearchConfig c;
  switch (id[1]) {
    case 'a':
      if (row != 1) return std::nullopt;
      c.boxes = search::BoxStrategy::Grid;
      break;
    case 'b': c.boxes = search::BoxStrategy::Eps; break;
    case 'c': c.boxes = search::BoxStrategy::EpsThenGrid; break;
    default: return std::nullopt;
  }
  // Each row adds one heuristic to the previous one.
  c.sort_literals = row >= 2;
  c.filter_overconstr = row >= 3;
  c.check_forced_literals = row >= 4;
  c.kearfott_ordering = row >= 5;
  c.filter_overconstr_v = row >= 6;
  c.filter_rank_deficient = row >= 7;
  return c;
}

std::optional<search::BoxStrategy> parse_box_strategy(const std::string& name) {
  if (name == "eps") return search::BoxStrategy::Eps;
  if (name == "grid") return search::BoxStrategy::Grid;
  if (name == "eps+grid") return search::BoxStrategy::EpsThenGrid;
  return std::nullopt;
}

}  // namespace ntacert::cli
