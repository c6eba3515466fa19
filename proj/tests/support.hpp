#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mosaic/grid.hpp"
#include "mosaic/setsystem.hpp"

namespace testing_support {

using SetSpec = std::pair<std::string, std::vector<std::string>>;

// Elements are created from the base sets in order; labels equal ids.
inline mosaic::SetSystem make_system(const std::vector<SetSpec>& base,
                                     const std::vector<SetSpec>& overlays = {}) {
  std::vector<mosaic::Element> elements;
  std::vector<mosaic::NamedSet> sets;
  for (const auto& [name, members] : base) {
    for (const auto& id : members) elements.push_back({id, id});
    sets.push_back({name, members, mosaic::SetKind::Base});
  }
  for (const auto& [name, members] : overlays) {
    sets.push_back({name, members, mosaic::SetKind::Overlay});
  }
  return mosaic::SetSystem(std::move(elements), std::move(sets));
}

// Seven 2-element sets sharing one hub element; each also has a private
// element. No grid cell has seven neighbors, so full contiguity fails.
inline mosaic::SetSystem seven_star() {
  std::vector<std::string> all{"hub"};
  std::vector<SetSpec> overlays;
  for (int i = 1; i <= 7; ++i) {
    const auto leaf = "leaf" + std::to_string(i);
    all.push_back(leaf);
    overlays.push_back({"star" + std::to_string(i), {"hub", leaf}});
  }
  return make_system({{"all", all}}, overlays);
}

// Number of grid edges with both ends in `cells` (cell indices).
inline int induced_edges(const mosaic::HostGrid& grid, const std::vector<std::size_t>& cells) {
  int count = 0;
  for (auto [a, b] : grid.edges()) {
    const bool has_a = std::find(cells.begin(), cells.end(), a) != cells.end();
    const bool has_b = std::find(cells.begin(), cells.end(), b) != cells.end();
    if (has_a && has_b) ++count;
  }
  return count;
}

struct RandomInstance {
  mosaic::SetSystem system;
  mosaic::GridKind kind = mosaic::GridKind::Square;
  int rows = 1;
  int cols = 1;
};

// Up to `max_elements` elements in 1-2 base sets with at most one overlay,
// on a grid of at most 3x3 cells.
inline RandomInstance random_instance(std::mt19937_64& rng, int max_elements = 6) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  RandomInstance inst;
  inst.kind = pick(0, 1) ? mosaic::GridKind::Hex : mosaic::GridKind::Square;
  inst.rows = pick(2, 3);
  inst.cols = pick(2, 3);
  const int cells = inst.rows * inst.cols;
  const int n = pick(1, std::min(max_elements, cells));
  const int n_base = n >= 2 ? pick(1, 2) : 1;
  const int split = n_base == 2 ? pick(1, n - 1) : n;

  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
  std::vector<SetSpec> base{{"B0", {ids.begin(), ids.begin() + split}}};
  if (n_base == 2) base.push_back({"B1", {ids.begin() + split, ids.end()}});

  std::vector<SetSpec> overlays;
  if (pick(0, 1) == 1) {
    std::vector<std::string> members;
    for (const auto& id : ids) {
      if (pick(0, 1) == 1) members.push_back(id);
    }
    if (members.empty()) members.push_back(ids[static_cast<std::size_t>(pick(0, n - 1))]);
    overlays.push_back({"O0", members});
  }
  inst.system = make_system(base, overlays);
  return inst;
}

}  // namespace testing_support
