#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/metrics.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

const double kSquarePP = std::numbers::pi / 4.0;
const double kHexPP = std::numbers::pi * std::sqrt(3.0) / 6.0;

std::vector<CellId> ids(std::initializer_list<int> raw) {
  std::vector<CellId> out;
  for (int r : raw) out.push_back(cell_id(r));
  return out;
}

// Perimeter from polygon geometry: a side counts unless another cell of the
// region has the same side.
double boundary_walk_perimeter(const HostGrid& g, const std::vector<CellId>& cells) {
  const int sides = g.kind() == GridKind::Hex ? 6 : 4;
  const double start = g.kind() == GridKind::Hex ? 30.0 : 45.0;
  const double radius = g.kind() == GridKind::Hex ? 1.0 : std::sqrt(0.5);
  using Key = std::pair<long long, long long>;
  std::map<std::pair<Key, Key>, int> seen;
  for (auto c : cells) {
    const auto p = g.cell(g.index_of(c)).center;
    std::vector<Key> v;
    for (int k = 0; k < sides; ++k) {
      const double a = (start + 360.0 * k / sides) * std::numbers::pi / 180.0;
      v.push_back({std::llround((p.x + radius * std::cos(a)) * 1e6),
                   std::llround((p.y + radius * std::sin(a)) * 1e6)});
    }
    for (int k = 0; k < sides; ++k) {
      auto a = v[k];
      auto b = v[(k + 1) % sides];
      if (b < a) std::swap(a, b);
      ++seen[{a, b}];
    }
  }
  double total = 0.0;
  for (const auto& [side, count] : seen) total += count == 1 ? 1.0 : 0.0;
  return total;
}

}  // namespace

TEST_CASE("single cells and blocks") {
  const HostGrid sq(GridKind::Square, 3, 3);
  const auto one = region_geometry(sq, ids({0}));
  CHECK(one.area == 1.0);
  CHECK(one.perimeter == 4.0);
  CHECK(polsby_popper(one) == doctest::Approx(kSquarePP).epsilon(1e-12));

  const auto block = region_geometry(sq, ids({0, 1, 3, 4}));
  CHECK(block.area == 4.0);
  CHECK(block.perimeter == 8.0);
  CHECK(polsby_popper(block) == doctest::Approx(kSquarePP).epsilon(1e-12));

  const HostGrid hex(GridKind::Hex, 2, 2);
  const auto h = region_geometry(hex, ids({0}));
  CHECK(h.area == doctest::Approx(1.5 * std::sqrt(3.0)));
  CHECK(h.perimeter == 6.0);
  CHECK(polsby_popper(h) == doctest::Approx(kHexPP).epsilon(1e-12));
  CHECK_THROWS_AS(polsby_popper(region_geometry(sq, {})), Error);
}

TEST_CASE("perimeter identity agrees with a boundary walk") {
  std::mt19937_64 rng(7);
  for (auto kind : {GridKind::Square, GridKind::Hex}) {
    const HostGrid g(kind, 4, 4);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<CellId> cells;
      for (const auto& c : g.cells()) {
        if (rng() % 2) cells.push_back(c.id);
      }
      if (cells.empty()) continue;
      const auto geom = region_geometry(g, cells);
      CHECK(geom.perimeter == doctest::Approx(boundary_walk_perimeter(g, cells)));
      CHECK(geom.component_count == static_cast<int>(components(g, cells).size()));
      const double pp = polsby_popper(geom);
      CHECK(pp > 0.0);
      CHECK(pp <= (kind == GridKind::Hex ? kHexPP : kSquarePP) + 1e-12);
    }
  }
}

TEST_CASE("holes count toward the perimeter") {
  const HostGrid sq(GridKind::Square, 3, 3);
  const auto ring = region_geometry(sq, ids({0, 1, 2, 3, 5, 6, 7, 8}));
  CHECK(ring.perimeter == 16.0);
  CHECK(ring.component_count == 1);
}

TEST_CASE("merging cells raises the score at fixed area") {
  const HostGrid sq(GridKind::Square, 3, 3);
  // Same four cells' area, one more internal edge.
  const auto line = region_geometry(sq, ids({0, 1, 2, 5}));
  const auto block = region_geometry(sq, ids({0, 1, 3, 4}));
  CHECK(polsby_popper(block) > polsby_popper(line));
}

TEST_CASE("contiguity checks") {
  const HostGrid sq(GridKind::Square, 2, 2);
  CHECK(is_contiguous(sq, ids({0})));
  CHECK_FALSE(is_contiguous(sq, ids({0, 3})));
  CHECK(is_contiguous(sq, ids({0, 1, 3})));
  // In the hex rhombus, (0,1) and (1,0) are neighbors.
  const HostGrid hex(GridKind::Hex, 2, 2);
  CHECK(is_contiguous(hex, ids({1, 2})));
}

TEST_CASE("aggregate scores") {
  SUBCASE("single hexagon") {
    const auto sys = make_system({{"S", {"a"}}});
    Embedding e;
    e.assignment["a"] = cell_id(0);
    const auto s = pp_scores(e, sys, HostGrid(GridKind::Hex, 2, 2));
    CHECK(s.pp_c1 == doctest::Approx(kHexPP));
    CHECK(s.pp_c2 == doctest::Approx(kHexPP));
    CHECK(s.pp_c3 == doctest::Approx(kHexPP));
  }
  SUBCASE("two adjacent 2x2 blocks") {
    const auto sys = make_system({{"L", {"a", "b", "c", "d"}}, {"R", {"e", "f", "g", "h"}}});
    const HostGrid g(GridKind::Square, 2, 4);
    Embedding e;
    const char* left[] = {"a", "b", "c", "d"};
    const int left_cells[] = {0, 1, 4, 5};
    const char* right[] = {"e", "f", "g", "h"};
    const int right_cells[] = {2, 3, 6, 7};
    for (int i = 0; i < 4; ++i) {
      e.assignment[left[i]] = cell_id(left_cells[i]);
      e.assignment[right[i]] = cell_id(right_cells[i]);
    }
    const auto s = pp_scores(e, sys, g);
    CHECK(s.pp_c3 == doctest::Approx(kSquarePP));
    CHECK(s.pp_c1 == doctest::Approx(4.0 * std::numbers::pi * 8.0 / 144.0));
    CHECK(s.pp_c2 == doctest::Approx(kSquarePP));
  }
  SUBCASE("overlay scores enter C2 only") {
    const auto sys = make_system({{"B", {"a", "b"}}}, {{"P", {"a"}}});
    const HostGrid g(GridKind::Square, 1, 2);
    Embedding e;
    e.assignment["a"] = cell_id(0);
    e.assignment["b"] = cell_id(1);
    const auto s = pp_scores(e, sys, g);
    const double bar = 4.0 * std::numbers::pi * 2.0 / 36.0;
    CHECK(s.pp_c3 == doctest::Approx(bar));
    CHECK(s.pp_c2 == doctest::Approx((bar + kSquarePP) / 2.0));
  }
}

TEST_CASE("contiguity violations only for sets with flows") {
  const auto sys = make_system({{"B", {"a", "b"}}}, {{"P", {"a", "b"}}});
  const HostGrid g(GridKind::Square, 2, 2);
  Embedding e;
  e.assignment["a"] = cell_id(0);
  e.assignment["b"] = cell_id(3);
  e.flows["B"] = {};
  CHECK(contiguity_violations(e, sys, g) == std::vector<std::string>{"B"});
  e.flows.erase("B");
  CHECK(contiguity_violations(e, sys, g).empty());
}
