#include <cmath>
#include <set>

#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/grid.hpp"

using namespace mosaic;

namespace {

// Edges of a rows x cols hex rhombus from axial offsets, counted as
// unordered pairs of (row, col).
std::size_t hex_edges_by_enumeration(int rows, int cols) {
  const int dq[] = {1, 0, -1, -1, 0, 1};
  const int dr[] = {0, 1, 1, 0, -1, -1};
  std::set<std::pair<int, int>> pairs;
  for (int r = 0; r < rows; ++r) {
    for (int q = 0; q < cols; ++q) {
      for (int k = 0; k < 6; ++k) {
        const int r2 = r + dr[k];
        const int q2 = q + dq[k];
        if (r2 < 0 || r2 >= rows || q2 < 0 || q2 >= cols) continue;
        const int a = r * cols + q;
        const int b = r2 * cols + q2;
        pairs.insert({std::min(a, b), std::max(a, b)});
      }
    }
  }
  return pairs.size();
}

}  // namespace

TEST_CASE("grid sizing rule") {
  CHECK(grid_size_for(51) == std::pair{9, 9});
  CHECK(grid_size_for(71) == std::pair{10, 10});
  CHECK(grid_size_for(1) == std::pair{2, 2});
  CHECK(grid_size_for(64) == std::pair{9, 9});
  CHECK(grid_size_for(65) == std::pair{10, 10});
}

TEST_CASE("lattice construction") {
  const auto sq = build_grid(GridKind::Square, 2, 2);
  CHECK(sq.size() == 4);
  CHECK(sq.edges().size() == 4);

  const auto hex = build_grid(GridKind::Hex, 2, 2);
  CHECK(hex.size() == 4);
  CHECK(hex.edges().size() == hex_edges_by_enumeration(2, 2));
  CHECK(hex.edges().size() == 5);

  const auto path = build_grid(GridKind::Square, 1, 3);
  CHECK(path.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});

  for (auto kind : {GridKind::Square, GridKind::Hex}) {
    for (int r = 1; r <= 5; ++r) {
      for (int c = 1; c <= 5; ++c) {
        const HostGrid g(kind, r, c);
        const std::size_t limit = kind == GridKind::Hex ? 6 : 4;
        for (const auto& cell : g.cells()) {
          CHECK(cell.neighbors.size() <= limit);
          for (auto n : cell.neighbors) {
            CHECK(n != g.index_of(cell.id));
            const auto& back = g.cell(n).neighbors;
            CHECK(std::find(back.begin(), back.end(), g.index_of(cell.id)) != back.end());
          }
        }
        if (kind == GridKind::Hex) {
          CHECK(g.edges().size() == hex_edges_by_enumeration(r, c));
        } else {
          CHECK(g.edges().size() ==
                static_cast<std::size_t>(r * (c - 1) + c * (r - 1)));
        }
      }
    }
  }
}

TEST_CASE("adjacent cells are one unit apart in both kinds") {
  for (auto kind : {GridKind::Square, GridKind::Hex}) {
    const HostGrid g(kind, 4, 5);
    const double expected = kind == GridKind::Hex ? std::sqrt(3.0) : 1.0;
    for (auto [a, b] : g.edges()) {
      CHECK(distance(g.cell(a).center, g.cell(b).center) == doctest::Approx(expected));
    }
  }
  const HostGrid hex(GridKind::Hex, 1, 1);
  CHECK(hex.metrics().cell_area == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0));
  CHECK(hex.metrics().cell_perimeter == 6.0);
}

TEST_CASE("grid centroid") {
  CHECK(grid_centroid(HostGrid(GridKind::Square, 2, 2)) == Point2{0.5, 0.5});
  CHECK(grid_centroid(HostGrid(GridKind::Hex, 1, 1)) == Point2{0.0, 0.0});
  const HostGrid g(GridKind::Square, 3, 3);
  CHECK(grid_centroid(g).x == doctest::Approx(g.cell(4).center.x));
  CHECK(grid_centroid(g).y == doctest::Approx(g.cell(4).center.y));
}

TEST_CASE("restriction") {
  const HostGrid g(GridKind::Square, 2, 2);
  std::vector<CellId> all;
  for (const auto& c : g.cells()) all.push_back(c.id);
  const auto same = restrict_grid(g, all);
  CHECK(same.size() == 4);
  CHECK(same.edges() == g.edges());

  const std::vector<CellId> diagonal{cell_id(0), cell_id(3)};
  const auto two = restrict_grid(g, diagonal);
  CHECK(two.size() == 2);
  CHECK(two.edges().empty());
  CHECK(two.cell(1).center == g.cell(3).center);
  CHECK(two.contains(cell_id(3)));
  CHECK_FALSE(two.contains(cell_id(1)));

  try {
    restrict_grid(g, {});
    FAIL("expected EmptyRestriction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyRestriction);
  }
}

TEST_CASE("grid kind names") {
  CHECK(parse_grid_kind("hex") == GridKind::Hex);
  CHECK(parse_grid_kind(to_string(GridKind::Square)) == GridKind::Square);
  CHECK_THROWS_AS(parse_grid_kind("tri"), Error);
}
