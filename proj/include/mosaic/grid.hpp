#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mosaic/geometry.hpp"

namespace mosaic {

enum class GridKind { Square, Hex };

std::string_view to_string(GridKind kind);
GridKind parse_grid_kind(std::string_view text);

struct CellMetrics {
  double edge_length = 1.0;
  double cell_area = 1.0;
  double cell_perimeter = 4.0;
};

struct GridCell {
  CellId id{};
  int row = 0;
  int col = 0;
  Point2 center;
  std::vector<std::size_t> neighbors;  // indices into HostGrid::cells()
};

// Host graph: grid cells, their adjacency and cell-center geometry.
//
// Square grids use the 4-neighborhood with centers at (col, row). Hex grids
// are pointy-top hexagons in axial coordinates (q = col, r = row) laid out
// as a rows x cols rhombus; centers are (sqrt(3) * (q + r / 2), 1.5 * r).
// The y axis points down in both cases, matching SVG.
class HostGrid {
 public:
  HostGrid(GridKind kind, int rows, int cols);

  GridKind kind() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const CellMetrics& metrics() const { return metrics_; }

  std::size_t size() const { return cells_.size(); }
  const std::vector<GridCell>& cells() const { return cells_; }
  const GridCell& cell(std::size_t index) const { return cells_[index]; }

  std::optional<std::size_t> find(CellId id) const;
  std::size_t index_of(CellId id) const;
  bool contains(CellId id) const { return find(id).has_value(); }

  // Undirected edges as index pairs (a < b), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

  // Center of a cell of the unrestricted lattice, valid even for cells that
  // were removed by restricted_to().
  Point2 lattice_center(int row, int col) const;

  // Induced subgraph on `keep`; centers and metrics are unchanged.
  HostGrid restricted_to(std::span<const CellId> keep) const;

 private:
  HostGrid() = default;
  void rebuild_edges();

  GridKind kind_ = GridKind::Square;
  int rows_ = 0;
  int cols_ = 0;
  CellMetrics metrics_;
  std::vector<GridCell> cells_;
  std::vector<std::ptrdiff_t> index_of_id_;  // -1 for absent cells
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Lattice offsets (d_row, d_col) of the neighbors of a cell.
std::span<const std::pair<int, int>> neighbor_offsets(GridKind kind);

// Rows and columns for n elements: ceil(sqrt(n)) + 1 each.
std::pair<int, int> grid_size_for(int n_elements);

HostGrid build_grid(GridKind kind, int rows, int cols);

Point2 grid_centroid(const HostGrid& grid);

HostGrid restrict_grid(const HostGrid& grid, std::span<const CellId> keep);

}  // namespace mosaic
