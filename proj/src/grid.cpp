#include "mosaic/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mosaic/error.hpp"

namespace mosaic {

namespace {

constexpr std::array<std::pair<int, int>, 4> kSquareOffsets{{
    {0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

// (d_row, d_col) for axial offsets (dq, dr) = (1,0), (0,1), (-1,1) and inverses.
constexpr std::array<std::pair<int, int>, 6> kHexOffsets{{
    {0, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}}};

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

std::string_view to_string(GridKind kind) {
  return kind == GridKind::Hex ? "hex" : "square";
}

GridKind parse_grid_kind(std::string_view text) {
  if (text == "hex") return GridKind::Hex;
  if (text == "square") return GridKind::Square;
  throw Error(ErrorCode::InvalidArgument, "unknown grid kind '" + std::string(text) + "'");
}

std::span<const std::pair<int, int>> neighbor_offsets(GridKind kind) {
  if (kind == GridKind::Hex) return kHexOffsets;
  return kSquareOffsets;
}

HostGrid::HostGrid(GridKind kind, int rows, int cols) : kind_(kind), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dimensions must be positive");
  }
  if (kind == GridKind::Hex) {
    metrics_ = CellMetrics{1.0, 1.5 * kSqrt3, 6.0};
  } else {
    metrics_ = CellMetrics{1.0, 1.0, 4.0};
  }

  cells_.reserve(static_cast<std::size_t>(rows) * cols);
  index_of_id_.assign(static_cast<std::size_t>(rows) * cols, -1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      GridCell cell;
      cell.id = cell_id(r * cols + c);
      cell.row = r;
      cell.col = c;
      cell.center = lattice_center(r, c);
      index_of_id_[to_int(cell.id)] = static_cast<std::ptrdiff_t>(cells_.size());
      cells_.push_back(std::move(cell));
    }
  }
  for (auto& cell : cells_) {
    for (auto [dr, dc] : neighbor_offsets(kind)) {
      const int r = cell.row + dr;
      const int c = cell.col + dc;
      if (r < 0 || r >= rows || c < 0 || c >= cols) continue;
      cell.neighbors.push_back(static_cast<std::size_t>(index_of_id_[r * cols + c]));
    }
    std::sort(cell.neighbors.begin(), cell.neighbors.end());
  }
  rebuild_edges();
}

Point2 HostGrid::lattice_center(int row, int col) const {
  if (kind_ == GridKind::Hex) {
    return {kSqrt3 * (col + 0.5 * row), 1.5 * row};
  }
  return {static_cast<double>(col), static_cast<double>(row)};
}

std::optional<std::size_t> HostGrid::find(CellId id) const {
  const auto raw = to_int(id);
  if (raw < 0 || static_cast<std::size_t>(raw) >= index_of_id_.size()) return std::nullopt;
  const auto index = index_of_id_[raw];
  if (index < 0) return std::nullopt;
  return static_cast<std::size_t>(index);
}

std::size_t HostGrid::index_of(CellId id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::InvalidArgument,
              "cell " + std::to_string(to_int(id)) + " is not part of the grid");
}

void HostGrid::rebuild_edges() {
  edges_.clear();
  for (std::size_t a = 0; a < cells_.size(); ++a) {
    for (auto b : cells_[a].neighbors) {
      if (a < b) edges_.emplace_back(a, b);
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

HostGrid HostGrid::restricted_to(std::span<const CellId> keep) const {
  if (keep.empty()) throw Error(ErrorCode::EmptyRestriction, "no cells to keep");

  std::vector<bool> kept(cells_.size(), false);
  for (auto id : keep) kept[index_of(id)] = true;

  HostGrid out;
  out.kind_ = kind_;
  out.rows_ = rows_;
  out.cols_ = cols_;
  out.metrics_ = metrics_;
  out.index_of_id_.assign(index_of_id_.size(), -1);
  std::vector<std::ptrdiff_t> remap(cells_.size(), -1);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!kept[i]) continue;
    remap[i] = static_cast<std::ptrdiff_t>(out.cells_.size());
    out.index_of_id_[to_int(cells_[i].id)] = remap[i];
    GridCell cell = cells_[i];
    cell.neighbors.clear();
    out.cells_.push_back(std::move(cell));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!kept[i]) continue;
    auto& target = out.cells_[static_cast<std::size_t>(remap[i])];
    for (auto n : cells_[i].neighbors) {
      if (kept[n]) target.neighbors.push_back(static_cast<std::size_t>(remap[n]));
    }
  }
  out.rebuild_edges();
  return out;
}

std::pair<int, int> grid_size_for(int n_elements) {
  if (n_elements < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one element");
  }
  int side = 0;
  while (side * side < n_elements) ++side;
  return {side + 1, side + 1};
}

HostGrid build_grid(GridKind kind, int rows, int cols) { return HostGrid(kind, rows, cols); }

Point2 grid_centroid(const HostGrid& grid) {
  Point2 sum;
  for (const auto& cell : grid.cells()) sum = sum + cell.center;
  return (1.0 / static_cast<double>(grid.size())) * sum;
}

HostGrid restrict_grid(const HostGrid& grid, std::span<const CellId> keep) {
  return grid.restricted_to(keep);
}

}  // namespace mosaic
