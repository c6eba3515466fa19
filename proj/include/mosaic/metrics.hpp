#pragma once

#include <span>
#include <string>
#include <vector>

#include "mosaic/grid.hpp"
#include "mosaic/setsystem.hpp"
#include "mosaic/solver.hpp"

namespace mosaic {

struct RegionGeometry {
  std::string set_name;
  std::vector<CellId> cells;
  double area = 0.0;
  double perimeter = 0.0;
  int component_count = 0;
};

// Area and boundary length of a union of grid cells. Hole boundaries count
// toward the perimeter.
RegionGeometry region_geometry(const HostGrid& grid, std::span<const CellId> cells);

// 4 pi A / P^2.
double polsby_popper(const RegionGeometry& geom);

bool is_contiguous(const HostGrid& grid, std::span<const CellId> cells);

// Connected components of the induced subgraph, each sorted by cell id.
std::vector<std::vector<CellId>> components(const HostGrid& grid, std::span<const CellId> cells);

std::vector<CellId> cells_of_set(const Embedding& embedding, const SetSystem& system,
                                 std::size_t set);

struct SetScore {
  std::string name;
  SetKind kind = SetKind::Base;
  RegionGeometry geometry;
  double pp = 0.0;
};

struct PpScores {
  double pp_c1 = 0.0;  // union of all occupied cells
  double pp_c2 = 0.0;  // mean over all sets
  double pp_c3 = 0.0;  // mean over base sets
  std::vector<SetScore> sets;
};

PpScores pp_scores(const Embedding& embedding, const SetSystem& system, const HostGrid& grid);

// Names of the contiguity-constrained sets (those with flows) whose cells
// are not connected.
std::vector<std::string> contiguity_violations(const Embedding& embedding,
                                               const SetSystem& system, const HostGrid& grid);

}  // namespace mosaic
