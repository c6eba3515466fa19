#include "mosaic/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "mosaic/error.hpp"

namespace mosaic {

namespace {

// Adjacency is taken from the full lattice so that restricted grids measure
// the same shapes as the grid they came from.
std::vector<CellId> lattice_neighbors(const HostGrid& grid, CellId id) {
  const int raw = to_int(id);
  const int row = raw / grid.cols();
  const int col = raw % grid.cols();
  std::vector<CellId> out;
  for (auto [dr, dc] : neighbor_offsets(grid.kind())) {
    const int r = row + dr;
    const int c = col + dc;
    if (r < 0 || r >= grid.rows() || c < 0 || c >= grid.cols()) continue;
    out.push_back(cell_id(r * grid.cols() + c));
  }
  return out;
}

}  // namespace

std::vector<std::vector<CellId>> components(const HostGrid& grid, std::span<const CellId> cells) {
  const std::set<CellId> in(cells.begin(), cells.end());
  std::set<CellId> seen;
  std::vector<std::vector<CellId>> out;
  for (auto start : in) {
    if (seen.count(start)) continue;
    std::vector<CellId> comp;
    std::vector<CellId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : lattice_neighbors(grid, v)) {
        if (in.count(w) && seen.insert(w).second) stack.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_contiguous(const HostGrid& grid, std::span<const CellId> cells) {
  return components(grid, cells).size() <= 1;
}

RegionGeometry region_geometry(const HostGrid& grid, std::span<const CellId> cells) {
  RegionGeometry geom;
  const std::set<CellId> in(cells.begin(), cells.end());
  geom.cells.assign(in.begin(), in.end());
  const auto& m = grid.metrics();
  std::size_t shared = 0;
  for (auto v : in) {
    for (auto w : lattice_neighbors(grid, v)) {
      if (in.count(w)) ++shared;  // counted from both sides
    }
  }
  geom.area = static_cast<double>(in.size()) * m.cell_area;
  geom.perimeter = static_cast<double>(in.size()) * m.cell_perimeter -
                   static_cast<double>(shared) * m.edge_length;
  geom.component_count = static_cast<int>(components(grid, geom.cells).size());
  return geom;
}

double polsby_popper(const RegionGeometry& geom) {
  if (geom.cells.empty() || geom.perimeter <= 0.0) {
    throw Error(ErrorCode::EmptyRegion, "region '" + geom.set_name + "' has no cells");
  }
  return 4.0 * std::numbers::pi * geom.area / (geom.perimeter * geom.perimeter);
}

std::vector<CellId> cells_of_set(const Embedding& embedding, const SetSystem& system,
                                 std::size_t set) {
  std::vector<CellId> cells;
  for (auto e : system.member_indices(set)) {
    const auto& id = system.elements()[e].id;
    auto it = embedding.assignment.find(id);
    if (it == embedding.assignment.end()) {
      throw Error(ErrorCode::UnknownElement, "element '" + id + "' is not embedded");
    }
    cells.push_back(it->second);
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

PpScores pp_scores(const Embedding& embedding, const SetSystem& system, const HostGrid& grid) {
  PpScores scores;
  std::vector<CellId> all;
  for (const auto& [id, cell] : embedding.assignment) all.push_back(cell);
  auto whole = region_geometry(grid, all);
  whole.set_name = "all";
  scores.pp_c1 = polsby_popper(whole);

  double sum_all = 0.0;
  double sum_base = 0.0;
  int n_base = 0;
  for (std::size_t s = 0; s < system.set_count(); ++s) {
    SetScore score;
    score.name = system.sets()[s].name;
    score.kind = system.sets()[s].kind;
    const auto cells = cells_of_set(embedding, system, s);
    score.geometry = region_geometry(grid, cells);
    score.geometry.set_name = score.name;
    score.pp = polsby_popper(score.geometry);
    sum_all += score.pp;
    if (score.kind == SetKind::Base) {
      sum_base += score.pp;
      ++n_base;
    }
    scores.sets.push_back(std::move(score));
  }
  if (!scores.sets.empty()) scores.pp_c2 = sum_all / static_cast<double>(scores.sets.size());
  if (n_base > 0) scores.pp_c3 = sum_base / n_base;
  return scores;
}

std::vector<std::string> contiguity_violations(const Embedding& embedding,
                                               const SetSystem& system, const HostGrid& grid) {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < system.set_count(); ++s) {
    const auto& name = system.sets()[s].name;
    if (!embedding.flows.count(name)) continue;
    if (!is_contiguous(grid, cells_of_set(embedding, system, s))) out.push_back(name);
  }
  return out;
}

}  // namespace mosaic
