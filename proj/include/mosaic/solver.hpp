#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mosaic/backend.hpp"
#include "mosaic/grid.hpp"
#include "mosaic/milp_model.hpp"
#include "mosaic/setsystem.hpp"

namespace mosaic {

enum class Variant { MSP, MSE, MSEA, Relaxed };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

struct Flow {
  CellId from{};
  CellId to{};
  int amount = 0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

// Injection of elements into cells plus, for every contiguity-constrained
// set, the positive arcs of its flow (opposite arcs netted out).
struct Embedding {
  std::map<std::string, CellId> assignment;
  std::map<std::string, std::vector<Flow>> flows;
};

struct IterationRecord {
  CenterMap centers;  // empty for MSP
  double objective = 0.0;
  double gap = 0.0;
  double wall_time = 0.0;
  SolveStatus status = SolveStatus::Optimal;
  std::size_t grid_cells = 0;
};

struct SolveReport {
  Variant variant = Variant::MSE;
  std::string backend;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
  double total_wall_time = 0.0;
  double final_objective = 0.0;
  double final_gap = 0.0;
};

struct RunOptions {
  int max_iterations = 5;
  double epsilon = 0.01;
  double convergence_tolerance = 1e-9;
  // MSP: hand the solver a first-iteration eccentricity solution as its
  // starting incumbent. Any contiguous embedding is feasible for MSP.
  bool seed_perimeter_model = true;
};

struct SolveResult {
  Embedding embedding;
  SolveReport report;
};

// Builds the model, solves it once and decodes the incumbent.
struct SingleSolve {
  Embedding embedding;
  double objective = 0.0;
  double gap = 0.0;
  double wall_time = 0.0;
  SolveStatus status = SolveStatus::Optimal;
};

SingleSolve solve_once(const ContractedSystem& cs, const HostGrid& grid, const CostTable& costs,
                       const ModelOptions& opts, SolverBackend& backend);

SolveResult run_msp(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                    const RunOptions& opts = {});
SolveResult run_mse(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                    const RunOptions& opts = {});
SolveResult run_msea(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                     const RunOptions& opts = {});
// Eccentricity iterations with contiguity enforced for base sets only.
SolveResult run_relaxed(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                        const RunOptions& opts = {});

SolveResult run_variant(Variant variant, const ContractedSystem& cs, const HostGrid& grid,
                        SolverBackend& backend, const RunOptions& opts = {});

Embedding decode(const AssignmentModel& am, const std::vector<double>& values,
                 const ContractedSystem& cs, const HostGrid& grid);

// Centers of gravity of each set's cells.
CenterMap region_centroids(const Embedding& embedding, const SetSystem& system,
                           const HostGrid& grid);

struct BruteForceResult {
  Embedding embedding;
  double objective = 0.0;
};

// Exhaustive search over all injections respecting alpha; nullopt when no
// injection makes every contiguity set connected. Limited to 8 elements and
// 9 cells.
std::optional<BruteForceResult> brute_force_embed(const ContractedSystem& cs,
                                                  const HostGrid& grid, const CostTable& costs,
                                                  const std::vector<std::size_t>& contiguity_sets);

}  // namespace mosaic
