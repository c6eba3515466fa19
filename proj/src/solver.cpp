#include "mosaic/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "mosaic/error.hpp"
#include "mosaic/metrics.hpp"

namespace mosaic {

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::MSP: return "msp";
    case Variant::MSE: return "mse";
    case Variant::MSEA: return "msea";
    case Variant::Relaxed: return "relaxed";
  }
  return "mse";
}

Variant parse_variant(std::string_view text) {
  if (text == "msp") return Variant::MSP;
  if (text == "mse") return Variant::MSE;
  if (text == "msea") return Variant::MSEA;
  if (text == "relaxed") return Variant::Relaxed;
  throw Error(ErrorCode::InvalidArgument, "unknown variant '" + std::string(text) + "'");
}

namespace {

constexpr double kIntegralityTolerance = 1e-6;

Point2 center_of(const HostGrid& grid, CellId id) {
  const int raw = to_int(id);
  return grid.lattice_center(raw / grid.cols(), raw % grid.cols());
}

}  // namespace

Embedding decode(const AssignmentModel& am, const std::vector<double>& values,
                 const ContractedSystem& cs, const HostGrid& grid) {
  const auto& vars = am.model.variables();
  if (values.size() != vars.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("{} values for {} variables", values.size(), vars.size()));
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].kind == VarKind::Continuous) continue;
    if (std::abs(values[i] - std::round(values[i])) > kIntegralityTolerance) {
      throw Error(ErrorCode::NonIntegralSolution,
                  fmt::format("{} = {}", vars[i].name, values[i]));
    }
  }
  auto value = [&](std::size_t var) { return static_cast<long>(std::lround(values[var])); };

  std::vector<int> occupancy(grid.size(), 0);
  std::map<std::string, std::vector<CellId>> rep_cells;
  for (std::size_t u = 0; u < am.units.size(); ++u) {
    int count = 0;
    const auto& rep_id = cs.system.elements()[am.units[u].rep].id;
    for (std::size_t v = 0; v < grid.size(); ++v) {
      if (value(am.x[u][v]) != 1) continue;
      ++count;
      ++occupancy[v];
      rep_cells[rep_id].push_back(grid.cell(v).id);
    }
    if (count != am.units[u].multiplicity) {
      throw Error(ErrorCode::OccupancyViolation,
                  fmt::format("'{}' occupies {} cells, expected {}", rep_id, count,
                              am.units[u].multiplicity));
    }
  }
  for (std::size_t v = 0; v < grid.size(); ++v) {
    if (occupancy[v] > 1) {
      throw Error(ErrorCode::OccupancyViolation,
                  fmt::format("cell {} holds {} elements", to_int(grid.cell(v).id),
                              occupancy[v]));
    }
  }

  Embedding embedding;
  embedding.assignment = expand_embedding(cs, rep_cells);

  for (auto s : am.contiguity_sets) {
    auto& flows = embedding.flows[cs.system.sets()[s].name];
    // Arcs come in (a, b), (b, a) pairs.
    for (std::size_t k = 0; k + 1 < am.arcs.size(); k += 2) {
      const long net = value(am.y[s][k]) - value(am.y[s][k + 1]);
      const auto [a, b] = am.arcs[k];
      if (net > 0) {
        flows.push_back({grid.cell(a).id, grid.cell(b).id, static_cast<int>(net)});
      } else if (net < 0) {
        flows.push_back({grid.cell(b).id, grid.cell(a).id, static_cast<int>(-net)});
      }
    }
  }
  return embedding;
}

namespace {

struct RawSolve {
  SingleSolve single;
  std::vector<double> values;
};

RawSolve solve_model(const AssignmentModel& am, const ContractedSystem& cs, const HostGrid& grid,
                     SolverBackend& backend, const std::vector<double>& start_values = {}) {
  const auto start = std::chrono::steady_clock::now();
  auto result = backend.solve(am.model, start_values);
  switch (result.status) {
    case SolveStatus::Infeasible:
      throw Error(ErrorCode::Infeasible, "no embedding satisfies the contiguity constraints");
    case SolveStatus::Error:
      throw Error(ErrorCode::SolverFailure, backend.name() + ": " + result.message);
    case SolveStatus::TimeLimit:
      if (!result.has_solution) {
        throw Error(ErrorCode::NoIncumbent, "time limit reached without a feasible solution");
      }
      break;
    case SolveStatus::Optimal:
      if (!result.has_solution) {
        throw Error(ErrorCode::SolverFailure, backend.name() + " returned no solution");
      }
      break;
  }
  RawSolve out;
  out.single.embedding = decode(am, result.values, cs, grid);
  out.single.objective = am.model.evaluate_objective(result.values);
  out.single.gap = result.gap;
  out.single.status = result.status;
  out.single.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.values = std::move(result.values);
  return out;
}

// Carries values over by variable name. Variables missing from `from` take
// the largest integer value that their <= rows allow.
std::vector<double> lift_start(const MilpModel& from, const std::vector<double>& values,
                               const MilpModel& to) {
  const auto& vars = to.variables();
  std::vector<double> out(vars.size(), 0.0);
  std::vector<bool> known(vars.size(), false);
  std::vector<double> cap(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (auto j = from.find_variable(vars[i].name)) {
      out[i] = values[*j];
      known[i] = true;
    }
    cap[i] = vars[i].upper;
  }
  for (const auto& c : to.constraints()) {
    if (c.cmp != Comparator::LessEqual) continue;
    std::optional<Term> open;
    double fixed = 0.0;
    bool usable = true;
    for (const auto& t : c.terms) {
      if (known[t.var]) {
        fixed += t.coef * out[t.var];
      } else if (!open && t.coef > 0.0) {
        open = t;
      } else {
        usable = false;
      }
    }
    if (usable && open) cap[open->var] = std::min(cap[open->var], (c.rhs - fixed) / open->coef);
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!known[i]) out[i] = std::max(vars[i].lower, std::floor(cap[i] + 1e-9));
  }
  return out;
}

}  // namespace

SingleSolve solve_once(const ContractedSystem& cs, const HostGrid& grid, const CostTable& costs,
                       const ModelOptions& opts, SolverBackend& backend) {
  const auto am = build_assignment_model(cs, grid, costs, opts);
  return solve_model(am, cs, grid, backend).single;
}

CenterMap region_centroids(const Embedding& embedding, const SetSystem& system,
                           const HostGrid& grid) {
  CenterMap centers;
  for (std::size_t s = 0; s < system.set_count(); ++s) {
    Point2 sum;
    const auto& members = system.member_indices(s);
    for (auto e : members) {
      sum = sum + center_of(grid, embedding.assignment.at(system.elements()[e].id));
    }
    centers[system.sets()[s].name] = (1.0 / static_cast<double>(members.size())) * sum;
  }
  return centers;
}

namespace {

SolveReport start_report(Variant variant, const SolverBackend& backend) {
  SolveReport report;
  report.variant = variant;
  report.backend = backend.name();
  report.seed = backend.config().seed;
  return report;
}

void finish_report(SolveReport& report) {
  report.total_wall_time = 0.0;
  for (const auto& it : report.iterations) report.total_wall_time += it.wall_time;
  if (!report.iterations.empty()) {
    report.final_objective = report.iterations.back().objective;
    report.final_gap = report.iterations.back().gap;
  }
}

double max_displacement(const CenterMap& a, const CenterMap& b) {
  double worst = 0.0;
  for (const auto& [name, p] : a) worst = std::max(worst, distance(p, b.at(name)));
  return worst;
}

std::vector<CellId> occupied_cells(const Embedding& embedding) {
  std::vector<CellId> cells;
  for (const auto& [id, cell] : embedding.assignment) cells.push_back(cell);
  std::sort(cells.begin(), cells.end());
  return cells;
}

SolveResult run_eccentricity(Variant variant, const ContractedSystem& cs, const HostGrid& grid,
                             SolverBackend& backend, const RunOptions& opts,
                             const ModelOptions& model_opts, bool fix_area) {
  if (opts.max_iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_iterations must be at least 1");
  }
  SolveResult result;
  result.report = start_report(variant, backend);

  auto centers = initial_centers(grid, cs.system.set_names(SetKind::Base),
                                 cs.system.set_names(SetKind::Overlay), opts.epsilon);
  HostGrid host = grid;
  for (int iteration = 1; iteration <= opts.max_iterations; ++iteration) {
    const auto costs = eccentricity_costs(cs, host, centers);
    auto single = solve_once(cs, host, costs, model_opts, backend);
    result.report.iterations.push_back(IterationRecord{
        centers, single.objective, single.gap, single.wall_time, single.status, host.size()});
    result.embedding = std::move(single.embedding);

    if (fix_area && iteration == 1) {
      const auto keep = occupied_cells(result.embedding);
      host = grid.restricted_to(keep);
    }
    auto next = region_centroids(result.embedding, cs.original, grid);
    if (max_displacement(next, centers) < opts.convergence_tolerance) break;
    centers = std::move(next);
  }
  finish_report(result.report);
  return result;
}

}  // namespace

SolveResult run_msp(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                    const RunOptions& opts) {
  const auto begin = std::chrono::steady_clock::now();
  SolveResult result;
  result.report = start_report(Variant::MSP, backend);
  auto model_opts = full_contiguity(cs);
  model_opts.objective = ObjectiveKind::PerimeterBonus;
  const auto am = build_assignment_model(cs, grid, global_costs(grid), model_opts);

  std::vector<double> start;
  const auto config = backend.config();
  if (opts.seed_perimeter_model) {
    const auto centers = initial_centers(grid, cs.system.set_names(SetKind::Base),
                                         cs.system.set_names(SetKind::Overlay), opts.epsilon);
    const auto seed_am = build_assignment_model(cs, grid, eccentricity_costs(cs, grid, centers),
                                                full_contiguity(cs));
    try {
      const auto seed = solve_model(seed_am, cs, grid, backend);
      start = lift_start(seed_am.model, seed.values, am.model);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoIncumbent) throw;
    }
    // The seed solve counts against the time limit.
    if (std::isfinite(config.time_limit)) {
      auto rest = config;
      const double used =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
      rest.time_limit = std::max(1.0, config.time_limit - used);
      backend.set_config(rest);
    }
  }
  RawSolve solved;
  try {
    solved = solve_model(am, cs, grid, backend, start);
  } catch (...) {
    backend.set_config(config);
    throw;
  }
  backend.set_config(config);
  auto& single = solved.single;
  single.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  result.report.iterations.push_back(
      IterationRecord{{}, single.objective, single.gap, single.wall_time, single.status,
                      grid.size()});
  result.embedding = std::move(single.embedding);
  finish_report(result.report);
  return result;
}

SolveResult run_mse(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                    const RunOptions& opts) {
  return run_eccentricity(Variant::MSE, cs, grid, backend, opts, full_contiguity(cs), false);
}

SolveResult run_msea(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                     const RunOptions& opts) {
  return run_eccentricity(Variant::MSEA, cs, grid, backend, opts, full_contiguity(cs), true);
}

SolveResult run_relaxed(const ContractedSystem& cs, const HostGrid& grid, SolverBackend& backend,
                        const RunOptions& opts) {
  return run_eccentricity(Variant::Relaxed, cs, grid, backend, opts, base_contiguity(cs),
                          false);
}

SolveResult run_variant(Variant variant, const ContractedSystem& cs, const HostGrid& grid,
                        SolverBackend& backend, const RunOptions& opts) {
  switch (variant) {
    case Variant::MSP: return run_msp(cs, grid, backend, opts);
    case Variant::MSE: return run_mse(cs, grid, backend, opts);
    case Variant::MSEA: return run_msea(cs, grid, backend, opts);
    case Variant::Relaxed: return run_relaxed(cs, grid, backend, opts);
  }
  return run_mse(cs, grid, backend, opts);
}

std::optional<BruteForceResult> brute_force_embed(const ContractedSystem& cs,
                                                  const HostGrid& grid, const CostTable& costs,
                                                  const std::vector<std::size_t>& contiguity_sets) {
  const int total = cs.total_alpha();
  if (total > 8 || grid.size() > 9) {
    throw Error(ErrorCode::TooLarge,
                fmt::format("{} elements on {} cells exceeds the brute-force limit", total,
                            grid.size()));
  }
  if (static_cast<std::size_t>(total) > grid.size()) return std::nullopt;

  const auto& system = cs.system;
  const std::size_t reps = system.element_count();
  const std::size_t n_cells = grid.size();

  // cells[r] holds the chosen cell indices of representative r.
  std::vector<std::vector<std::size_t>> chosen(reps);
  std::vector<bool> used(n_cells, false);
  std::optional<std::vector<std::vector<std::size_t>>> best;
  double best_cost = std::numeric_limits<double>::infinity();

  auto connected = [&](std::size_t set) {
    std::vector<bool> in(n_cells, false);
    std::size_t count = 0;
    std::size_t start = 0;
    for (auto r : system.member_indices(set)) {
      for (auto v : chosen[r]) {
        in[v] = true;
        start = v;
        ++count;
      }
    }
    std::vector<bool> seen(n_cells, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      ++reached;
      for (auto w : grid.cell(v).neighbors) {
        if (in[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return reached == count;
  };

  std::function<void(std::size_t, double)> place_rep;
  std::function<void(std::size_t, std::size_t, int, double)> choose;

  place_rep = [&](std::size_t r, double cost) {
    if (cost >= best_cost - 1e-12) return;
    if (r == reps) {
      for (auto s : contiguity_sets) {
        if (!connected(s)) return;
      }
      best_cost = cost;
      best = chosen;
      return;
    }
    choose(r, 0, cs.alpha[r], cost);
  };

  // Picks `remaining` more cells for r from indices >= from, ascending.
  choose = [&](std::size_t r, std::size_t from, int remaining, double cost) {
    if (remaining == 0) {
      place_rep(r + 1, cost);
      return;
    }
    for (std::size_t v = from; v < n_cells; ++v) {
      if (used[v]) continue;
      used[v] = true;
      chosen[r].push_back(v);
      choose(r, v + 1, remaining - 1, cost + costs.at(r, v));
      chosen[r].pop_back();
      used[v] = false;
    }
  };

  place_rep(0, 0.0);
  if (!best) return std::nullopt;

  std::map<std::string, std::vector<CellId>> rep_cells;
  for (std::size_t r = 0; r < reps; ++r) {
    for (auto v : (*best)[r]) rep_cells[system.elements()[r].id].push_back(grid.cell(v).id);
  }
  BruteForceResult out;
  out.embedding.assignment = expand_embedding(cs, rep_cells);
  out.objective = best_cost;
  return out;
}

}  // namespace mosaic
