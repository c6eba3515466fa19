#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/metrics.hpp"
#include "mosaic/solver.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

std::unique_ptr<SolverBackend> exact_backend(std::string_view name = "highs") {
  BackendConfig config;
  config.relative_gap = 0.0;
  return make_backend(name, config);
}

std::set<CellId> occupied(const Embedding& e) {
  std::set<CellId> out;
  for (const auto& [id, cell] : e.assignment) out.insert(cell);
  return out;
}

// Net inflow per cell of one set's flow.
std::map<CellId, int> net_inflow(const std::vector<Flow>& flows) {
  std::map<CellId, int> net;
  for (const auto& f : flows) {
    net[f.to] += f.amount;
    net[f.from] -= f.amount;
  }
  return net;
}

}  // namespace

TEST_CASE("variant names round-trip") {
  for (auto v : {Variant::MSP, Variant::MSE, Variant::MSEA, Variant::Relaxed}) {
    CHECK(parse_variant(to_string(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("fast"), Error);
}

TEST_CASE("brute force on a path breaks ties by enumeration order") {
  const auto sys = make_system({{"S", {"a", "b"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Square, 1, 3);
  const auto result = brute_force_embed(cs, grid, global_costs(grid), {0});
  REQUIRE(result.has_value());
  // Costs are 1, 0, 1; {0,1} and {1,2} both cost 1 and {0,1} comes first.
  CHECK(result->objective == doctest::Approx(1.0));
  CHECK(result->embedding.assignment.at("a") == cell_id(0));
  CHECK(result->embedding.assignment.at("b") == cell_id(1));
}

TEST_CASE("brute force single element on one cell") {
  const auto cs = contract_indistinguishable(make_system({{"S", {"a"}}}));
  const HostGrid grid(GridKind::Hex, 1, 1);
  const auto result = brute_force_embed(cs, grid, global_costs(grid), {0});
  REQUIRE(result.has_value());
  CHECK(result->objective == 0.0);
  CHECK(result->embedding.assignment.at("a") == cell_id(0));
}

TEST_CASE("brute force rejects the seven-star instance and large inputs") {
  const auto cs = contract_indistinguishable(testing_support::seven_star());
  for (auto kind : {GridKind::Square, GridKind::Hex}) {
    const HostGrid grid(kind, 3, 3);
    std::vector<std::size_t> all(cs.system.set_count());
    for (std::size_t s = 0; s < all.size(); ++s) all[s] = s;
    CHECK_FALSE(brute_force_embed(cs, grid, global_costs(grid), all).has_value());
  }
  const HostGrid big(GridKind::Square, 4, 4);
  CHECK_THROWS_AS(brute_force_embed(cs, big, global_costs(big), {0}), Error);
}

TEST_CASE("MSP maximizes interior edges") {
  auto backend = exact_backend();
  SUBCASE("four elements on 3x3 form a block") {
    const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b", "c", "d"}}}));
    const auto result = run_msp(cs, HostGrid(GridKind::Square, 3, 3), *backend);
    REQUIRE(result.report.iterations.size() == 1);
    CHECK(result.report.final_objective == doctest::Approx(4.0));
  }
  SUBCASE("three elements on 2x2 form an L") {
    const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b", "c"}}}));
    const auto result = run_msp(cs, HostGrid(GridKind::Square, 2, 2), *backend);
    CHECK(result.report.final_objective == doctest::Approx(2.0));
  }
}

TEST_CASE("seven-star is infeasible under full contiguity only") {
  const auto cs = contract_indistinguishable(testing_support::seven_star());
  const HostGrid grid(GridKind::Hex, 3, 3);
  auto backend = exact_backend();
  CHECK_THROWS_AS(run_msp(cs, grid, *backend), Error);
  try {
    run_mse(cs, grid, *backend);
    FAIL("expected infeasibility");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
  const auto relaxed = run_relaxed(cs, grid, *backend);
  CHECK(relaxed.embedding.assignment.size() == 8);
  CHECK(relaxed.embedding.flows.size() == 1);
  CHECK(relaxed.embedding.flows.count("all") == 1);
}

TEST_CASE("MSE iteration protocol") {
  const auto sys = make_system({{"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2"}}, {"C", {"c1"}}},
                               {{"P", {"a2", "b1"}}});
  const auto cs = contract_indistinguishable(sys);
  const auto [rows, cols] = grid_size_for(static_cast<int>(sys.element_count()));
  const HostGrid grid(GridKind::Hex, rows, cols);
  auto backend = exact_backend();

  SUBCASE("single iteration") {
    RunOptions opts;
    opts.max_iterations = 1;
    CHECK(run_mse(cs, grid, *backend, opts).report.iterations.size() == 1);
  }
  SUBCASE("first iteration uses the polygon centers") {
    const auto result = run_mse(cs, grid, *backend);
    const auto& its = result.report.iterations;
    REQUIRE_FALSE(its.empty());
    CHECK(its.size() <= 5);
    const auto mu = grid_centroid(grid);
    const auto& first = its.front().centers;
    for (int j = 0; j < 3; ++j) {
      const double angle = 2.0 * std::numbers::pi * j / 3.0;
      const auto& c = first.at(std::string(1, static_cast<char>('A' + j)));
      CHECK(c.x == doctest::Approx(mu.x + 0.01 * std::cos(angle)));
      CHECK(c.y == doctest::Approx(mu.y + 0.01 * std::sin(angle)));
    }
    CHECK(first.at("P").x == doctest::Approx(mu.x));
    CHECK(first.at("P").y == doctest::Approx(mu.y));
    // Later iterations start from the previous regions' centroids.
    for (std::size_t i = 1; i < its.size(); ++i) {
      for (const auto& [name, c] : its[i].centers) {
        CHECK(std::isfinite(c.x));
      }
    }
    CHECK(contiguity_violations(result.embedding, sys, grid).empty());
  }
}

TEST_CASE("MSEA keeps the first iteration's area") {
  const auto sys = make_system({{"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2", "b3"}}},
                               {{"P", {"a1", "b1"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Square, 4, 4);
  auto backend = exact_backend();
  const auto result = run_msea(cs, grid, *backend);
  const auto& its = result.report.iterations;
  REQUIRE_FALSE(its.empty());
  CHECK(its.front().grid_cells == grid.size());
  for (std::size_t i = 1; i < its.size(); ++i) CHECK(its[i].grid_cells == 6);
  CHECK(occupied(result.embedding).size() == 6);
}

TEST_CASE("flows certify contiguity") {
  const auto sys = make_system({{"A", {"a1", "a2", "a3", "a4"}}, {"B", {"b1", "b2"}}},
                               {{"P", {"a1", "b1", "b2"}}, {"Q", {"a4"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Square, 3, 3);
  auto backend = exact_backend();
  const auto result = run_mse(cs, grid, *backend);
  CHECK(result.embedding.flows.at("Q").empty());
  for (std::size_t s = 0; s < sys.set_count(); ++s) {
    const auto& name = sys.sets()[s].name;
    const int n = static_cast<int>(sys.member_indices(s).size());
    auto net = net_inflow(result.embedding.flows.at(name));
    const auto cells = cells_of_set(result.embedding, sys, s);
    if (n == 1) continue;
    int sinks = 0;
    for (auto c : cells) {
      const int value = net[c];
      if (value == n - 1) {
        ++sinks;
      } else {
        CHECK(value == -1);
      }
    }
    CHECK(sinks == 1);
    // Flows never leave the set's cells.
    for (const auto& [cell, value] : net) {
      CHECK(std::find(cells.begin(), cells.end(), cell) != cells.end());
    }
  }
}

TEST_CASE("decode validates solutions") {
  const auto sys = make_system({{"S", {"a", "b", "c"}}});
  const auto cs = identity_contraction(sys);
  const HostGrid grid(GridKind::Square, 2, 2);
  const auto am = build_assignment_model(cs, grid, global_costs(grid), full_contiguity(cs));
  std::vector<double> values(am.model.variables().size(), 0.0);

  SUBCASE("all zero") {
    try {
      decode(am, values, cs, grid);
      FAIL("expected an occupancy violation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OccupancyViolation);
    }
  }
  SUBCASE("fractional") {
    values[am.x[0][0]] = 0.5;
    try {
      decode(am, values, cs, grid);
      FAIL("expected a non-integral error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonIntegralSolution);
    }
  }
  SUBCASE("hand-built vector from the oracle") {
    const auto oracle = brute_force_embed(cs, grid, global_costs(grid), {0});
    REQUIRE(oracle.has_value());
    const auto& want = oracle->embedding.assignment;
    // Units follow representative order a, b, c; a is the set's center.
    for (std::size_t u = 0; u < am.units.size(); ++u) {
      const auto& id = cs.system.elements()[am.units[u].rep].id;
      values[am.x[u][grid.index_of(want.at(id))]] = 1.0;
    }
    // Route one unit from b and c straight to a when adjacent.
    const auto center = grid.index_of(want.at("a"));
    for (const auto* leaf : {"b", "c"}) {
      const auto from = grid.index_of(want.at(leaf));
      for (std::size_t k = 0; k < am.arcs.size(); ++k) {
        if (am.arcs[k] == std::pair{from, center}) values[am.y[0][k]] = 1.0;
      }
    }
    const auto e = decode(am, values, cs, grid);
    CHECK(e.assignment == want);
  }
}

TEST_CASE("adapters agree") {
  const auto sys = make_system({{"A", {"a1", "a2"}}, {"B", {"b1", "b2", "b3"}}},
                               {{"P", {"a2", "b1"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Hex, 3, 3);
  auto in_memory = exact_backend("highs");
  auto lp_file = exact_backend("highs-lp");
  const auto a = run_mse(cs, grid, *in_memory);
  const auto b = run_mse(cs, grid, *lp_file);
  REQUIRE(a.report.iterations.size() == b.report.iterations.size());
  for (std::size_t i = 0; i < a.report.iterations.size(); ++i) {
    CHECK(a.report.iterations[i].objective ==
          doctest::Approx(b.report.iterations[i].objective).epsilon(1e-9));
  }
  CHECK(b.report.backend == "highs-lp");
}

TEST_CASE("repeated runs are deterministic") {
  const auto sys = make_system({{"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2"}}},
                               {{"P", {"a1", "b2"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Hex, 4, 4);
  auto backend = make_backend("highs", BackendConfig{});
  const auto a = run_mse(cs, grid, *backend);
  const auto b = run_mse(cs, grid, *backend);
  CHECK(a.embedding.assignment == b.embedding.assignment);
  REQUIRE(a.report.iterations.size() == b.report.iterations.size());
  for (std::size_t i = 0; i < a.report.iterations.size(); ++i) {
    CHECK(a.report.iterations[i].objective == b.report.iterations[i].objective);
  }
}

TEST_CASE("seeding MSP does not change its optimum") {
  const auto sys = make_system({{"A", {"a1", "a2", "a3"}}, {"B", {"b1", "b2"}}},
                               {{"P", {"a3", "b1"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid grid(GridKind::Square, 3, 3);
  auto backend = exact_backend();
  RunOptions cold;
  cold.seed_perimeter_model = false;
  const auto seeded = run_msp(cs, grid, *backend);
  const auto plain = run_msp(cs, grid, *backend, cold);
  CHECK(seeded.report.final_objective == doctest::Approx(plain.report.final_objective));
  CHECK(seeded.report.iterations.size() == 1);
}

TEST_CASE("start vectors must match the model") {
  MilpModel m;
  const auto x = m.add_variable("x", VarKind::Binary, 0, 1);
  m.add_constraint("c", {{x, 1.0}}, Comparator::LessEqual, 1);
  m.set_objective(Sense::Maximize, {{x, 1.0}});
  for (const char* name : {"highs", "highs-lp"}) {
    auto backend = exact_backend(name);
    CHECK_THROWS_AS(backend->solve(m, {1.0, 0.0}), Error);
    const auto r = backend->solve(m, {1.0});
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(r.objective == doctest::Approx(1.0));
  }
}
