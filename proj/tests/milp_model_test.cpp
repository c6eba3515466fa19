#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/milp_model.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

std::size_t count_prefix(const MilpModel& m, std::string_view prefix, bool constraints) {
  std::size_t n = 0;
  if (constraints) {
    for (const auto& c : m.constraints()) n += c.name.rfind(prefix, 0) == 0;
  } else {
    for (const auto& v : m.variables()) n += v.name.rfind(prefix, 0) == 0;
  }
  return n;
}

}  // namespace

TEST_CASE("model container") {
  MilpModel m;
  const auto x = m.add_variable("x", VarKind::Binary, 0, 1);
  const auto y = m.add_variable("y", VarKind::Integer, 0, 3);
  CHECK_THROWS_AS(m.add_variable("x", VarKind::Binary, 0, 1), Error);
  CHECK_THROWS_AS(m.add_variable("bad", VarKind::Integer, 2, 1), Error);
  m.add_constraint("c", {{x, 1.0}, {y, 2.0}, {x, 1.0}, {y, -2.0}}, Comparator::LessEqual, 4);
  const auto& c = m.constraints().front();
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms[0].var == x);
  CHECK(c.terms[0].coef == 2.0);
  m.set_objective(Sense::Maximize, {{x, 3.0}, {y, 1.0}});
  CHECK(m.evaluate_objective({1.0, 2.0}) == 5.0);
  CHECK(m.find_variable("y") == y);
  CHECK_FALSE(m.find_constraint("d").has_value());
}

TEST_CASE("LP text") {
  MilpModel m;
  const auto x = m.add_variable("x", VarKind::Binary, 0, 1);
  const auto y = m.add_variable("y", VarKind::Integer, 0, 0);
  const auto z = m.add_variable("z", VarKind::Continuous, -1, 2.5);
  m.add_constraint("row", {{x, 1.0}, {z, -0.5}}, Comparator::GreaterEqual, 0.25);
  m.add_constraint("empty", {}, Comparator::LessEqual, 1);
  m.set_objective(Sense::Minimize, {{x, 2.0}});
  const auto lp = to_lp_format(m);
  CHECK(lp.find("Minimize\n obj: 2 x\n") != std::string::npos);
  CHECK(lp.find(" row: 1 x - 0.5 z >= 0.25\n") != std::string::npos);
  CHECK(lp.find(" empty: 0 x <= 1\n") != std::string::npos);
  CHECK(lp.find(" y = 0\n") != std::string::npos);
  CHECK(lp.find(" -1 <= z <= 2.5\n") != std::string::npos);
  CHECK(lp.find("Generals\n y\n") != std::string::npos);
  CHECK(lp.find("Binaries\n x\n") != std::string::npos);
  CHECK(lp.rfind("End\n") == lp.size() - 4);
}

TEST_CASE("cost tables") {
  const HostGrid sq(GridKind::Square, 2, 2);
  const auto global = global_costs(sq);
  CHECK(global.is_uniform());
  for (std::size_t v = 0; v < 4; ++v) CHECK(global.at(7, v) == doctest::Approx(0.5));

  const HostGrid odd(GridKind::Square, 3, 3);
  CHECK(global_costs(odd).at(0, 4) == doctest::Approx(0.0));

  // Element in sets A and B at (0,0) with centers (1,0) and (0,2).
  const auto sys = make_system({{"A", {"s"}}}, {{"B", {"s"}}});
  const auto cs = contract_indistinguishable(sys);
  const HostGrid one(GridKind::Square, 1, 1);
  const auto w = eccentricity_costs(cs, one, {{"A", {1, 0}}, {"B", {0, 2}}});
  CHECK(w.at(0, 0) == doctest::Approx(5.0));
  CHECK_THROWS_AS(eccentricity_costs(cs, one, {{"A", {1, 0}}}), Error);

  // All centers at the centroid: k_s times the global cost.
  const auto mu = grid_centroid(odd);
  const auto scaled = eccentricity_costs(cs, odd, {{"A", mu}, {"B", mu}});
  for (std::size_t v = 0; v < odd.size(); ++v) {
    CHECK(scaled.at(0, v) == doctest::Approx(2.0 * global_costs(odd).at(0, v)));
  }
}

TEST_CASE("initial centers") {
  const HostGrid g(GridKind::Square, 3, 3);  // centroid (1,1)
  const auto one = initial_centers(g, {"X"}, {}, 0.01);
  CHECK(one.at("X").x == doctest::Approx(1.01));
  CHECK(one.at("X").y == doctest::Approx(1.0));

  const auto four = initial_centers(g, {"A", "B", "C", "D"}, {"P"}, 0.1);
  const Point2 want[] = {{1.1, 1.0}, {1.0, 1.1}, {0.9, 1.0}, {1.0, 0.9}};
  const char* names[] = {"A", "B", "C", "D"};
  for (int j = 0; j < 4; ++j) {
    CHECK(four.at(names[j]).x == doctest::Approx(want[j].x));
    CHECK(four.at(names[j]).y == doctest::Approx(want[j].y));
  }
  CHECK(four.at("P") == grid_centroid(g));
  CHECK_THROWS_AS(initial_centers(g, {"A"}, {}, 0.0), Error);
}

TEST_CASE("assignment model structure") {
  const auto cs = identity_contraction(make_system({{"S", {"a", "b", "c"}}}));
  const HostGrid g(GridKind::Square, 2, 2);
  const auto am = build_assignment_model(cs, g, global_costs(g), full_contiguity(cs));
  const auto& m = am.model;
  CHECK(count_prefix(m, "x_", false) == 12);
  CHECK(count_prefix(m, "y_", false) == 8);
  CHECK(count_prefix(m, "assign_", true) == 3);
  CHECK(count_prefix(m, "cell_", true) == 4);
  CHECK(count_prefix(m, "flow_", true) == 4);
  CHECK(count_prefix(m, "cap_", true) == 4);
  for (const auto& v : m.variables()) {
    if (v.name.rfind("y_", 0) == 0) CHECK(v.upper == 2.0);
  }
}

TEST_CASE("singleton sets get fixed-zero flows") {
  const auto cs = contract_indistinguishable(make_system({{"S", {"a"}}}));
  const HostGrid g(GridKind::Hex, 2, 2);
  const auto am = build_assignment_model(cs, g, global_costs(g), full_contiguity(cs));
  for (auto var : am.y[0]) {
    CHECK(am.model.variables()[var].lower == 0.0);
    CHECK(am.model.variables()[var].upper == 0.0);
  }
}

TEST_CASE("a contracted center representative splits into two units") {
  const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b"}}}));
  const HostGrid g(GridKind::Square, 1, 3);
  const auto am = build_assignment_model(cs, g, global_costs(g), full_contiguity(cs));
  REQUIRE(am.units.size() == 2);
  CHECK(am.units[0].center_part);
  CHECK(am.units[0].multiplicity + am.units[1].multiplicity == 2);
  // Together the two injection rows read sum_v x_{a,v} = 2.
  double rhs = 0.0;
  for (const auto& c : am.model.constraints()) {
    if (c.name.rfind("assign_", 0) == 0) rhs += c.rhs;
  }
  CHECK(rhs == 2.0);
}

TEST_CASE("model preconditions") {
  const auto cs = contract_indistinguishable(testing_support::seven_star());
  const HostGrid small(GridKind::Square, 2, 2);
  try {
    build_assignment_model(cs, small, global_costs(small), full_contiguity(cs));
    FAIL("expected GridTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GridTooSmall);
  }
  const HostGrid g(GridKind::Square, 3, 3);
  ModelOptions no_base;
  CHECK_THROWS_AS(build_assignment_model(cs, g, global_costs(g), no_base), Error);
  CHECK(base_contiguity(cs).contiguity_sets == std::vector<std::size_t>{0});
}

TEST_CASE("perimeter objective") {
  const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b", "c"}}}));
  const HostGrid g(GridKind::Square, 2, 2);
  ModelOptions opts = full_contiguity(cs);
  opts.objective = ObjectiveKind::PerimeterBonus;
  const auto am = build_assignment_model(cs, g, global_costs(g), opts);
  CHECK(count_prefix(am.model, "z_", false) == 4);
  CHECK(count_prefix(am.model, "zcap_", true) == 8);
  CHECK(am.model.objective().sense == Sense::Maximize);
  CHECK(am.model.objective().terms.size() == 4);
}

TEST_CASE("annotated LP text lists units and sets") {
  const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b"}}}, {{"P", {"a"}}}));
  const HostGrid g(GridKind::Square, 2, 2);
  const auto am = build_assignment_model(cs, g, global_costs(g), full_contiguity(cs));
  const auto text = to_lp_format(am, cs);
  CHECK(text.rfind("\\", 0) == 0);
  CHECK(text.find("set 1 = P") != std::string::npos);
  CHECK(text.find("Minimize") != std::string::npos);
}
