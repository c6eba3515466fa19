#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/io.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

EmbeddingFile sample() {
  EmbeddingFile file{make_system({{"X", {"a", "b"}}, {"Y", {"c"}}}, {{"P", {"b", "c"}}}),
                     GridKind::Square, 2, 2, Variant::MSE, {}, std::nullopt};
  file.embedding.assignment = {{"a", cell_id(0)}, {"b", cell_id(1)}, {"c", cell_id(3)}};
  file.embedding.flows["X"] = {Flow{cell_id(0), cell_id(1), 1}};
  file.embedding.flows["P"] = {Flow{cell_id(3), cell_id(1), 1}};
  SolveReport report;
  report.variant = Variant::MSE;
  report.backend = "highs";
  report.iterations.push_back({{{"X", {0.5, 0.0}}}, 2.5, 0.001, 0.1, SolveStatus::Optimal, 4});
  report.total_wall_time = 0.1;
  report.final_objective = 2.5;
  report.final_gap = 0.001;
  file.report = report;
  return file;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("embedding files round trip") {
  const auto file = sample();
  const auto text = embedding_to_json(file);
  const auto back = parse_embedding_json(text);
  CHECK(back.grid_kind == GridKind::Square);
  CHECK(back.rows == 2);
  CHECK(back.embedding.assignment == file.embedding.assignment);
  CHECK(back.embedding.flows == file.embedding.flows);
  REQUIRE(back.report.has_value());
  CHECK(back.report->iterations.size() == 1);
  CHECK(back.report->iterations[0].centers.at("X").x == 0.5);
  CHECK(embedding_to_json(back) == text);
}

TEST_CASE("hand-edited embeddings are validated") {
  SUBCASE("non-contiguous set with flows") {
    auto file = sample();
    file.embedding.assignment = {{"a", cell_id(0)}, {"b", cell_id(3)}, {"c", cell_id(2)}};
    file.embedding.flows["X"].clear();
    file.embedding.flows["P"] = {Flow{cell_id(2), cell_id(3), 1}};
    try {
      parse_embedding_json(embedding_to_json(file));
      FAIL("expected ContiguityViolation");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ContiguityViolation);
      CHECK(std::string(e.what()).find("X") != std::string::npos);
    }
  }
  SUBCASE("two elements on one cell") {
    auto file = sample();
    file.embedding.assignment["c"] = cell_id(1);
    CHECK(code_of([&] { parse_embedding_json(embedding_to_json(file)); }) ==
          ErrorCode::OccupancyViolation);
  }
  SUBCASE("arc between non-adjacent cells") {
    auto file = sample();
    file.embedding.flows["P"] = {Flow{cell_id(0), cell_id(3), 1}};
    CHECK(code_of([&] { parse_embedding_json(embedding_to_json(file)); }) ==
          ErrorCode::MalformedInput);
  }
  CHECK(code_of([] { parse_embedding_json("{}"); }) == ErrorCode::MalformedInput);
}

TEST_CASE("metrics tables") {
  const auto file = sample();
  const auto scores = pp_scores(file.embedding, file.system, file.grid());
  const auto csv = metrics_to_csv(scores);
  CHECK(csv.rfind("name,kind,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 + 3);
  const auto json = metrics_to_json(scores, file.report);
  CHECK(json.find("\"pp_c1\"") != std::string::npos);
  CHECK(json.find("\"wall_time\"") != std::string::npos);
}
