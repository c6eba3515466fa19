#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "mosaic/cli.hpp"
#include "mosaic/io.hpp"

using namespace mosaic;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mosaic-cli-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Hub plus seven leaves, one overlay per hub-leaf pair.
void write_seven_star(const fs::path& dir) {
  std::string elements = "id,label,base_set\nhub,Hub,all\n";
  std::string overlays = "set,element_id\n";
  for (int i = 1; i <= 7; ++i) {
    elements += "leaf" + std::to_string(i) + ",Leaf " + std::to_string(i) + ",all\n";
    overlays += "star" + std::to_string(i) + ",hub\n";
    overlays += "star" + std::to_string(i) + ",leaf" + std::to_string(i) + "\n";
  }
  write_text_file(dir / "elements.csv", elements);
  write_text_file(dir / "overlays.csv", overlays);
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::Infeasible) == 3);
  CHECK(exit_code_for(ErrorCode::NoIncumbent) == 4);
  CHECK(exit_code_for(ErrorCode::UnknownSet) == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"embed", "--variant", "fastest"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("seven-star instance") {
  const auto dir = fresh_dir("star");
  write_seven_star(dir);
  const std::vector<std::string> input{"--elements", (dir / "elements.csv").string(),
                                       "--overlays", (dir / "overlays.csv").string()};
  auto args = std::vector<std::string>{"embed", "--grid", "hex", "--out", (dir / "full").string()};
  args.insert(args.end(), input.begin(), input.end());
  const auto full = run(args);
  CHECK(full.code == 3);

  args = {"embed", "--grid", "hex", "--variant", "relaxed", "--out", (dir / "relaxed").string()};
  args.insert(args.end(), input.begin(), input.end());
  REQUIRE(run(args).code == 0);
  const auto embedding = (dir / "relaxed" / "embedding.json").string();
  CHECK(run({"render", embedding, "--out", (dir / "map").string()}).code == 0);
  CHECK(fs::exists(dir / "map" / "map.svg"));
  CHECK(run({"render", embedding, "--style", "kelp", "--out", (dir / "map").string()}).code == 2);
  CHECK(run({"render", embedding, "--select", "nope", "--out", (dir / "map").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("synth, embed, render, metrics") {
  const auto dir = fresh_dir("pipeline");
  REQUIRE(run({"synth", "--profile", "random", "--elements", "12", "--base-sets", "3",
               "--overlays", "2", "--seed", "4", "--out", dir.string()})
              .code == 0);
  REQUIRE(run({"embed", "--elements", (dir / "elements.csv").string(), "--overlays",
               (dir / "overlays.csv").string(), "--grid", "hex", "--out", dir.string()})
              .code == 0);
  const auto file = parse_embedding_json(read_text_file(dir / "embedding.json"));
  CHECK(file.embedding.assignment.size() == 12);
  REQUIRE(file.report.has_value());
  // Five iterations unless the centers stop moving earlier.
  const auto& iters = file.report->iterations;
  REQUIRE(!iters.empty());
  if (iters.size() < 5) {
    const auto centroids = region_centroids(file.embedding, file.system, file.grid());
    for (const auto& [name, c] : iters.back().centers) {
      CHECK(distance(c, centroids.at(name)) < 1e-9);
    }
  } else {
    CHECK(iters.size() == 5);
  }

  const auto embedding = (dir / "embedding.json").string();
  CHECK(run({"render", embedding, "--style", "kelp", "--gallery", "--out", dir.string()}).code ==
        0);
  CHECK(fs::exists(dir / "gallery.html"));
  const auto metrics = run({"metrics", embedding, "--out", dir.string()});
  CHECK(metrics.code == 0);
  CHECK(fs::exists(dir / "metrics.json"));
  CHECK(fs::exists(dir / "metrics.csv"));
  fs::remove_all(dir);
}

TEST_CASE("metrics of a single hexagon") {
  const auto dir = fresh_dir("hexagon");
  write_text_file(dir / "embedding.json", R"({
    "system": {"elements": [{"id": "a", "label": "A", "base": "S"}], "overlays": {}},
    "grid": {"kind": "hex", "rows": 1, "cols": 1},
    "variant": "mse",
    "assignment": {"a": 0}})");
  const auto r = run({"metrics", (dir / "embedding.json").string(), "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("pp_c1 0.9069") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("compare writes six rows") {
  const auto dir = fresh_dir("compare");
  write_text_file(dir / "elements.csv", "id,label,base_set\na,A,X\nb,B,X\nc,C,Y\n");
  write_text_file(dir / "overlays.csv", "set,element_id\nP,b\nP,c\n");
  const auto r = run({"compare", "--elements", (dir / "elements.csv").string(), "--overlays",
                      (dir / "overlays.csv").string(), "--gap", "0", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto csv = read_text_file(dir / "compare.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  CHECK(csv.find("error") == std::string::npos);
  fs::remove_all(dir);
}
