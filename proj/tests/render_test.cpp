#include <filesystem>
#include <regex>

#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/io.hpp"
#include "mosaic/render.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

Embedding place(std::initializer_list<std::pair<const char*, int>> cells) {
  Embedding e;
  for (const auto& [id, cell] : cells) e.assignment[id] = cell_id(cell);
  return e;
}

// Points of every "M ... Z" loop in a path's d attribute.
std::vector<std::vector<std::pair<double, double>>> loops_of(const std::string& d) {
  std::vector<std::vector<std::pair<double, double>>> loops;
  const std::regex pt(R"(([ML])(-?[0-9.]+),(-?[0-9.]+))");
  for (auto it = std::sregex_iterator(d.begin(), d.end(), pt); it != std::sregex_iterator();
       ++it) {
    if ((*it)[1] == "M") loops.emplace_back();
    loops.back().emplace_back(std::stod((*it)[2]), std::stod((*it)[3]));
  }
  return loops;
}

}  // namespace

TEST_CASE("base map draws one polygon per element") {
  const auto sys = make_system({{"X", {"a", "b"}}, {"Y", {"c"}}});
  const HostGrid g(GridKind::Hex, 2, 2);
  const auto e = place({{"a", 0}, {"b", 1}, {"c", 3}});
  const auto doc = render_base_map(e, sys, g, default_style());
  CHECK(count(doc.base_layer, "<polygon") == 3);
  const std::regex fill("data-element=\"(\\w)\"[^>]*fill=\"(#[0-9a-f]{6})\"");
  std::map<std::string, std::string> colors;
  for (auto it = std::sregex_iterator(doc.base_layer.begin(), doc.base_layer.end(), fill);
       it != std::sregex_iterator(); ++it) {
    colors[(*it)[1]] = (*it)[2];
  }
  CHECK(colors.at("a") == colors.at("b"));
  CHECK(colors.at("a") != colors.at("c"));
}

TEST_CASE("zero spacing gives exact cell outlines") {
  const auto sys = make_system({{"X", {"a"}}});
  auto style = default_style();
  style.cell_spacing = 0.0;
  style.margin = 0.0;
  style.scale = 10.0;
  const auto doc = render_base_map(place({{"a", 0}}), sys, HostGrid(GridKind::Square, 1, 1),
                                   style);
  CHECK(doc.base_layer.find("points=\"10.00,10.00 0.00,10.00 0.00,0.00 10.00,0.00\"") !=
        std::string::npos);
  CHECK(doc.width == doctest::Approx(10.0));
}

TEST_CASE("palette exhaustion") {
  const auto sys = make_system({{"X", {"a"}}, {"Y", {"b"}}});
  auto style = default_style();
  style.base_palette.resize(1);
  try {
    render_base_map(place({{"a", 0}, {"b", 1}}), sys, HostGrid(GridKind::Square, 1, 2), style);
    FAIL("expected PaletteExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PaletteExhausted);
  }
}

TEST_CASE("boundary overlays") {
  const auto style = default_style();
  SUBCASE("one cell gives one closed path inside the cell") {
    const auto sys = make_system({{"X", {"a", "b"}}}, {{"P", {"a"}}});
    const HostGrid g(GridKind::Square, 1, 2);
    const auto e = place({{"a", 0}, {"b", 1}});
    auto doc = render_base_map(e, sys, g, style);
    doc = render_boundary_overlays(std::move(doc), e, sys, g, style, {"P"});
    REQUIRE(doc.overlay_layers.size() == 1);
    const auto& markup = doc.overlay_layers[0].second;
    CHECK(count(markup, "<path") == 1);
    const std::regex d("d=\"([^\"]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(markup, m, d));
    const auto loops = loops_of(m[1]);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].size() == 4);
    // Inset by spacing/2 + thickness/2 on every side of cell 0 (x in [-0.5, 0.5]).
    const double inset = (style.cell_spacing + style.boundary_thickness) / 2.0;
    const double lo = (style.margin + inset) * style.scale;
    const double hi = (style.margin + 1.0 - inset) * style.scale;
    for (const auto& [x, y] : loops[0]) {
      CHECK((x == doctest::Approx(lo).epsilon(1e-3) || x == doctest::Approx(hi).epsilon(1e-3)));
      CHECK((y == doctest::Approx(lo).epsilon(1e-3) || y == doctest::Approx(hi).epsilon(1e-3)));
    }
  }
  SUBCASE("a later set on a shared segment moves one thickness inward") {
    const auto sys = make_system({{"X", {"a"}}}, {{"P", {"a"}}, {"Q", {"a"}}});
    const HostGrid g(GridKind::Square, 1, 1);
    const auto e = place({{"a", 0}});
    auto doc = render_base_map(e, sys, g, style);
    doc = render_boundary_overlays(std::move(doc), e, sys, g, style, {"Q", "P"});
    REQUIRE(doc.overlay_layers.size() == 2);
    CHECK(doc.overlay_layers[0].first == "P");
    const std::regex d("d=\"([^\"]+)\"");
    std::smatch mp, mq;
    REQUIRE(std::regex_search(doc.overlay_layers[0].second, mp, d));
    REQUIRE(std::regex_search(doc.overlay_layers[1].second, mq, d));
    const auto p = loops_of(mp[1])[0];
    const auto q = loops_of(mq[1])[0];
    const double step = style.boundary_thickness * style.scale;
    double min_px = 1e9, min_qx = 1e9;
    for (auto [x, y] : p) min_px = std::min(min_px, x);
    for (auto [x, y] : q) min_qx = std::min(min_qx, x);
    CHECK(min_qx - min_px == doctest::Approx(step).epsilon(1e-2));
    // Nested boundaries are drawn darker.
    CHECK(doc.overlay_layers[0].second.find(style.overlay_palette[0]) != std::string::npos);
    CHECK(doc.overlay_layers[1].second.find(style.overlay_palette[1]) == std::string::npos);
  }
  SUBCASE("one path per component, holes as subpaths") {
    std::vector<std::string> ring;
    for (int i = 0; i < 9; ++i) ring.push_back("e" + std::to_string(i));
    std::vector<std::string> members{"e0", "e1", "e2", "e3", "e5", "e6", "e7", "e8"};
    const auto sys = make_system({{"X", ring}}, {{"R", members}, {"S", {"e0", "e2", "e8"}}});
    const HostGrid g(GridKind::Square, 3, 3);
    Embedding e;
    for (int i = 0; i < 9; ++i) e.assignment["e" + std::to_string(i)] = cell_id(i);
    auto doc = render_base_map(e, sys, g, style);
    doc = render_boundary_overlays(std::move(doc), e, sys, g, style, {"R", "S"});
    CHECK(count(doc.overlay_layers[0].second, "<path") == 1);
    const std::regex d("d=\"([^\"]+)\"");
    std::smatch m;
    REQUIRE(std::regex_search(doc.overlay_layers[0].second, m, d));
    CHECK(loops_of(m[1]).size() == 2);
    CHECK(count(doc.overlay_layers[1].second, "<path") == 3);
  }
  SUBCASE("unknown and base sets are rejected") {
    const auto sys = make_system({{"X", {"a"}}}, {{"P", {"a"}}});
    const HostGrid g(GridKind::Square, 1, 1);
    const auto e = place({{"a", 0}});
    const auto doc = render_base_map(e, sys, g, style);
    CHECK_THROWS_AS(render_boundary_overlays(doc, e, sys, g, style, {"Z"}), Error);
    CHECK_THROWS_AS(render_boundary_overlays(doc, e, sys, g, style, {"X"}), Error);
  }
}

TEST_CASE("hex boundary follows the region outline") {
  const auto sys = make_system({{"X", {"a", "b", "c"}}}, {{"P", {"a", "b", "c"}}});
  const HostGrid g(GridKind::Hex, 2, 2);
  const auto e = place({{"a", 0}, {"b", 1}, {"c", 2}});
  auto style = default_style();
  auto doc = render_base_map(e, sys, g, style);
  doc = render_boundary_overlays(std::move(doc), e, sys, g, style, {"P"});
  const std::regex d("d=\"([^\"]+)\"");
  std::smatch m;
  REQUIRE(std::regex_search(doc.overlay_layers[0].second, m, d));
  const auto loops = loops_of(m[1]);
  REQUIRE(loops.size() == 1);
  // Three mutually adjacent hexagons: 18 - 2*3 = 12 boundary sides, all
  // with different directions at each joint.
  CHECK(loops[0].size() == 12);
}

TEST_CASE("kelp overlays") {
  const auto style = default_style();
  const auto sys = make_system({{"X", {"a", "b", "c"}}}, {{"P", {"a"}}, {"Q", {"a", "b"}}});
  const HostGrid g(GridKind::Square, 1, 3);
  auto e = place({{"a", 0}, {"b", 1}, {"c", 2}});
  e.flows["P"] = {};
  e.flows["Q"] = {Flow{cell_id(1), cell_id(0), 1}};
  auto doc = render_base_map(e, sys, g, style);
  doc = render_kelp_overlays(std::move(doc), e, sys, g, style, {"P", "Q"});
  CHECK(count(doc.overlay_layers[0].second, "<circle") == 1);
  CHECK(count(doc.overlay_layers[0].second, "<line") == 0);
  CHECK(count(doc.overlay_layers[1].second, "<circle") == 2);
  CHECK(count(doc.overlay_layers[1].second, "<line") == 1);
  // Cell 0 holds a circle of P and a smaller one of Q.
  const std::regex r("cx=\"([0-9.]+)\" cy=\"[0-9.]+\" r=\"([0-9.]+)\"");
  std::map<std::string, std::vector<double>> radii;
  for (const auto& [name, markup] : doc.overlay_layers) {
    for (auto it = std::sregex_iterator(markup.begin(), markup.end(), r);
         it != std::sregex_iterator(); ++it) {
      radii[(*it)[1]].push_back(std::stod((*it)[2]));
    }
  }
  const auto& shared = radii.begin()->second;
  REQUIRE(shared.size() == 2);
  CHECK(shared[1] < shared[0]);

  e.flows.erase("Q");
  try {
    render_kelp_overlays(render_base_map(e, sys, g, style), e, sys, g, style, {"Q"});
    FAIL("expected MissingFlows");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::MissingFlows);
  }
}

TEST_CASE("label fitting") {
  auto style = default_style();
  SUBCASE("short labels keep the largest size") {
    const auto sys = make_system({{"X", {"a", "b"}}});
    const auto layout = fit_labels(sys, GridKind::Hex, style, false);
    CHECK(layout.font_size == doctest::Approx(style.font.max_size));
    CHECK(layout.warnings.empty());
  }
  SUBCASE("an unbreakable long label ends at the minimum with a warning") {
    SetSystem sys({{"a", std::string(80, 'W')}}, {{"X", {"a"}, SetKind::Base}});
    const auto layout = fit_labels(sys, GridKind::Square, style, false);
    CHECK(layout.font_size == doctest::Approx(style.font.min_size));
    CHECK(layout.warnings.size() == 1);
  }
  SUBCASE("a two-word label breaks at the space") {
    SetSystem sys({{"a", "Data Science"}}, {{"X", {"a"}, SetKind::Base}});
    const auto layout = fit_labels(sys, GridKind::Square, style, false);
    CHECK(layout.lines.at("a") == std::vector<std::string>{"Data", "Science"});
  }
  SUBCASE("delimiters are break points") {
    SetSystem sys({{"a", "Bio-Informatics"}}, {{"X", {"a"}, SetKind::Base}});
    const auto layout = fit_labels(sys, GridKind::Square, style, false);
    CHECK(layout.lines.at("a") == std::vector<std::string>{"Bio-", "Informatics"});
  }
}

TEST_CASE("documents are deterministic and layers are independent") {
  const auto sys = make_system({{"X", {"a", "b", "c"}}, {"Y", {"d"}}},
                               {{"P", {"a", "b"}}, {"Q", {"b", "d"}}});
  const HostGrid g(GridKind::Hex, 3, 3);
  const auto e = place({{"a", 0}, {"b", 1}, {"c", 3}, {"d", 2}});
  const auto style = default_style();
  auto render = [&](std::vector<std::string> sel) {
    auto doc = render_base_map(e, sys, g, style);
    doc = render_boundary_overlays(std::move(doc), e, sys, g, style, sel);
    return place_labels(std::move(doc), e, sys, g, style, false);
  };
  CHECK(render({"P", "Q"}).to_svg() == render({"P", "Q"}).to_svg());
  CHECK(render({"P"}).base_layer == render({}).base_layer);
  CHECK(render({"P"}).label_layer == render({"Q"}).label_layer);
}

TEST_CASE("gallery export") {
  const auto sys = make_system({{"X", {"a", "b", "c"}}},
                               {{"P 1", {"a"}}, {"Q", {"b"}}, {"R", {"c"}}});
  const HostGrid g(GridKind::Square, 1, 3);
  const auto e = place({{"a", 0}, {"b", 1}, {"c", 2}});
  const auto style = default_style();
  const auto dir = std::filesystem::temp_directory_path() / "mosaic-gallery-test";
  std::filesystem::remove_all(dir);

  auto doc = render_base_map(e, sys, g, style);
  doc = render_boundary_overlays(std::move(doc), e, sys, g, style, {"P 1", "Q", "R"});
  doc = place_labels(std::move(doc), e, sys, g, style, false);
  const auto files = export_gallery(doc, dir);
  CHECK(files.size() == 5);
  const auto html = read_text_file(dir / "gallery.html");
  CHECK(count(html, "type=\"checkbox\"") == 3);
  CHECK(count(html, "class=\"overlay\"") == 3);
  CHECK(std::filesystem::exists(dir / "overlay_P_1.svg"));

  // Every per-overlay file carries the same base layer.
  const auto base_of = [](const std::string& svg) {
    const auto a = svg.find("<g id=\"base\">");
    return svg.substr(a, svg.find("</g>", a) - a);
  };
  const auto base = base_of(read_text_file(dir / "basemap.svg"));
  for (const char* name : {"overlay_P_1.svg", "overlay_Q.svg", "overlay_R.svg"}) {
    CHECK(base_of(read_text_file(dir / name)) == base);
  }

  auto bare = render_base_map(e, sys, g, style);
  const auto empty_dir = dir / "empty";
  export_gallery(bare, empty_dir);
  CHECK(count(read_text_file(empty_dir / "gallery.html"), "type=\"checkbox\"") == 0);
  std::filesystem::remove_all(dir);
}
