#include "mosaic/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "mosaic/error.hpp"
#include "mosaic/metrics.hpp"

namespace mosaic {

StyleSheet default_style() {
  StyleSheet style;
  style.base_palette = {"#fbb4ae", "#b3cde3", "#ccebc5", "#decbe4",
                        "#fed9a6", "#ffffcc", "#e5d8bd", "#fddaec"};
  style.overlay_palette = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                           "#ff7f00", "#a65628", "#f781bf", "#17becf"};
  return style;
}

namespace {

constexpr double kShareFactor = 0.7;
constexpr double kKelpRadius = 0.28;
constexpr double kKelpWidth = 0.14;
constexpr double kDarkenStep = 0.12;
constexpr double kCharWidth = 0.6;   // of the font size
constexpr double kLineHeight = 1.2;  // of the font size
constexpr double kFontStep = 0.01;

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Outer vertex of the cell polygon of unit edge length, scaled by `factor`.
// Side k runs from vertex k to vertex k + 1.
std::vector<Point2> cell_polygon(GridKind kind, Point2 center, double factor) {
  std::vector<Point2> out;
  const int sides = kind == GridKind::Hex ? 6 : 4;
  const double start = kind == GridKind::Hex ? 30.0 : 45.0;
  const double radius = kind == GridKind::Hex ? 1.0 : std::numbers::sqrt2 / 2.0;
  for (int k = 0; k < sides; ++k) {
    const double a = (start + 360.0 * k / sides) * std::numbers::pi / 180.0;
    out.push_back({center.x + factor * radius * std::cos(a),
                   center.y + factor * radius * std::sin(a)});
  }
  return out;
}

double apothem(GridKind kind) { return kind == GridKind::Hex ? std::sqrt(3.0) / 2.0 : 0.5; }

double inset_factor(GridKind kind, double spacing) {
  return std::max(0.0, (apothem(kind) - spacing / 2.0) / apothem(kind));
}

// Lattice offset (d_row, d_col) of the neighbor across each side.
std::vector<std::pair<int, int>> side_offsets(const HostGrid& grid) {
  const auto origin = grid.lattice_center(0, 0);
  const auto poly = cell_polygon(grid.kind(), origin, 1.0);
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const auto mid = 0.5 * (poly[k] + poly[(k + 1) % poly.size()]);
    const auto target = origin + 2.0 * (mid - origin);
    for (auto [dr, dc] : neighbor_offsets(grid.kind())) {
      if (distance(grid.lattice_center(dr, dc), target) < 1e-9) {
        out.emplace_back(dr, dc);
        break;
      }
    }
  }
  return out;
}

Point2 center_of(const HostGrid& grid, CellId id) {
  const int raw = to_int(id);
  return grid.lattice_center(raw / grid.cols(), raw % grid.cols());
}

std::string darken(const std::string& hex, int levels) {
  unsigned r = 0, g = 0, b = 0;
  if (hex.size() != 7 || std::sscanf(hex.c_str(), "#%02x%02x%02x", &r, &g, &b) != 3) {
    throw Error(ErrorCode::InvalidArgument, "color '" + hex + "' is not #rrggbb");
  }
  const double f = 1.0 - kDarkenStep * levels;
  auto scaled = [f](unsigned c) { return static_cast<unsigned>(std::lround(c * f)); };
  return fmt::format("#{:02x}{:02x}{:02x}", scaled(r), scaled(g), scaled(b));
}

struct Frame {
  double origin_x, origin_y, scale;
  double x(double v) const { return (v - origin_x) * scale; }
  double y(double v) const { return (v - origin_y) * scale; }
};

Frame frame_of(const SvgDocument& doc) { return {doc.origin_x, doc.origin_y, doc.scale}; }

std::string points_attr(const Frame& f, const std::vector<Point2>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ' ';
    out += fmt::format("{:.2f},{:.2f}", f.x(p.x), f.y(p.y));
  }
  return out;
}

// Overlay sets to draw, in drawing order.
std::vector<std::size_t> ordered_selection(const SetSystem& system, const StyleSheet& style,
                                           const std::vector<std::string>& selected) {
  std::set<std::size_t> wanted;
  for (const auto& name : selected) {
    const auto s = system.find_set(name);
    if (!s || system.sets()[*s].kind != SetKind::Overlay) {
      throw Error(ErrorCode::UnknownSet, "'" + name + "' is not an overlay set");
    }
    wanted.insert(*s);
  }
  std::vector<std::size_t> order;
  if (style.overlay_order.empty()) {
    order = system.overlay_set_indices();
  } else {
    for (const auto& name : style.overlay_order) {
      const auto s = system.find_set(name);
      if (!s || system.sets()[*s].kind != SetKind::Overlay) {
        throw Error(ErrorCode::UnknownSet, "'" + name + "' in overlay order is not an overlay");
      }
      order.push_back(*s);
    }
    // Overlays missing from the explicit order follow in declaration order.
    for (auto s : system.overlay_set_indices()) {
      if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);
    }
  }
  std::vector<std::size_t> out;
  for (auto s : order) {
    if (wanted.count(s)) out.push_back(s);
  }
  return out;
}

std::string overlay_color(const SetSystem& system, const StyleSheet& style, std::size_t set) {
  const auto overlays = system.overlay_set_indices();
  const auto pos = static_cast<std::size_t>(
      std::find(overlays.begin(), overlays.end(), set) - overlays.begin());
  if (pos >= style.overlay_palette.size()) {
    throw Error(ErrorCode::PaletteExhausted,
                fmt::format("{} overlay colors for {} overlays", style.overlay_palette.size(),
                            overlays.size()));
  }
  return style.overlay_palette[pos];
}

struct Segment {
  int cell = 0;
  int side = 0;
  Point2 a;
  Point2 b;
  Point2 inward;  // unit normal toward the cell center
  double offset = 0.0;
};

std::pair<long long, long long> key_of(Point2 p) {
  return {std::llround(p.x * 1e6), std::llround(p.y * 1e6)};
}

double cross(Point2 u, Point2 v) { return u.x * v.y - u.y * v.x; }

// Links boundary segments into closed loops. At a vertex shared by several
// loops the walk stays on the current cell when it can.
std::vector<std::vector<Segment>> link_loops(const std::vector<Segment>& segments) {
  std::multimap<std::pair<long long, long long>, std::size_t> starting_at;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    starting_at.emplace(key_of(segments[i].a), i);
  }
  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<Segment>> loops;
  for (std::size_t first = 0; first < segments.size(); ++first) {
    if (used[first]) continue;
    std::vector<Segment> loop;
    std::size_t cur = first;
    while (!used[cur]) {
      used[cur] = true;
      loop.push_back(segments[cur]);
      const auto [lo, hi] = starting_at.equal_range(key_of(segments[cur].b));
      std::size_t next = segments.size();
      for (auto it = lo; it != hi; ++it) {
        if (used[it->second] && it->second != first) continue;
        if (next == segments.size() || segments[it->second].cell == segments[cur].cell) {
          next = it->second;
        }
      }
      if (next == segments.size()) {
        throw Error(ErrorCode::InvalidArgument, "open boundary while tracing region");
      }
      cur = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<Point2> offset_loop(const std::vector<Segment>& loop) {
  std::vector<Point2> pts;
  const std::size_t m = loop.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& s = loop[i];
    const auto& t = loop[(i + 1) % m];
    const Point2 p1 = s.a + s.offset * s.inward;
    const Point2 d1 = s.b - s.a;
    const Point2 p2 = t.a + t.offset * t.inward;
    const Point2 d2 = t.b - t.a;
    const double denom = cross(d1, d2);
    if (std::abs(denom) < 1e-12) {
      const Point2 end = s.b + s.offset * s.inward;
      if (std::abs(s.offset - t.offset) < 1e-12) continue;
      pts.push_back(end);
      pts.push_back(p2);
      continue;
    }
    const double u = cross(p2 - p1, d2) / denom;
    pts.push_back(p1 + u * d1);
  }
  return pts;
}

std::string path_data(const Frame& f, const std::vector<std::vector<Point2>>& loops) {
  std::string d;
  for (const auto& loop : loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      d += fmt::format("{}{:.2f},{:.2f} ", i == 0 ? "M" : "L", f.x(loop[i].x), f.y(loop[i].y));
    }
    d += "Z ";
  }
  if (!d.empty()) d.pop_back();
  return d;
}

std::vector<std::string> split_tokens(const std::string& label) {
  // Breaks after whitespace and after delimiter characters; the delimiter
  // stays on the line it ends.
  static const std::string kDelims = "-/_,;:.&+";
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : label) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
    if (kDelims.find(c) != std::string::npos) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

double text_width(std::string_view text, double size) {
  return kCharWidth * size * static_cast<double>(text.size());
}

// Greedy wrap into lines no wider than `width`; the space between tokens
// is restored unless the previous token ended in a delimiter.
std::vector<std::string> wrap(const std::string& label, double size, double width) {
  const auto tokens = split_tokens(label);
  std::vector<std::string> lines;
  std::string cur;
  for (const auto& tok : tokens) {
    const bool glue = !cur.empty() && std::isalnum(static_cast<unsigned char>(cur.back()));
    const std::string candidate = cur.empty() ? tok : cur + (glue ? " " : "") + tok;
    if (!cur.empty() && text_width(candidate, size) > width) {
      lines.push_back(cur);
      cur = tok;
    } else {
      cur = candidate;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

// Width and height of the text box inside one inset cell.
std::pair<double, double> label_box(GridKind kind, const StyleSheet& style, bool below_center) {
  const double f = inset_factor(kind, style.cell_spacing);
  double w = 0.0;
  double h = 0.0;
  if (kind == GridKind::Hex) {
    w = std::sqrt(3.0) * f * 0.9;
    h = f * 1.0;
  } else {
    w = f * 0.9;
    h = f * 0.9;
  }
  if (below_center) h *= 0.45;
  return {w, h};
}

}  // namespace

LabelLayout fit_labels(const SetSystem& system, GridKind kind, const StyleSheet& style,
                       bool below_center) {
  if (!(style.font.max_size >= style.font.min_size) || style.font.min_size <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "font sizes must satisfy max >= min > 0");
  }
  const auto [w, h] = label_box(kind, style, below_center);
  auto layout_at = [&](double size, bool& all_fit) {
    std::map<std::string, std::vector<std::string>> lines;
    all_fit = true;
    for (const auto& e : system.elements()) {
      std::vector<std::string> ls{e.label};
      if (text_width(e.label, size) > w) ls = wrap(e.label, size, w);
      double widest = 0.0;
      for (const auto& l : ls) widest = std::max(widest, text_width(l, size));
      if (widest > w + 1e-12 || kLineHeight * size * ls.size() > h + 1e-12) all_fit = false;
      lines[e.id] = std::move(ls);
    }
    return lines;
  };

  LabelLayout out;
  const int steps = static_cast<int>(
      std::floor((style.font.max_size - style.font.min_size) / kFontStep + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double size = style.font.max_size - i * kFontStep;
    bool fit = false;
    auto lines = layout_at(size, fit);
    if (fit) {
      out.font_size = size;
      out.lines = std::move(lines);
      return out;
    }
  }
  bool fit = false;
  out.font_size = style.font.min_size;
  out.lines = layout_at(out.font_size, fit);
  for (const auto& e : system.elements()) {
    const auto& ls = out.lines[e.id];
    double widest = 0.0;
    for (const auto& l : ls) widest = std::max(widest, text_width(l, out.font_size));
    if (widest > w + 1e-12 || kLineHeight * out.font_size * ls.size() > h + 1e-12) {
      out.warnings.push_back("label of '" + e.id + "' overflows its cell at the minimum size");
    }
  }
  return out;
}

SvgDocument render_base_map(const Embedding& embedding, const SetSystem& system,
                            const HostGrid& grid, const StyleSheet& style) {
  if (style.cell_spacing < 0.0 || style.cell_spacing >= grid.metrics().edge_length) {
    throw Error(ErrorCode::InvalidArgument, "cell spacing must lie in [0, edge length)");
  }
  const auto bases = system.base_set_indices();
  if (bases.size() > style.base_palette.size()) {
    throw Error(ErrorCode::PaletteExhausted,
                fmt::format("{} base colors for {} base sets", style.base_palette.size(),
                            bases.size()));
  }

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& [id, cell] : embedding.assignment) {
    for (const auto& p : cell_polygon(grid.kind(), center_of(grid, cell), 1.0)) {
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
  }
  if (embedding.assignment.empty()) min_x = min_y = max_x = max_y = 0.0;

  SvgDocument doc;
  doc.scale = style.scale;
  doc.origin_x = min_x - style.margin;
  doc.origin_y = min_y - style.margin;
  doc.width = (max_x - min_x + 2.0 * style.margin) * style.scale;
  doc.height = (max_y - min_y + 2.0 * style.margin) * style.scale;
  const Frame f = frame_of(doc);

  const double inset = inset_factor(grid.kind(), style.cell_spacing);
  for (const auto& e : system.elements()) {
    auto it = embedding.assignment.find(e.id);
    if (it == embedding.assignment.end()) {
      throw Error(ErrorCode::UnknownElement, "element '" + e.id + "' is not embedded");
    }
    const auto base = system.base_set_of(system.element_index(e.id));
    const auto color_index =
        static_cast<std::size_t>(std::find(bases.begin(), bases.end(), base) - bases.begin());
    doc.base_layer += fmt::format(
        "<polygon class=\"cell\" data-element=\"{}\" points=\"{}\" fill=\"{}\"/>\n",
        xml_escape(e.id), points_attr(f, cell_polygon(grid.kind(), center_of(grid, it->second),
                                                       inset)),
        style.base_palette[color_index]);
  }
  return doc;
}

SvgDocument render_boundary_overlays(SvgDocument doc, const Embedding& embedding,
                                     const SetSystem& system, const HostGrid& grid,
                                     const StyleSheet& style,
                                     const std::vector<std::string>& selected) {
  const Frame f = frame_of(doc);
  const auto sides = side_offsets(grid);
  for (auto s : ordered_selection(system, style, selected)) {
    const auto& name = system.sets()[s].name;
    const auto color = overlay_color(system, style, s);
    const auto cells = cells_of_set(embedding, system, s);
    const std::set<CellId> in(cells.begin(), cells.end());

    std::string markup;
    std::vector<std::pair<int, int>> drawn;
    for (const auto& comp : components(grid, cells)) {
      std::vector<Segment> segments;
      int depth = 0;
      for (auto cell : comp) {
        const int raw = to_int(cell);
        const int row = raw / grid.cols();
        const int col = raw % grid.cols();
        const auto center = center_of(grid, cell);
        const auto poly = cell_polygon(grid.kind(), center, 1.0);
        for (std::size_t k = 0; k < sides.size(); ++k) {
          const int r = row + sides[k].first;
          const int c = col + sides[k].second;
          const bool inside = r >= 0 && r < grid.rows() && c >= 0 && c < grid.cols() &&
                              in.count(cell_id(r * grid.cols() + c));
          if (inside) continue;
          Segment seg;
          seg.cell = raw;
          seg.side = static_cast<int>(k);
          seg.a = poly[k];
          seg.b = poly[(k + 1) % poly.size()];
          const auto mid = 0.5 * (seg.a + seg.b);
          const auto toward = center - mid;
          seg.inward = (1.0 / distance(center, mid)) * toward;
          const auto it = doc.boundary_use.find({raw, seg.side});
          const int used = it == doc.boundary_use.end() ? 0 : it->second;
          depth = std::max(depth, used);
          seg.offset = style.cell_spacing / 2.0 + (used + 0.5) * style.boundary_thickness;
          segments.push_back(seg);
          drawn.emplace_back(raw, seg.side);
        }
      }
      std::vector<std::vector<Point2>> loops;
      for (const auto& loop : link_loops(segments)) loops.push_back(offset_loop(loop));
      markup += fmt::format(
          "<path class=\"boundary\" data-set=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" "
          "stroke-width=\"{:.2f}\" stroke-linejoin=\"round\" fill-rule=\"evenodd\"/>\n",
          xml_escape(name), path_data(f, loops),
          darken(color, std::min(depth, style.gradient_steps)),
          style.boundary_thickness * doc.scale);
    }
    for (const auto& key : drawn) ++doc.boundary_use[key];
    doc.overlay_layers.emplace_back(name, std::move(markup));
  }
  return doc;
}

SvgDocument render_kelp_overlays(SvgDocument doc, const Embedding& embedding,
                                 const SetSystem& system, const HostGrid& grid,
                                 const StyleSheet& style,
                                 const std::vector<std::string>& selected) {
  const Frame f = frame_of(doc);
  const auto order = ordered_selection(system, style, selected);
  for (auto s : order) {
    const auto& name = system.sets()[s].name;
    if (!embedding.flows.count(name)) {
      throw Error(ErrorCode::MissingFlows,
                  "set '" + name + "' has no flows; it was solved without contiguity");
    }
  }
  for (auto s : order) {
    const auto& name = system.sets()[s].name;
    const auto color = overlay_color(system, style, s);
    std::string markup;
    for (const auto& flow : embedding.flows.at(name)) {
      const int a = std::min(to_int(flow.from), to_int(flow.to));
      const int b = std::max(to_int(flow.from), to_int(flow.to));
      const int used = doc.edge_use[{a, b}]++;
      const auto p = center_of(grid, cell_id(a));
      const auto q = center_of(grid, cell_id(b));
      markup += fmt::format(
          "<line class=\"kelp-edge\" data-set=\"{}\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" "
          "y2=\"{:.2f}\" stroke=\"{}\" stroke-width=\"{:.2f}\" stroke-linecap=\"round\"/>\n",
          xml_escape(name), f.x(p.x), f.y(p.y), f.x(q.x), f.y(q.y), color,
          kKelpWidth * std::pow(kShareFactor, used) * doc.scale);
    }
    for (auto cell : cells_of_set(embedding, system, s)) {
      const int used = doc.node_use[to_int(cell)]++;
      const auto p = center_of(grid, cell);
      markup += fmt::format(
          "<circle class=\"kelp-node\" data-set=\"{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" "
          "fill=\"{}\"/>\n",
          xml_escape(name), f.x(p.x), f.y(p.y),
          kKelpRadius * std::pow(kShareFactor, used) * doc.scale, color);
    }
    doc.overlay_layers.emplace_back(name, std::move(markup));
  }
  return doc;
}

SvgDocument place_labels(SvgDocument doc, const Embedding& embedding, const SetSystem& system,
                         const HostGrid& grid, const StyleSheet& style, bool below_center) {
  const Frame f = frame_of(doc);
  auto layout = fit_labels(system, grid.kind(), style, below_center);
  const double size = layout.font_size;
  const double shift = below_center ? 0.55 * apothem(grid.kind()) : 0.0;
  doc.label_layer.clear();
  for (const auto& e : system.elements()) {
    const auto& lines = layout.lines.at(e.id);
    const auto center = center_of(grid, embedding.assignment.at(e.id));
    // Vertically center the block of lines on the anchor.
    const double first =
        center.y + shift - 0.5 * kLineHeight * size * (static_cast<double>(lines.size()) - 1.0);
    std::string spans;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      spans += fmt::format("<tspan x=\"{:.2f}\" y=\"{:.2f}\">{}</tspan>", f.x(center.x),
                           f.y(first + kLineHeight * size * static_cast<double>(i)),
                           xml_escape(lines[i]));
    }
    doc.label_layer += fmt::format(
        "<text class=\"label\" text-anchor=\"middle\" dominant-baseline=\"central\" "
        "font-size=\"{:.2f}\">{}</text>\n",
        size * doc.scale, spans);
  }
  doc.warnings.insert(doc.warnings.end(), layout.warnings.begin(), layout.warnings.end());
  return doc;
}

std::string SvgDocument::to_svg(const std::vector<std::string>& overlays) const {
  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.2f}\" "
      "height=\"{:.2f}\" viewBox=\"0 0 {:.2f} {:.2f}\" font-family=\"sans-serif\">\n",
      width, height, width, height);
  out += "<g id=\"base\">\n" + base_layer + "</g>\n";
  out += "<g id=\"overlays\">\n";
  for (const auto& [name, markup] : overlay_layers) {
    if (std::find(overlays.begin(), overlays.end(), name) == overlays.end()) continue;
    out += fmt::format("<g class=\"overlay\" data-set=\"{}\">\n{}</g>\n", xml_escape(name),
                       markup);
  }
  out += "</g>\n";
  out += "<g id=\"labels\">\n" + label_layer + "</g>\n";
  out += "</svg>\n";
  return out;
}

std::string SvgDocument::to_svg() const {
  std::vector<std::string> all;
  for (const auto& [name, markup] : overlay_layers) all.push_back(name);
  return to_svg(all);
}

std::string sanitize_name(std::string_view name) {
  std::string out;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    out += (std::isalnum(u) || c == '-' || c == '_') ? c : '_';
  }
  return out.empty() ? "_" : out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> export_gallery(const SvgDocument& doc,
                                                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string());

  std::vector<std::filesystem::path> written;
  write_file(out_dir / "basemap.svg", doc.to_svg({}));
  written.push_back(out_dir / "basemap.svg");
  for (const auto& [name, markup] : doc.overlay_layers) {
    const auto path = out_dir / ("overlay_" + sanitize_name(name) + ".svg");
    write_file(path, doc.to_svg({name}));
    written.push_back(path);
  }

  std::string controls;
  std::string layers;
  for (std::size_t i = 0; i < doc.overlay_layers.size(); ++i) {
    const auto& [name, markup] = doc.overlay_layers[i];
    controls += fmt::format(
        "<label><input type=\"checkbox\" data-layer=\"layer-{}\" checked> {}</label>\n", i,
        xml_escape(name));
    layers += fmt::format("<g id=\"layer-{}\" class=\"overlay\" data-set=\"{}\">\n{}</g>\n", i,
                          xml_escape(name), markup);
  }
  std::string html = fmt::format(
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
      "<title>Grid map</title>\n"
      "<style>body{{font-family:sans-serif}} #controls label{{margin-right:1em}}</style>\n"
      "</head>\n<body>\n<div id=\"controls\">\n{}</div>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.2f}\" height=\"{:.2f}\" "
      "viewBox=\"0 0 {:.2f} {:.2f}\" font-family=\"sans-serif\">\n"
      "<g id=\"base\">\n{}</g>\n<g id=\"overlays\">\n{}</g>\n<g id=\"labels\">\n{}</g>\n"
      "</svg>\n"
      "<script>\n"
      "document.querySelectorAll('#controls input').forEach(function (box) {{\n"
      "  box.addEventListener('change', function () {{\n"
      "    document.getElementById(box.dataset.layer).style.display =\n"
      "      box.checked ? '' : 'none';\n"
      "  }});\n"
      "}});\n"
      "</script>\n</body>\n</html>\n",
      controls, doc.width, doc.height, doc.width, doc.height, doc.base_layer, layers,
      doc.label_layer);
  write_file(out_dir / "gallery.html", html);
  written.push_back(out_dir / "gallery.html");
  return written;
}

}  // namespace mosaic
