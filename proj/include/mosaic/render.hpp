#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mosaic/grid.hpp"
#include "mosaic/setsystem.hpp"
#include "mosaic/solver.hpp"

namespace mosaic {

struct FontRange {
  double max_size = 0.34;  // layout units
  double min_size = 0.12;
};

// Lengths are in layout units (cell edge length = 1).
struct StyleSheet {
  double cell_spacing = 0.06;
  double boundary_thickness = 0.05;
  std::vector<std::string> base_palette;
  std::vector<std::string> overlay_palette;
  FontRange font;
  std::vector<std::string> overlay_order;  // empty: declaration order
  int gradient_steps = 3;                  // cap on darkening levels
  double scale = 40.0;                     // pixels per layout unit
  double margin = 0.5;
};

StyleSheet default_style();

struct SvgDocument {
  double width = 0.0;   // pixels
  double height = 0.0;
  std::string base_layer;
  std::vector<std::pair<std::string, std::string>> overlay_layers;  // set name, markup
  std::string label_layer;
  std::vector<std::string> warnings;

  // Pixel frame.
  double origin_x = 0.0;
  double origin_y = 0.0;
  double scale = 1.0;
  // Boundaries already drawn along each (cell id, side), and sets already
  // drawn through each Kelp node and edge.
  std::map<std::pair<int, int>, int> boundary_use;
  std::map<int, int> node_use;
  std::map<std::pair<int, int>, int> edge_use;

  std::string to_svg() const;
  // Same document with only the named overlay layers.
  std::string to_svg(const std::vector<std::string>& overlays) const;
};

// One polygon per occupied cell, inset by half the spacing and filled with
// the color of the element's base set.
SvgDocument render_base_map(const Embedding& embedding, const SetSystem& system,
                            const HostGrid& grid, const StyleSheet& style);

// Closed paths along the inner side of each selected overlay's region, one
// path per connected component with holes as subpaths.
SvgDocument render_boundary_overlays(SvgDocument doc, const Embedding& embedding,
                                     const SetSystem& system, const HostGrid& grid,
                                     const StyleSheet& style,
                                     const std::vector<std::string>& selected);

// Circles at cell centers joined by segments along the positive flow arcs.
SvgDocument render_kelp_overlays(SvgDocument doc, const Embedding& embedding,
                                 const SetSystem& system, const HostGrid& grid,
                                 const StyleSheet& style,
                                 const std::vector<std::string>& selected);

// One global font size for all labels. Labels sit below the cell center when
// `below_center` is set (Kelp style).
SvgDocument place_labels(SvgDocument doc, const Embedding& embedding, const SetSystem& system,
                         const HostGrid& grid, const StyleSheet& style, bool below_center);

struct LabelLayout {
  double font_size = 0.0;
  std::map<std::string, std::vector<std::string>> lines;  // element id -> lines
  std::vector<std::string> warnings;
};

LabelLayout fit_labels(const SetSystem& system, GridKind kind, const StyleSheet& style,
                       bool below_center);

// Writes basemap.svg, overlay_<name>.svg per overlay and gallery.html.
// Returns the written paths.
std::vector<std::filesystem::path> export_gallery(const SvgDocument& doc,
                                                  const std::filesystem::path& out_dir);

// File-name-safe form of a set name.
std::string sanitize_name(std::string_view name);

}  // namespace mosaic
