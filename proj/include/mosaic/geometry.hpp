#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace mosaic {

// Grid cell identifier: row * cols + col of the unrestricted grid. Stays
// stable when a grid is restricted to a subset of its cells.
enum class CellId : std::int32_t {};

constexpr std::int32_t to_int(CellId id) { return static_cast<std::int32_t>(id); }
constexpr CellId cell_id(std::int32_t value) { return static_cast<CellId>(value); }

// Layout-unit coordinates; the cell edge length is 1.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2 a, Point2 b) = default;
};

inline double squared_distance(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point2 a, Point2 b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace mosaic
