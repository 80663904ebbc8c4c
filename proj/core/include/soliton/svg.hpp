#pragma once

#include <string>
#include <utility>
#include <vector>

#include "soliton/linalg.hpp"

namespace soliton {

/// Minimal deterministic SVG 1.1 writer for figure-style output: polylines for
/// polygons, segment paths for curves, viewBox auto-fitted with a 5% margin.
class SvgBuilder {
 public:
  void add_polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color);
  void add_path(const std::vector<std::pair<double, double>>& pts, const std::string& color);

  bool empty() const { return shapes_.empty(); }

  std::string str() const;

 private:
  struct Shape {
    bool is_path = false;
    std::vector<std::pair<double, double>> pts;  // y already flipped for screen space
    std::string color;
  };

  void track(const std::vector<std::pair<double, double>>& pts);

  std::vector<Shape> shapes_;
  double min_x_ = 0.0, max_x_ = 0.0, min_y_ = 0.0, max_y_ = 0.0;
  bool has_bounds_ = false;
};

/// First two coordinates of a vertex, as plot coordinates.
std::pair<double, double> project2(const Vector& v);

/// Deterministic qualitative palette, cycled by index.
const std::string& palette_color(std::size_t index);

}  // namespace soliton
