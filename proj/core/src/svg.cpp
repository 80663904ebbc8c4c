#include "soliton/svg.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "soliton/io.hpp"

namespace soliton {

std::pair<double, double> project2(const Vector& v) {
  if (v.dim() < 2) throw DimensionError("rendering needs at least two coordinates");
  return {v[0], v[1]};
}

const std::string& palette_color(std::size_t index) {
  static const std::array<std::string, 6> colors = {
      "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
  };
  return colors[index % colors.size()];
}

void SvgBuilder::track(const std::vector<std::pair<double, double>>& pts) {
  for (const auto& [x, y] : pts) {
    if (!has_bounds_) {
      min_x_ = max_x_ = x;
      min_y_ = max_y_ = y;
      has_bounds_ = true;
    } else {
      min_x_ = std::min(min_x_, x);
      max_x_ = std::max(max_x_, x);
      min_y_ = std::min(min_y_, y);
      max_y_ = std::max(max_y_, y);
    }
  }
}

void SvgBuilder::add_polyline(const std::vector<std::pair<double, double>>& pts,
                              const std::string& color) {
  if (pts.empty()) return;
  Shape s;
  s.is_path = false;
  s.color = color;
  s.pts.reserve(pts.size());
  for (const auto& [x, y] : pts) s.pts.emplace_back(x, -y);
  track(s.pts);
  shapes_.push_back(std::move(s));
}

void SvgBuilder::add_path(const std::vector<std::pair<double, double>>& pts,
                          const std::string& color) {
  if (pts.empty()) return;
  Shape s;
  s.is_path = true;
  s.color = color;
  s.pts.reserve(pts.size());
  for (const auto& [x, y] : pts) s.pts.emplace_back(x, -y);
  track(s.pts);
  shapes_.push_back(std::move(s));
}

std::string SvgBuilder::str() const {
  double min_x = has_bounds_ ? min_x_ : 0.0;
  double max_x = has_bounds_ ? max_x_ : 1.0;
  double min_y = has_bounds_ ? min_y_ : 0.0;
  double max_y = has_bounds_ ? max_y_ : 1.0;
  double width = max_x - min_x;
  double height = max_y - min_y;
  if (width <= 0.0) width = 1.0;
  if (height <= 0.0) height = 1.0;
  const double margin_x = 0.05 * width;
  const double margin_y = 0.05 * height;
  min_x -= margin_x;
  min_y -= margin_y;
  width += 2.0 * margin_x;
  height += 2.0 * margin_y;
  const double stroke = 0.004 * std::max(width, height);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
     << format_double(min_x) << ' ' << format_double(min_y) << ' ' << format_double(width) << ' '
     << format_double(height) << "\">\n";
  for (const Shape& s : shapes_) {
    if (s.is_path) {
      os << "  <path fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
         << format_double(stroke) << "\" d=\"";
      for (std::size_t i = 0; i < s.pts.size(); ++i) {
        os << (i == 0 ? "M " : " L ") << format_double(s.pts[i].first) << ' '
           << format_double(s.pts[i].second);
      }
      os << "\"/>\n";
    } else {
      os << "  <polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\""
         << format_double(stroke) << "\" points=\"";
      for (std::size_t i = 0; i < s.pts.size(); ++i) {
        os << (i == 0 ? "" : " ") << format_double(s.pts[i].first) << ','
           << format_double(s.pts[i].second);
      }
      os << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace soliton
