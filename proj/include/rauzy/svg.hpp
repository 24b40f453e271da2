#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rauzy/fractal.hpp"

namespace rauzy {

struct RenderSpec {
  std::array<std::string, 3> color_by_type{"#e34a33", "#4575b4", "#fdae61"};
  double stroke_width = 0.0;  // in output pixels; 0 disables outlines
  std::string stroke = "#333333";
  std::string background = "#ffffff";
  bool mark_origin = true;
  double width = 600;  // pixels; height follows the aspect ratio
  double margin = 10;

  void validate() const {
    if (color_by_type[0] == color_by_type[1] || color_by_type[1] == color_by_type[2] ||
        color_by_type[0] == color_by_type[2])
      throw std::invalid_argument("face type colors must be distinct");
  }
};

namespace detail {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// kinds[k] is the face type of polygons[k].
inline std::string render_polygons(const std::vector<Quad>& polygons, const std::vector<int>& kinds,
                                   const RenderSpec& spec) {
  spec.validate();
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
  double x1 = -x0, y1 = -x0;
  auto grow = [&](const Point2& p) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  };
  for (const auto& q : polygons)
    for (const auto& p : q) grow(p);
  if (spec.mark_origin || polygons.empty()) grow({0, 0});
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double scale = (spec.width - 2 * spec.margin) / span;
  const double height = (y1 - y0) * scale + 2 * spec.margin;
  // y axis flipped so the second coordinate points up
  auto X = [&](double x) { return spec.margin + (x - x0) * scale; };
  auto Y = [&](double y) { return spec.margin + (y1 - y) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(spec.width)
     << "\" height=\"" << fmt(height) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"" << spec.background << "\"/>\n";
  for (std::size_t k = 0; k < polygons.size(); ++k) {
    const auto& q = polygons[k];
    os << "<polygon points=\"";
    for (int c = 0; c < 4; ++c) os << (c ? " " : "") << fmt(X(q[c][0])) << ',' << fmt(Y(q[c][1]));
    os << "\" fill=\"" << spec.color_by_type[kinds[k] - 1] << '"';
    if (spec.stroke_width > 0)
      os << " stroke=\"" << spec.stroke << "\" stroke-width=\"" << fmt(spec.stroke_width) << '"';
    os << "/>\n";
  }
  if (spec.mark_origin) {
    const double s = 5, ox = X(0), oy = Y(0);
    os << "<path d=\"M" << fmt(ox - s) << ',' << fmt(oy - s) << " L" << fmt(ox + s) << ','
       << fmt(oy + s) << " M" << fmt(ox - s) << ',' << fmt(oy + s) << " L" << fmt(ox + s) << ','
       << fmt(oy - s) << "\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace detail

// SVG 1.1 document of the approximant, viewport fitted to the polygons.
inline std::string render_svg(const Approximant& a, const RenderSpec& spec = {}) {
  std::vector<int> kinds;
  kinds.reserve(a.source_faces.size());
  for (const auto& f : a.source_faces) kinds.push_back(f.kind);
  return detail::render_polygons(a.polygons, kinds, spec);
}

// Library patterns side by side, each projected along (1,1,1).
inline std::string render_library_svg(const std::vector<Pattern>& protos, RenderSpec spec = {}) {
  const Vec3 b1{1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0};
  const Vec3 b2{1 / std::sqrt(6.0), 1 / std::sqrt(6.0), -2 / std::sqrt(6.0)};
  std::vector<Quad> polygons;
  std::vector<int> kinds;
  double cursor = 0;
  for (const auto& p : protos) {
    const std::size_t first = polygons.size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& f : p) {
      Quad q;
      const auto c = face_corners(f);
      for (int k = 0; k < 4; ++k) {
        const Vec3 x = vec::of(c[k]);
        q[k] = {vec::dot(x, b1), vec::dot(x, b2)};
        lo = std::min(lo, q[k][0]);
        hi = std::max(hi, q[k][0]);
      }
      polygons.push_back(q);
      kinds.push_back(f.kind);
    }
    for (std::size_t k = first; k < polygons.size(); ++k)
      for (auto& pt : polygons[k]) pt[0] += cursor - lo;
    cursor += (hi - lo) + 1.0;
  }
  spec.mark_origin = false;
  if (spec.stroke_width <= 0) spec.stroke_width = 1;
  return detail::render_polygons(polygons, kinds, spec);
}

}  // namespace rauzy
