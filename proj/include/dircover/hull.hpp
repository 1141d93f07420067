#pragma once

// Convex hull (Andrew's monotone chain) and nearest-point projection.

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"

namespace dircover {

inline double orientation(Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); }

/// Counterclockwise hull without collinear points. Collinear input yields
/// the two extreme points; a single distinct point yields itself.
inline std::vector<Point2> convex_hull(std::span<const Point2> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: no points");
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline Point2 closest_on_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

/// True when p lies inside or on a counterclockwise polygon.
inline bool hull_contains(std::span<const Point2> hull, Point2 p) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (orientation(hull[i], hull[(i + 1) % hull.size()], p) < 0.0) return false;
  return true;
}

/// Nearest point of the hull (as a filled region) to p.
inline Point2 project_to_hull(Point2 p, std::span<const Point2> hull) {
  if (hull.empty()) throw std::invalid_argument("project_to_hull: empty hull");
  if (hull.size() == 1) return hull.front();
  if (hull_contains(hull, p)) return p;
  Point2 best = hull.front();
  double best_d2 = std::numeric_limits<double>::infinity();
  const std::size_t edges = hull.size() == 2 ? 1 : hull.size();
  for (std::size_t i = 0; i < edges; ++i) {
    const Point2 q = closest_on_segment(p, hull[i], hull[(i + 1) % hull.size()]);
    const double d2 = squared_distance(p, q);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

}  // namespace dircover
