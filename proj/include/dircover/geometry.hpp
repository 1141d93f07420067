#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dircover {

/// Planar coordinates in miles.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double squared_distance(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double distance(Point2 a, Point2 b) { return std::sqrt(squared_distance(a, b)); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// A community represented by a disc around its center.
struct DemandPoint {
  std::string id;
  Point2 center;
  double radius = 1.0;
  double weight = 1.0;

  friend bool operator==(const DemandPoint&, const DemandPoint&) = default;
};

/// A located tower covering every point within cover_radius.
struct Facility {
  Point2 center;
  double cover_radius = 3.0;

  friend bool operator==(const Facility&, const Facility&) = default;
};

inline void validate(const DemandPoint& d) {
  if (!is_finite(d.center)) throw std::invalid_argument("demand point '" + d.id + "': non-finite center");
  if (!(d.radius > 0.0) || !std::isfinite(d.radius))
    throw std::invalid_argument("demand point '" + d.id + "': radius must be positive");
  if (!(d.weight >= 0.0) || !std::isfinite(d.weight))
    throw std::invalid_argument("demand point '" + d.id + "': weight must be nonnegative");
}

inline void validate(const Facility& f) {
  if (!is_finite(f.center)) throw std::invalid_argument("facility: non-finite center");
  if (!(f.cover_radius > 0.0) || !std::isfinite(f.cover_radius))
    throw std::invalid_argument("facility: cover radius must be positive");
}

}  // namespace dircover
