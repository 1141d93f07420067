#pragma once

// Covered arcs on a circle and the measure of their union.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace dircover {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Center distances below this are treated as concentric.
inline constexpr double kConcentricThreshold = 1e-12;

enum class ArcTag { empty, full, partial };

struct ArcInterval {
  double start = 0.0;   // radians in [0, 2pi)
  double extent = 0.0;  // radians in [0, 2pi]
  ArcTag tag = ArcTag::empty;

  static constexpr ArcInterval empty() { return {0.0, 0.0, ArcTag::empty}; }
  static constexpr ArcInterval full() { return {0.0, kTwoPi, ArcTag::full}; }
};

inline double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Arc of the circle of radius r covered by a disc of radius cover_radius
/// whose center lies at distance d and direction bearing from the circle's
/// center.
inline ArcInterval arc_cover_polar(double r, double d, double bearing, double cover_radius) {
  if (d <= cover_radius - r) return ArcInterval::full();
  if (d >= cover_radius + r) return ArcInterval::empty();
  if (d < kConcentricThreshold) return cover_radius >= r ? ArcInterval::full() : ArcInterval::empty();
  const double c = std::clamp((r * r + d * d - cover_radius * cover_radius) / (2.0 * r * d), -1.0, 1.0);
  const double half = std::acos(c);
  if (half <= 0.0) return ArcInterval::empty();
  if (half >= std::numbers::pi) return ArcInterval::full();
  return {normalize_angle(bearing - half), 2.0 * half, ArcTag::partial};
}

inline ArcInterval arc_cover(double circle_radius, Point2 demand_center, const Facility& facility) {
  const Point2 v = facility.center - demand_center;
  const double d = std::sqrt(v.x * v.x + v.y * v.y);
  const double bearing = d < kConcentricThreshold ? 0.0 : std::atan2(v.y, v.x);
  return arc_cover_polar(circle_radius, d, bearing, facility.cover_radius);
}

namespace detail {

struct Segment {
  double lo;
  double hi;
};

inline double union_fraction_into(std::span<const ArcInterval> intervals, std::vector<Segment>& segs) {
  segs.clear();
  for (const auto& a : intervals) {
    if (a.tag == ArcTag::full) return 1.0;
    if (a.tag == ArcTag::empty || a.extent <= 0.0) continue;
    const double end = a.start + a.extent;
    if (end > kTwoPi) {
      segs.push_back({a.start, kTwoPi});
      segs.push_back({0.0, end - kTwoPi});
    } else {
      segs.push_back({a.start, end});
    }
  }
  if (segs.empty()) return 0.0;
  std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
  });
  double covered = 0.0;
  double lo = segs.front().lo;
  double hi = segs.front().hi;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].lo <= hi) {
      hi = std::max(hi, segs[i].hi);
    } else {
      covered += hi - lo;
      lo = segs[i].lo;
      hi = segs[i].hi;
    }
  }
  covered += hi - lo;
  return std::min(1.0, covered / kTwoPi);
}

}  // namespace detail

/// Fraction of [0, 2pi) covered by the union of the intervals.
inline double circular_union_fraction(std::span<const ArcInterval> intervals) {
  std::vector<detail::Segment> segs;
  segs.reserve(intervals.size() * 2);
  return detail::union_fraction_into(intervals, segs);
}

}  // namespace dircover
