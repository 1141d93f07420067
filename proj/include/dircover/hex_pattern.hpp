#pragma once

// Triangular-lattice integration points filling the unit disc.
//
// Two interleaved rectangular lattices, (i, j*sqrt3) and
// (i + 1/2, (j + 1/2)*sqrt3), form a hexagonal packing with one point per
// sqrt3/2 of area. Points with squared norm <= M are kept and scaled by
// sqrt(2*pi / (N*sqrt3)) so that N cells have total area pi.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace dircover {

class HexPattern {
 public:
  HexPattern(std::vector<Point2> points, double selection_bound)
      : points_(std::move(points)), selection_bound_(selection_bound) {
    if (points_.empty()) throw std::invalid_argument("HexPattern: empty pattern");
  }

  std::span<const Point2> points() const { return points_; }
  std::size_t count() const { return points_.size(); }
  double selection_bound() const { return selection_bound_; }

 private:
  std::vector<Point2> points_;
  double selection_bound_;
};

inline HexPattern make_hex_pattern(double selection_bound = 220.0) {
  if (!(selection_bound > 0.0) || !std::isfinite(selection_bound))
    throw std::invalid_argument("make_hex_pattern: M must be positive");
  const double sqrt3 = std::numbers::sqrt3;
  const int reach = static_cast<int>(std::ceil(std::sqrt(selection_bound))) + 1;

  std::vector<Point2> raw;
  for (int j = -reach; j <= reach; ++j) {
    for (int i = -reach; i <= reach; ++i) {
      const double x = i;
      const double y = j * sqrt3;
      if (x * x + y * y <= selection_bound) raw.push_back({x, y});
    }
  }
  for (int j = -reach; j <= reach; ++j) {
    for (int i = -reach; i <= reach; ++i) {
      const double x = i + 0.5;
      const double y = (j + 0.5) * sqrt3;
      if (x * x + y * y <= selection_bound) raw.push_back({x, y});
    }
  }
  if (raw.empty())
    throw std::invalid_argument("make_hex_pattern: M = " + std::to_string(selection_bound) + " selects no points");

  const double n = static_cast<double>(raw.size());
  const double scale = std::sqrt(2.0 * std::numbers::pi / (n * sqrt3));
  for (auto& p : raw) p = scale * p;
  return HexPattern(std::move(raw), selection_bound);
}

}  // namespace dircover
