#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace dircover {

/// A potential facility location. Without its own cover radius the
/// instance default applies.
struct CandidateSite {
  std::string id;
  Point2 location;
  std::optional<double> cover_radius;

  friend bool operator==(const CandidateSite&, const CandidateSite&) = default;
};

struct Instance {
  std::vector<DemandPoint> demand_points;
  std::vector<CandidateSite> candidate_sites;
  double default_cover_radius = 3.0;

  std::size_t demand_count() const { return demand_points.size(); }
  std::size_t site_count() const { return candidate_sites.size(); }

  double total_weight() const {
    double w = 0.0;
    for (const auto& d : demand_points) w += d.weight;
    return w;
  }

  Facility site_facility(std::size_t index) const {
    const auto& s = candidate_sites.at(index);
    return {s.location, s.cover_radius.value_or(default_cover_radius)};
  }

  std::vector<Point2> demand_centers() const {
    std::vector<Point2> out;
    out.reserve(demand_points.size());
    for (const auto& d : demand_points) out.push_back(d.center);
    return out;
  }

  void validate() const {
    if (demand_points.empty()) throw std::invalid_argument("instance: no demand points");
    if (!(default_cover_radius > 0.0) || !std::isfinite(default_cover_radius))
      throw std::invalid_argument("instance: default cover radius must be positive");
    std::unordered_set<std::string> ids;
    for (const auto& d : demand_points) {
      dircover::validate(d);
      if (!ids.insert(d.id).second) throw std::invalid_argument("instance: duplicate demand id '" + d.id + "'");
    }
    ids.clear();
    for (const auto& s : candidate_sites) {
      if (!is_finite(s.location)) throw std::invalid_argument("instance: site '" + s.id + "' has non-finite location");
      if (s.cover_radius && !(*s.cover_radius > 0.0))
        throw std::invalid_argument("instance: site '" + s.id + "' has non-positive cover radius");
      if (!ids.insert(s.id).second) throw std::invalid_argument("instance: duplicate site id '" + s.id + "'");
    }
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// The six-facility illustration: one demand point at the origin.
struct WorkedExample {
  DemandPoint demand;
  std::vector<Facility> facilities;
};

inline WorkedExample paper_example_instance(double demand_radius = 1.0) {
  return {
      DemandPoint{"origin", {0.0, 0.0}, demand_radius, 1.0},
      {
          {{2.0, 0.0}, 1.8},
          {{0.0, 2.0}, 1.5},
          {{-3.0, 0.0}, 2.7},
          {{0.0, -2.5}, 2.4},
          {{2.0, 2.0}, 2.6},
          {{0.0, -1.5}, 1.2},
      },
  };
}

struct Box {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 10.0;
  double ymax = 10.0;
};

struct SyntheticSpec {
  std::size_t demand_count = 30;
  std::size_t site_count = 12;
  Box region;
  double weight_min = 1.0;
  double weight_max = 100.0;
  double radius = 1.0;
  double cover_radius = 3.0;
  std::uint64_t seed = 1;
};

/// Uniform demand points and sites in a box. Ids are "d<i>" and "s<j>".
inline Instance gen_synthetic(const SyntheticSpec& spec) {
  if (spec.demand_count == 0) throw std::invalid_argument("gen_synthetic: n must be >= 1");
  if (spec.site_count == 0) throw std::invalid_argument("gen_synthetic: m must be >= 1");
  const auto& b = spec.region;
  if (!(b.xmax > b.xmin) || !(b.ymax > b.ymin)) throw std::invalid_argument("gen_synthetic: empty region");
  if (!(spec.weight_min >= 0.0) || !(spec.weight_max >= spec.weight_min))
    throw std::invalid_argument("gen_synthetic: invalid weight range");
  if (!(spec.weight_max > 0.0)) throw std::invalid_argument("gen_synthetic: total weight would be zero");
  if (!(spec.radius > 0.0) || !(spec.cover_radius > 0.0))
    throw std::invalid_argument("gen_synthetic: radii must be positive");

  Rng rng(spec.seed);
  Instance inst;
  inst.default_cover_radius = spec.cover_radius;
  inst.demand_points.reserve(spec.demand_count);
  for (std::size_t i = 0; i < spec.demand_count; ++i) {
    const double x = rng.uniform(b.xmin, b.xmax);
    const double y = rng.uniform(b.ymin, b.ymax);
    const double w = rng.uniform(spec.weight_min, spec.weight_max);
    inst.demand_points.push_back({"d" + std::to_string(i), {x, y}, spec.radius, w});
  }
  inst.candidate_sites.reserve(spec.site_count);
  for (std::size_t j = 0; j < spec.site_count; ++j) {
    const double x = rng.uniform(b.xmin, b.xmax);
    const double y = rng.uniform(b.ymin, b.ymax);
    inst.candidate_sites.push_back({"s" + std::to_string(j), {x, y}, std::nullopt});
  }
  return inst;
}

}  // namespace dircover
