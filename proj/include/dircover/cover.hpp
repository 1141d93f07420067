#pragma once

// Joint cover of a demand disc by a set of facility discs.
//
// Three estimators share one pruning pass: a facility whose disc contains
// the whole demand disc (d <= D - R) decides the answer as 1, and one that
// cannot reach it (d >= D + R) is dropped before any per-node work.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "arc.hpp"
#include "geometry.hpp"
#include "hex_pattern.hpp"
#include "instance.hpp"
#include "quadrature.hpp"
#include "rng.hpp"

namespace dircover {

namespace detail {

struct RelevantFacility {
  Point2 center;
  double distance;
  double bearing;
  double cover_radius;
};

// Returns false when some facility covers the whole disc.
inline bool collect_relevant(const DemandPoint& demand, std::span<const Facility> facilities,
                             std::vector<RelevantFacility>& out) {
  out.clear();
  const double R = demand.radius;
  for (const auto& f : facilities) {
    const Point2 v = f.center - demand.center;
    const double d = std::sqrt(v.x * v.x + v.y * v.y);
    if (d <= f.cover_radius - R) return false;
    if (d >= f.cover_radius + R) continue;
    const double bearing = d < kConcentricThreshold ? 0.0 : std::atan2(v.y, v.x);
    out.push_back({f.center, d, bearing, f.cover_radius});
  }
  return true;
}

}  // namespace detail

/// Closed-form area of the demand disc inside one facility disc, as a
/// fraction of the demand disc area.
inline double lens_cover_analytic(const DemandPoint& demand, const Facility& facility) {
  const double R = demand.radius;
  const double D = facility.cover_radius;
  const double d = distance(demand.center, facility.center);
  if (d <= D - R) return 1.0;
  if (d >= D + R) return 0.0;
  if (d <= std::abs(D - R)) {
    // facility disc lies inside the demand disc
    return (D * D) / (R * R);
  }
  const double a1 = std::acos(std::clamp((d * d + R * R - D * D) / (2.0 * d * R), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + D * D - R * R) / (2.0 * d * D), -1.0, 1.0));
  const double k = (-d + R + D) * (d + R - D) * (d - R + D) * (d + R + D);
  const double area = R * R * a1 + D * D * a2 - 0.5 * std::sqrt(std::max(0.0, k));
  return std::clamp(area / (std::numbers::pi * R * R), 0.0, 1.0);
}

/// Sum over quadrature circles of weight times covered share of the circle.
inline double joint_cover_quadrature(const DemandPoint& demand, std::span<const Facility> facilities,
                                     const QuadratureRule& rule) {
  thread_local std::vector<detail::RelevantFacility> relevant;
  thread_local std::vector<ArcInterval> arcs;
  thread_local std::vector<detail::Segment> segs;
  if (!detail::collect_relevant(demand, facilities, relevant)) return 1.0;
  if (relevant.empty()) return 0.0;
  double total = 0.0;
  for (const auto& node : rule.nodes()) {
    const double r = node.u * demand.radius;
    arcs.clear();
    for (const auto& f : relevant) arcs.push_back(arc_cover_polar(r, f.distance, f.bearing, f.cover_radius));
    total += node.w * detail::union_fraction_into(arcs, segs);
  }
  return std::min(total, 1.0);
}

/// Share of hexagonal-pattern nodes (scaled to the demand disc) covered by
/// at least one facility.
inline double joint_cover_hexagonal(const DemandPoint& demand, std::span<const Facility> facilities,
                                    const HexPattern& pattern) {
  thread_local std::vector<detail::RelevantFacility> relevant;
  if (!detail::collect_relevant(demand, facilities, relevant)) return 1.0;
  if (relevant.empty()) return 0.0;
  std::size_t covered = 0;
  for (const auto& q : pattern.points()) {
    const Point2 p{demand.center.x + demand.radius * q.x, demand.center.y + demand.radius * q.y};
    for (const auto& f : relevant) {
      if (squared_distance(p, f.center) <= f.cover_radius * f.cover_radius) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(pattern.count());
}

struct MonteCarloEstimate {
  double fraction = 0.0;
  double standard_error = 0.0;
};

/// Uniform sampling of the demand disc: r = R sqrt(U), theta = 2 pi V.
inline MonteCarloEstimate joint_cover_montecarlo(const DemandPoint& demand, std::span<const Facility> facilities,
                                                 std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("joint_cover_montecarlo: samples must be >= 1");
  thread_local std::vector<detail::RelevantFacility> relevant;
  if (!detail::collect_relevant(demand, facilities, relevant)) return {1.0, 0.0};
  if (relevant.empty()) return {0.0, 0.0};
  Rng rng(seed);
  std::uint64_t covered = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double r = demand.radius * std::sqrt(rng.uniform());
    const double theta = kTwoPi * rng.uniform();
    const Point2 p{demand.center.x + r * std::cos(theta), demand.center.y + r * std::sin(theta)};
    for (const auto& f : relevant) {
      if (squared_distance(p, f.center) <= f.cover_radius * f.cover_radius) {
        ++covered;
        break;
      }
    }
  }
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(covered) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

struct QuadratureBackend {
  QuadratureRule rule;
};
struct HexagonalBackend {
  HexPattern pattern;
};
struct MonteCarloBackend {
  std::uint64_t samples;
  std::uint64_t seed;
};

/// An immutable, configured cover estimator.
class CoverEvaluator {
 public:
  using Backend = std::variant<QuadratureBackend, HexagonalBackend, MonteCarloBackend>;

  explicit CoverEvaluator(Backend backend) : backend_(std::move(backend)) {}

  static CoverEvaluator quadrature(int order = 10) { return CoverEvaluator(QuadratureBackend{make_quadrature_rule(order)}); }
  static CoverEvaluator hexagonal(double selection_bound = 220.0) {
    return CoverEvaluator(HexagonalBackend{make_hex_pattern(selection_bound)});
  }
  static CoverEvaluator montecarlo(std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("montecarlo evaluator: samples must be >= 1");
    return CoverEvaluator(MonteCarloBackend{samples, seed});
  }

  const Backend& backend() const { return backend_; }

  std::string name() const {
    return std::visit(
        [](const auto& b) -> std::string {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, QuadratureBackend>) return "quadrature";
          else if constexpr (std::is_same_v<T, HexagonalBackend>) return "hexagonal";
          else return "montecarlo";
        },
        backend_);
  }

  /// Joint cover of one demand point. For Monte Carlo, `stream` selects an
  /// independent sample set (callers pass the demand index).
  double cover(const DemandPoint& demand, std::span<const Facility> facilities, std::uint64_t stream = 0) const {
    return std::visit(
        [&](const auto& b) -> double {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, QuadratureBackend>) return joint_cover_quadrature(demand, facilities, b.rule);
          else if constexpr (std::is_same_v<T, HexagonalBackend>) return joint_cover_hexagonal(demand, facilities, b.pattern);
          else return joint_cover_montecarlo(demand, facilities, b.samples, mix_seed(b.seed, stream)).fraction;
        },
        backend_);
  }

 private:
  Backend backend_;
};

/// True when a single facility's disc contains the whole demand disc.
inline bool fully_covered(const DemandPoint& demand, std::span<const Facility> facilities) {
  for (const auto& f : facilities)
    if (distance(demand.center, f.center) <= f.cover_radius - demand.radius) return true;
  return false;
}

/// Weighted mean joint cover over all demand points.
inline double total_weighted_cover(const Instance& instance, std::span<const Facility> facilities,
                                   const CoverEvaluator& evaluator) {
  const double total_weight = instance.total_weight();
  if (!(total_weight > 0.0)) throw std::invalid_argument("total_weighted_cover: total demand weight is zero");
  double sum = 0.0;
  for (std::size_t i = 0; i < instance.demand_points.size(); ++i) {
    const auto& d = instance.demand_points[i];
    if (d.weight == 0.0) continue;
    sum += d.weight * evaluator.cover(d, facilities, i);
  }
  return std::clamp(sum / total_weight, 0.0, 1.0);
}

}  // namespace dircover
