#pragma once

// Locating facilities anywhere in the plane.
//
// One facility at a time is moved by Nelder-Mead while the others stay
// put (Cooper-style cycling); passes repeat in a fresh random order until a
// pass gains less than a tolerance. A multistart driver runs this from
// random demand points or from supplied locations and keeps the best.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cover.hpp"
#include "hull.hpp"
#include "instance.hpp"
#include "nelder_mead.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace dircover {

struct ContinuousSolution {
  std::vector<Point2> facilities;
  double cover_radius = 3.0;
  double objective = 0.0;
  std::vector<double> trace;  // objective before the first pass and after each pass

  std::vector<Facility> as_facilities() const {
    std::vector<Facility> out;
    out.reserve(facilities.size());
    for (const auto& p : facilities) out.push_back({p, cover_radius});
    return out;
  }
};

/// Total weighted cover as a function of one facility's location, the
/// others fixed. Demand points already fully covered by the fixed
/// facilities, or out of the moving facility's reach, reuse a value
/// computed once. Results are bit-identical to total_weighted_cover.
class RelocationObjective {
 public:
  RelocationObjective(const Instance& instance, std::span<const Facility> facilities, std::size_t moving,
                      const CoverEvaluator& evaluator)
      : instance_(&instance), evaluator_(&evaluator), facilities_(facilities.begin(), facilities.end()), moving_(moving) {
    if (moving >= facilities_.size()) throw std::invalid_argument("RelocationObjective: moving index out of range");
    total_weight_ = instance.total_weight();
    if (!(total_weight_ > 0.0)) throw std::invalid_argument("RelocationObjective: total demand weight is zero");
    std::vector<Facility> fixed;
    for (std::size_t k = 0; k < facilities_.size(); ++k)
      if (k != moving) fixed.push_back(facilities_[k]);
    const auto n = instance.demand_points.size();
    fixed_cover_.resize(n);
    full_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = instance.demand_points[i];
      full_[i] = fully_covered(d, fixed);
      if (d.weight == 0.0 || full_[i]) continue;
      fixed_cover_[i] = evaluator.cover(d, fixed, i);
    }
  }

  double operator()(Point2 location) {
    ++calls_;
    facilities_[moving_].center = location;
    const double reach = facilities_[moving_].cover_radius;
    double sum = 0.0;
    for (std::size_t i = 0; i < instance_->demand_points.size(); ++i) {
      const auto& d = instance_->demand_points[i];
      if (d.weight == 0.0) continue;
      if (full_[i]) {
        sum += d.weight * 1.0;
      } else if (distance(d.center, location) >= reach + d.radius) {
        sum += d.weight * fixed_cover_[i];
      } else {
        sum += d.weight * evaluator_->cover(d, facilities_, i);
      }
    }
    return std::clamp(sum / total_weight_, 0.0, 1.0);
  }

  std::size_t active_demand_count() const {
    return static_cast<std::size_t>(std::count(full_.begin(), full_.end(), false));
  }
  std::uint64_t calls() const { return calls_; }

 private:
  const Instance* instance_;
  const CoverEvaluator* evaluator_;
  std::vector<Facility> facilities_;
  std::size_t moving_;
  double total_weight_ = 0.0;
  std::vector<double> fixed_cover_;
  std::vector<bool> full_;
  std::uint64_t calls_ = 0;
};

/// Default initial-simplex side: 2 (D - R) with the largest demand radius,
/// never below half a mile.
inline double default_square_side(const Instance& instance, double cover_radius) {
  double r_max = 0.0;
  for (const auto& d : instance.demand_points) r_max = std::max(r_max, d.radius);
  return std::max(0.5, 2.0 * (cover_radius - r_max));
}

struct RelocationResult {
  Point2 location;
  double objective = 0.0;        // total weighted cover at `location`
  double start_objective = 0.0;  // total weighted cover before the move
  NmResult search;
};

inline RelocationResult nelder_mead_relocate(const Instance& instance, std::span<const Facility> facilities,
                                             std::size_t moving, const NmConfig& config, Rng& rng,
                                             const CoverEvaluator& evaluator) {
  config.validate();
  if (facilities.empty()) throw std::invalid_argument("nelder_mead_relocate: no facilities");
  RelocationObjective objective(instance, facilities, moving, evaluator);
  const Point2 origin = facilities[moving].center;
  const double side = config.init_square_side.value_or(default_square_side(instance, facilities[moving].cover_radius));
  const auto start = make_initial_simplex(origin, config.vertex_count, side, rng);
  NmResult nm = nelder_mead_maximize([&](Point2 p) { return objective(p); }, start, config, rng, side);
  const double start_value = objective(origin);
  return {nm.best, nm.value, start_value, std::move(nm)};
}

struct CooperConfig {
  double epsilon = 1e-7;
  std::size_t max_passes = 100;

  nlohmann::ordered_json to_json() const { return {{"epsilon", epsilon}, {"max_passes", max_passes}}; }
};

struct CooperStats {
  std::size_t passes = 0;
  std::size_t relocations = 0;
  std::uint64_t evaluations = 0;
};

/// Repeated passes of single-facility relocation in random order; moves
/// that would lower the objective are rejected. With one facility at most
/// two passes run.
inline ContinuousSolution cooper_cycle(const Instance& instance, ContinuousSolution start, const NmConfig& nm_config,
                                       const CooperConfig& config, Rng& rng, const CoverEvaluator& evaluator,
                                       CooperStats* stats = nullptr) {
  if (start.facilities.empty()) throw std::invalid_argument("cooper_cycle: no facilities");
  auto facilities = start.as_facilities();
  double current = total_weighted_cover(instance, facilities, evaluator);
  std::uint64_t evaluations = 1;
  start.trace.assign(1, current);
  const std::size_t pass_cap = facilities.size() == 1 ? std::min<std::size_t>(2, config.max_passes) : config.max_passes;

  std::vector<std::size_t> order(facilities.size());
  std::size_t passes = 0;
  std::size_t relocations = 0;
  while (passes < pass_cap && current < 1.0) {
    const double pass_start = current;
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t k : order) {
      auto moved = nelder_mead_relocate(instance, facilities, k, nm_config, rng, evaluator);
      evaluations += moved.search.evaluations + 1;
      ++relocations;
      if (moved.objective >= current) {
        facilities[k].center = moved.location;
        current = moved.objective;
      }
    }
    ++passes;
    start.trace.push_back(current);
    if (current - pass_start < config.epsilon) break;
  }

  for (std::size_t k = 0; k < facilities.size(); ++k) start.facilities[k] = facilities[k].center;
  start.objective = current;
  if (stats) {
    stats->passes += passes;
    stats->relocations += relocations;
    stats->evaluations += evaluations;
  }
  return start;
}

enum class StartMode { random_demand_points, given_sites };

inline std::string to_string(StartMode m) {
  return m == StartMode::random_demand_points ? "random_demand_points" : "given_sites";
}

struct MultistartConfig {
  std::size_t starts = 100;
  StartMode mode = StartMode::random_demand_points;
  std::vector<Point2> given;  // for given_sites
  bool hull_projection = true;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  CooperConfig cooper;
};

/// Moves every facility outside the demand centers' hull onto the hull,
/// keeping the result only when total cover does not drop.
inline ContinuousSolution clamp_to_hull(const Instance& instance, ContinuousSolution s, const CoverEvaluator& evaluator) {
  const auto centers = instance.demand_centers();
  const auto hull = convex_hull(centers);
  ContinuousSolution projected = s;
  bool moved = false;
  for (auto& p : projected.facilities) {
    const Point2 q = project_to_hull(p, hull);
    moved = moved || !(q == p);
    p = q;
  }
  if (!moved) return s;
  projected.objective = total_weighted_cover(instance, projected.as_facilities(), evaluator);
  return projected.objective >= s.objective ? projected : s;
}

inline SolveReport multistart_continuous(const Instance& instance, std::size_t p, const MultistartConfig& config,
                                         const NmConfig& nm_config, const CoverEvaluator& evaluator) {
  instance.validate();
  nm_config.validate();
  if (config.starts < 1) throw std::invalid_argument("multistart_continuous: starts must be >= 1");
  if (p < 1) throw std::invalid_argument("multistart_continuous: p must be >= 1");
  if (config.mode == StartMode::random_demand_points && instance.demand_count() < p)
    throw std::invalid_argument("multistart_continuous: fewer demand points than facilities");
  if (config.mode == StartMode::given_sites && config.given.size() != p)
    throw std::invalid_argument("multistart_continuous: given start has " + std::to_string(config.given.size()) +
                                " facilities, expected " + std::to_string(p));

  const auto started = std::chrono::steady_clock::now();
  const double radius = instance.default_cover_radius;
  std::vector<ContinuousSolution> results(config.starts);
  std::vector<std::uint64_t> evaluations(config.starts, 0);

  parallel_for(config.starts, config.threads, [&](std::size_t s) {
    Rng rng = Rng::derive(config.seed, s);
    ContinuousSolution initial;
    initial.cover_radius = radius;
    if (config.mode == StartMode::random_demand_points) {
      for (std::size_t i : sample_distinct(instance.demand_count(), p, rng))
        initial.facilities.push_back(instance.demand_points[i].center);
    } else {
      initial.facilities = config.given;
    }
    CooperStats stats;
    ContinuousSolution solved = cooper_cycle(instance, std::move(initial), nm_config, config.cooper, rng, evaluator, &stats);
    if (config.hull_projection) {
      solved = clamp_to_hull(instance, std::move(solved), evaluator);
      ++stats.evaluations;
    }
    evaluations[s] = stats.evaluations;
    results[s] = std::move(solved);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s)
    if (results[s].objective > results[best].objective) best = s;

  SolveReport report;
  report.solver = "nelder-mead-multistart";
  report.seed = config.seed;
  report.objective = results[best].objective;
  report.facilities = results[best].facilities;
  report.cover_radius = radius;
  report.evaluations = std::accumulate(evaluations.begin(), evaluations.end(), std::uint64_t{0});
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  report.trace = results[best].trace;
  for (const auto& r : results) report.start_objectives.push_back(r.objective);
  report.config = {{"p", p},
                   {"backend", evaluator.name()},
                   {"starts", config.starts},
                   {"start_mode", to_string(config.mode)},
                   {"hull_projection", config.hull_projection},
                   {"best_start", best},
                   {"nelder_mead", nm_config.to_json()},
                   {"cooper", config.cooper.to_json()}};
  return report;
}

}  // namespace dircover
