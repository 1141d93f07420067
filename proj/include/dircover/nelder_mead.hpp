#pragma once

// Nelder-Mead simplex search for maximizing a function of a planar point.
//
// Per iteration, with P_l the worst vertex, P_h the best, F_s the second
// highest value and Pbar the mean of all vertices except P_l:
//   reflect    P^r = (1 + alpha) Pbar - alpha P_l
//   accept     P^r when F_s <= F^r <= F_h
//   contract   P^c = beta P^t + (1 - beta) Pbar, with P^t the better of
//              P^r and P_l; accept when F^c >= F_s, otherwise shrink every
//              vertex halfway towards P_h
//   expand     P^e = (1 + gamma) Pbar - gamma P_l when F^r > F_h; keep the
//              better of P^e (if F^e >= F_h) and P^r
// and the search stops once F_h - F_l < epsilon.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"
#include "rng.hpp"

namespace dircover {

struct NmConfig {
  double alpha = 1.0;  // reflection
  double beta = 0.5;   // contraction
  double gamma = 2.0;  // expansion
  std::size_t vertex_count = 3;
  double epsilon = 1e-6;
  std::optional<double> init_square_side;  // unset: 2 (D - R), at least 0.5
  std::size_t max_iterations = 500;

  void validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("NmConfig: alpha must be > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("NmConfig: beta must be in (0,1)");
    if (!(gamma > 1.0)) throw std::invalid_argument("NmConfig: gamma must be > 1");
    if (vertex_count < 3) throw std::invalid_argument("NmConfig: need at least 3 vertices");
    if (!(epsilon > 0.0)) throw std::invalid_argument("NmConfig: epsilon must be > 0");
    if (init_square_side && !(*init_square_side > 0.0))
      throw std::invalid_argument("NmConfig: initial square side must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("NmConfig: max_iterations must be >= 1");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j{{"alpha", alpha},     {"beta", beta},       {"gamma", gamma},
                             {"vertices", vertex_count}, {"epsilon", epsilon}};
    j["init_square_side"] = init_square_side ? nlohmann::ordered_json(*init_square_side) : nlohmann::ordered_json("auto");
    j["max_iterations"] = max_iterations;
    return j;
  }
};

inline Point2 nm_reflection(Point2 centroid, Point2 worst, double alpha) { return (1.0 + alpha) * centroid - alpha * worst; }
inline Point2 nm_expansion(Point2 centroid, Point2 worst, double gamma) { return (1.0 + gamma) * centroid - gamma * worst; }
inline Point2 nm_contraction(Point2 target, Point2 centroid, double beta) { return beta * target + (1.0 - beta) * centroid; }

struct NmVertex {
  Point2 point;
  double value;
};

struct SimplexRanks {
  std::size_t worst;  // lowest value; ties go to the highest index
  std::size_t best;   // highest value; ties go to the lowest index
  double second;      // highest value among vertices other than best
  Point2 centroid;    // mean of all vertices except worst
};

inline SimplexRanks rank_simplex(std::span<const NmVertex> v) {
  if (v.size() < 2) throw std::invalid_argument("rank_simplex: need at least 2 vertices");
  SimplexRanks r{0, 0, 0.0, {}};
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].value > v[r.best].value) r.best = i;
    if (v[i].value <= v[r.worst].value) r.worst = i;
  }
  bool have_second = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == r.best) continue;
    if (!have_second || v[i].value > r.second) r.second = v[i].value;
    have_second = true;
  }
  Point2 sum{};
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != r.worst) sum = sum + v[i].point;
  r.centroid = (1.0 / static_cast<double>(v.size() - 1)) * sum;
  return r;
}

/// `center` plus count-1 uniform points in the axis-aligned square of the
/// given side centred on it.
inline std::vector<Point2> make_initial_simplex(Point2 center, std::size_t count, double side, Rng& rng) {
  std::vector<Point2> out{center};
  for (std::size_t i = 1; i < count; ++i)
    out.push_back({center.x + side * (rng.uniform() - 0.5), center.y + side * (rng.uniform() - 0.5)});
  return out;
}

struct NmResult {
  Point2 best;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  bool converged = false;
  std::vector<double> best_trace;  // F_h at the start of every iteration
};

/// Collapsed simplices (extent below this) are re-spread around P_h.
inline constexpr double kDegenerateExtent = 1e-10;
inline constexpr std::size_t kMaxSimplexRestarts = 2;

template <class Objective>
NmResult nelder_mead_maximize(Objective&& f, std::span<const Point2> start, const NmConfig& config, Rng& rng,
                              double restart_side) {
  config.validate();
  if (start.size() != config.vertex_count) throw std::invalid_argument("nelder_mead_maximize: vertex count mismatch");
  NmResult result;
  auto eval = [&](Point2 p) {
    ++result.evaluations;
    return static_cast<double>(f(p));
  };
  std::vector<NmVertex> simplex;
  simplex.reserve(start.size());
  for (const auto& p : start) simplex.push_back({p, eval(p)});

  for (; result.iterations < config.max_iterations; ++result.iterations) {
    const SimplexRanks r = rank_simplex(simplex);
    const double f_low = simplex[r.worst].value;
    const double f_high = simplex[r.best].value;
    result.best_trace.push_back(f_high);
    if (f_high - f_low < config.epsilon) {
      result.converged = true;
      break;
    }

    double extent = 0.0;
    for (const auto& v : simplex) extent = std::max(extent, distance(v.point, simplex[r.best].point));
    if (extent < kDegenerateExtent) {
      if (result.restarts >= kMaxSimplexRestarts) break;
      ++result.restarts;
      const NmVertex keep = simplex[r.best];
      const auto fresh = make_initial_simplex(keep.point, simplex.size(), restart_side, rng);
      simplex.assign(1, keep);
      for (std::size_t i = 1; i < fresh.size(); ++i) simplex.push_back({fresh[i], eval(fresh[i])});
      continue;
    }

    const Point2 p_low = simplex[r.worst].point;
    const Point2 p_r = nm_reflection(r.centroid, p_low, config.alpha);
    const double f_r = eval(p_r);

    if (r.second <= f_r && f_r <= f_high) {
      simplex[r.worst] = {p_r, f_r};
    } else if (f_r < r.second) {
      const Point2 p_t = f_r > f_low ? p_r : p_low;
      const Point2 p_c = nm_contraction(p_t, r.centroid, config.beta);
      const double f_c = eval(p_c);
      if (f_c >= r.second) {
        simplex[r.worst] = {p_c, f_c};
      } else {
        const Point2 p_h = simplex[r.best].point;
        for (std::size_t i = 0; i < simplex.size(); ++i) {
          if (i == r.best) continue;
          const Point2 q = 0.5 * (simplex[i].point + p_h);
          simplex[i] = {q, eval(q)};
        }
      }
    } else {
      const Point2 p_e = nm_expansion(r.centroid, p_low, config.gamma);
      const double f_e = eval(p_e);
      if (f_e >= f_high) simplex[r.worst] = {p_e, f_e};
      else simplex[r.worst] = {p_r, f_r};
    }
  }

  const SimplexRanks r = rank_simplex(simplex);
  result.best = simplex[r.best].point;
  result.value = simplex[r.best].value;
  return result;
}

}  // namespace dircover
