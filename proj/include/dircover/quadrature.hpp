#pragma once

// Radial Gauss-Legendre rule for integrating over a disc.
//
// For a function that depends on the radius fraction u only through the
// covered share of the circle of radius u, the disc average is
// integral_0^1 2u f(u) du. Substituting s = u^2 turns it into
// integral_0^1 f(sqrt(s)) ds, so a Legendre rule mapped to s in [0, 1]
// gives nodes u_j = sqrt((t_j + 1) / 2) and weights w_j = W_j / 2.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dircover {

struct QuadratureNode {
  double u;  // radius as a fraction of the demand radius
  double w;
};

class QuadratureRule {
 public:
  explicit QuadratureRule(std::vector<QuadratureNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("QuadratureRule: no nodes");
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      if (!(n.u > 0.0 && n.u < 1.0)) throw std::invalid_argument("QuadratureRule: node outside (0,1)");
      if (!(n.w > 0.0)) throw std::invalid_argument("QuadratureRule: non-positive weight");
      if (i > 0 && !(n.u > nodes_[i - 1].u))
        throw std::invalid_argument("QuadratureRule: nodes not strictly increasing");
      sum += n.w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("QuadratureRule: weights do not sum to 1");
  }

  std::span<const QuadratureNode> nodes() const { return nodes_; }
  std::size_t order() const { return nodes_.size(); }

 private:
  std::vector<QuadratureNode> nodes_;
};

namespace detail {

// Returns (P_n(x), P_n'(x)) by the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace detail

/// Standard Gauss-Legendre nodes and weights on [-1, 1], ascending.
inline std::vector<std::pair<double, double>> gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(order, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const auto [p, dp] = detail::legendre_with_derivative(order, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x is the i-th largest root
    out[static_cast<std::size_t>(order - 1 - i)] = {x, w};
    out[static_cast<std::size_t>(i)] = {-x, w};
  }
  if (order % 2 == 1) out[static_cast<std::size_t>(order / 2)].first = 0.0;
  return out;
}

inline QuadratureRule make_quadrature_rule(int order = 10) {
  if (order < 1) throw std::invalid_argument("make_quadrature_rule: order must be >= 1, got " + std::to_string(order));
  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(order));
  for (const auto& [t, w] : gauss_legendre(order)) nodes.push_back({std::sqrt((t + 1.0) / 2.0), w / 2.0});
  return QuadratureRule(std::move(nodes));
}

}  // namespace dircover
