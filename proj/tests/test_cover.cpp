#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dircover/cover.hpp"
#include "dircover/instance.hpp"
#include "oracles.hpp"

using namespace dircover;

namespace {

// Published Gauss column for demand radius 1.0, 1.1, ..., 2.0.
constexpr double kGaussColumn[11] = {0.923, 0.933, 0.947, 0.954, 0.960, 0.965, 0.968, 0.970, 0.973, 0.976, 0.978};
constexpr double kHex805Column[11] = {0.924, 0.934, 0.945, 0.954, 0.958, 0.964, 0.968, 0.969, 0.976, 0.980, 0.981};

// Frozen outputs of this implementation (10-point rule, M = 220), checked
// once against the published three-decimal columns above.
constexpr double kGaussFrozen[11] = {0.92276, 0.93335, 0.94688, 0.95422, 0.96033, 0.96468,
                                     0.96807, 0.96975, 0.97329, 0.97595, 0.97800};

DemandPoint unit_demand(double R = 1.0) { return {"d", {0, 0}, R, 1.0}; }

}  // namespace

TEST(LensCover, AgreesWithNumericIntegration) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double R = rng.uniform(0.5, 2.0), D = rng.uniform(0.5, 3.0), d = rng.uniform(0.0, R + D + 0.5);
    const DemandPoint dp{"x", {0, 0}, R, 1};
    const Facility f{{d, 0}, D};
    const double expect = oracle::lens_area_numeric(d, D, R) / (std::numbers::pi * R * R);
    EXPECT_NEAR(lens_cover_analytic(dp, f), expect, 1e-6) << "d=" << d << " D=" << D << " R=" << R;
  }
}

TEST(LensCover, SpecialCases) {
  const auto dp = unit_demand();
  EXPECT_EQ(lens_cover_analytic(dp, {{0.5, 0}, 2.0}), 1.0);
  EXPECT_EQ(lens_cover_analytic(dp, {{4, 0}, 2.0}), 0.0);
  EXPECT_NEAR(lens_cover_analytic(dp, {{0, 0}, 0.5}), 0.25, 1e-15);
  EXPECT_NEAR(lens_cover_analytic(dp, {{0.2, 0.1}, 0.5}), 0.25, 1e-15);
  // equal unit discs one radius apart: 2pi/3 - sqrt3/2 over pi
  EXPECT_NEAR(lens_cover_analytic(dp, {{1, 0}, 1.0}), (2 * std::numbers::pi / 3 - std::sqrt(3.0) / 2) / std::numbers::pi,
              1e-14);
}

TEST(JointCover, PublishedGaussColumn) {
  const auto rule = make_quadrature_rule(10);
  for (int k = 0; k <= 10; ++k) {
    const auto ex = paper_example_instance(1.0 + 0.1 * k);
    const double c = joint_cover_quadrature(ex.demand, ex.facilities, rule);
    EXPECT_NEAR(c, kGaussColumn[k], 0.0015) << "R index " << k;
    EXPECT_NEAR(c, kGaussFrozen[k], 5e-6) << "R index " << k;
  }
}

TEST(JointCover, PublishedHexColumn) {
  const auto pattern = make_hex_pattern(220);
  for (int k = 0; k <= 10; ++k) {
    const auto ex = paper_example_instance(1.0 + 0.1 * k);
    EXPECT_NEAR(joint_cover_hexagonal(ex.demand, ex.facilities, pattern), kHex805Column[k], 0.0015) << k;
  }
}

TEST(JointCover, WorkedExampleTextValue) {
  const auto ex = paper_example_instance(1.0);
  EXPECT_NEAR(joint_cover_quadrature(ex.demand, ex.facilities, make_quadrature_rule(10)), 0.923, 5e-4);
}

TEST(JointCover, NoFacilitiesIsZero) {
  const std::vector<Facility> none;
  const auto d = unit_demand();
  EXPECT_EQ(joint_cover_quadrature(d, none, make_quadrature_rule()), 0.0);
  EXPECT_EQ(joint_cover_hexagonal(d, none, make_hex_pattern()), 0.0);
  EXPECT_EQ(joint_cover_montecarlo(d, none, 100, 1).fraction, 0.0);
}

TEST(JointCover, EnclosingFacilityIsOne) {
  const std::vector<Facility> fs{{{0.5, 0}, 3.0}};
  const auto d = unit_demand();
  EXPECT_EQ(joint_cover_quadrature(d, fs, make_quadrature_rule()), 1.0);
  EXPECT_EQ(joint_cover_hexagonal(d, fs, make_hex_pattern()), 1.0);
  const auto mc = joint_cover_montecarlo(d, fs, 100, 1);
  EXPECT_EQ(mc.fraction, 1.0);
  EXPECT_EQ(mc.standard_error, 0.0);
  EXPECT_TRUE(fully_covered(d, fs));
}

// Ten circles and 805 points leave errors of a few thousandths near
// tangency; on average both estimators sit well inside that.
TEST(JointCover, SingleFacilityMatchesLensOnAverage) {
  const auto rule = make_quadrature_rule();
  const auto pattern = make_hex_pattern();
  Rng rng(2);
  double sum_q = 0, sum_h = 0, max_q = 0, max_h = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const DemandPoint d{"x", {rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.5, 2.0), 1};
    const Facility f{{rng.uniform(-4, 4), rng.uniform(-4, 4)}, rng.uniform(0.5, 3.5)};
    const std::vector<Facility> fs{f};
    const double exact = lens_cover_analytic(d, f);
    const double eq = std::abs(joint_cover_quadrature(d, fs, rule) - exact);
    const double eh = std::abs(joint_cover_hexagonal(d, fs, pattern) - exact);
    sum_q += eq;
    sum_h += eh;
    max_q = std::max(max_q, eq);
    max_h = std::max(max_h, eh);
  }
  EXPECT_LT(sum_q / n, 1e-3);
  EXPECT_LT(sum_h / n, 1e-3);
  EXPECT_LT(max_q, 0.08);
  EXPECT_LT(max_h, 0.02);
}

TEST(JointCover, ConvergesToLensWithResolution) {
  const auto fine_rule = make_quadrature_rule(400);
  const auto fine_pattern = make_hex_pattern(20000);
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const double R = rng.uniform(0.5, 2.0), D = rng.uniform(0.5, 3.5), dist = rng.uniform(0.0, R + D);
    const DemandPoint d{"x", {0, 0}, R, 1};
    const Facility f{{dist, 0}, D};
    const std::vector<Facility> fs{f};
    const double exact = lens_cover_analytic(d, f);
    EXPECT_NEAR(joint_cover_quadrature(d, fs, fine_rule), exact, 1e-3);
    EXPECT_NEAR(joint_cover_hexagonal(d, fs, fine_pattern), exact, 1e-3);
  }
}

TEST(JointCover, ColocatedDuplicatesDoNotAddCover) {
  const auto ex = paper_example_instance(1.3);
  auto doubled = ex.facilities;
  doubled.insert(doubled.end(), ex.facilities.begin(), ex.facilities.end());
  const auto rule = make_quadrature_rule();
  EXPECT_DOUBLE_EQ(joint_cover_quadrature(ex.demand, doubled, rule), joint_cover_quadrature(ex.demand, ex.facilities, rule));
}

TEST(JointCover, MonotoneInFacilitySet) {
  const auto rule = make_quadrature_rule();
  const auto pattern = make_hex_pattern();
  const auto ex = paper_example_instance(1.5);
  std::vector<Facility> fs;
  double prev_q = 0, prev_h = 0;
  for (const auto& f : ex.facilities) {
    fs.push_back(f);
    const double q = joint_cover_quadrature(ex.demand, fs, rule);
    const double h = joint_cover_hexagonal(ex.demand, fs, pattern);
    EXPECT_GE(q, prev_q);
    EXPECT_GE(h, prev_h);
    prev_q = q;
    prev_h = h;
  }
}

TEST(JointCover, InvariantUnderRigidMotion) {
  const auto rule = make_quadrature_rule();
  const auto ex = paper_example_instance(1.2);
  const double base = joint_cover_quadrature(ex.demand, ex.facilities, rule);
  const double a = 0.7, c = std::cos(a), s = std::sin(a);
  const Point2 shift{13.5, -4.25};
  auto move = [&](Point2 p) { return Point2{c * p.x - s * p.y, s * p.x + c * p.y} + shift; };
  DemandPoint d = ex.demand;
  d.center = move(d.center);
  std::vector<Facility> fs;
  for (auto f : ex.facilities) fs.push_back({move(f.center), f.cover_radius});
  EXPECT_NEAR(joint_cover_quadrature(d, fs, rule), base, 1e-12);
}

TEST(JointCover, HexMatchesNaiveEvaluator) {
  const auto pattern = make_hex_pattern(110);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const DemandPoint d{"x", {rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(0.5, 2), 1};
    std::vector<Facility> fs;
    for (int k = 0; k < 4; ++k) fs.push_back({{rng.uniform(-4, 4), rng.uniform(-4, 4)}, rng.uniform(0.5, 3)});
    EXPECT_EQ(joint_cover_hexagonal(d, fs, pattern), oracle::hex_cover_naive(d, fs, pattern));
  }
}

TEST(MonteCarlo, DeterministicAndWithinError) {
  const auto ex = paper_example_instance(1.0);
  const auto a = joint_cover_montecarlo(ex.demand, ex.facilities, 200000, 7);
  const auto b = joint_cover_montecarlo(ex.demand, ex.facilities, 200000, 7);
  EXPECT_EQ(a.fraction, b.fraction);
  EXPECT_NEAR(a.standard_error, std::sqrt(a.fraction * (1 - a.fraction) / 200000), 1e-15);
  EXPECT_NEAR(a.fraction, joint_cover_quadrature(ex.demand, ex.facilities, make_quadrature_rule(40)), 4 * a.standard_error);
  EXPECT_THROW(joint_cover_montecarlo(ex.demand, ex.facilities, 0, 1), std::invalid_argument);
}

TEST(Evaluator, BackendsAndNames) {
  EXPECT_EQ(CoverEvaluator::quadrature().name(), "quadrature");
  EXPECT_EQ(CoverEvaluator::hexagonal().name(), "hexagonal");
  EXPECT_EQ(CoverEvaluator::montecarlo(10, 1).name(), "montecarlo");
  EXPECT_THROW(CoverEvaluator::montecarlo(0, 1), std::invalid_argument);
}

TEST(TotalCover, WeightedAverage) {
  Instance inst;
  inst.demand_points = {{"a", {0, 0}, 1, 3}, {"b", {10, 0}, 1, 1}, {"c", {50, 50}, 1, 0}};
  const std::vector<Facility> fs{{{0, 0}, 3}};
  EXPECT_NEAR(total_weighted_cover(inst, fs, CoverEvaluator::quadrature()), 0.75, 1e-15);
  inst.demand_points[0].weight = 0;
  inst.demand_points[1].weight = 0;
  EXPECT_THROW(total_weighted_cover(inst, fs, CoverEvaluator::quadrature()), std::invalid_argument);
}
