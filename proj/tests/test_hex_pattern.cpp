#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dircover/hex_pattern.hpp"
#include "oracles.hpp"

using namespace dircover;

TEST(HexPattern, PublishedCounts) {
  EXPECT_EQ(make_hex_pattern(52).count(), 199u);
  EXPECT_EQ(make_hex_pattern(110).count(), 397u);
  EXPECT_EQ(make_hex_pattern(220).count(), 805u);
}

TEST(HexPattern, LargestNormFor805) {
  const auto h = make_hex_pattern(220);
  double r = 0;
  for (const auto& p : h.points()) r = std::max(r, std::hypot(p.x, p.y));
  EXPECT_NEAR(r, 0.99342, 5e-6);
}

TEST(HexPattern, MatchesHalfUnitLattice) {
  for (double M : {3.0, 52.0, 110.0, 220.0, 1000.0}) {
    auto expect = oracle::hex_points_naive(M);
    const auto h = make_hex_pattern(M);
    ASSERT_EQ(h.count(), expect.size()) << M;
    const double scale = std::sqrt(2.0 * std::numbers::pi / (expect.size() * std::sqrt(3.0)));
    auto key = [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; };
    std::vector<Point2> got(h.points().begin(), h.points().end());
    for (auto& p : expect) p = scale * p;
    std::sort(got.begin(), got.end(), key);
    std::sort(expect.begin(), expect.end(), key);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i].x, expect[i].x, 1e-12);
      EXPECT_NEAR(got[i].y, expect[i].y, 1e-12);
    }
  }
}

TEST(HexPattern, CellAreaMatchesDisc) {
  // N hexagonal cells of the scaled lattice tile the unit disc's area
  for (double M : {52.0, 110.0, 220.0}) {
    const auto h = make_hex_pattern(M);
    const auto& pts = h.points();
    double nearest = 1e9;
    for (std::size_t i = 1; i < pts.size(); ++i) nearest = std::min(nearest, std::hypot(pts[i].x - pts[0].x, pts[i].y - pts[0].y));
    const double cell = std::sqrt(3.0) / 2.0 * nearest * nearest;
    EXPECT_NEAR(cell * h.count(), std::numbers::pi, 1e-9);
  }
}

TEST(HexPattern, SymmetricAboutCenter) {
  const auto h = make_hex_pattern(220);
  double sx = 0, sy = 0;
  for (const auto& p : h.points()) {
    sx += p.x;
    sy += p.y;
  }
  EXPECT_NEAR(sx, 0, 1e-10);
  EXPECT_NEAR(sy, 0, 1e-10);
}

TEST(HexPattern, RejectsBadBound) {
  EXPECT_THROW(make_hex_pattern(0), std::invalid_argument);
  EXPECT_THROW(make_hex_pattern(-1), std::invalid_argument);
  EXPECT_THROW(make_hex_pattern(std::nan("")), std::invalid_argument);
  EXPECT_EQ(make_hex_pattern(0.1).count(), 1u);
}
