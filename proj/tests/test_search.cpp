#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "qcorr/search.hpp"

namespace qcorr {
namespace {

TEST(MinimizeOnSphere, LinearObjectiveFindsAntipodeOfGradient) {
  const std::array<double, 3> g{1.0, -2.0, 2.0};
  const auto r = minimize_on_sphere<3>(
      [&](const std::array<double, 3>& x) { return g[0] * x[0] + g[1] * x[1] + g[2] * x[2]; });
  EXPECT_NEAR(r.value, -3.0, 1e-10);
  EXPECT_NEAR(r.point[0], -1.0 / 3.0, 1e-5);
  EXPECT_NEAR(r.point[1], 2.0 / 3.0, 1e-5);
  EXPECT_NEAR(r.point[2], -2.0 / 3.0, 1e-5);
}

TEST(MinimizeOnSphere, QuadraticFormGivesSmallestEigenvalue) {
  const std::array<double, 4> d{3.0, 0.5, 2.0, 1.0};
  const auto r = minimize_on_sphere<4>([&](const std::array<double, 4>& x) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += d[k] * x[k] * x[k];
    return s;
  });
  EXPECT_NEAR(r.value, 0.5, 1e-10);
  EXPECT_NEAR(std::abs(r.point[1]), 1.0, 1e-5);
}

TEST(MaximizeOnSphere, NegatesMinimize) {
  const auto r = maximize_on_sphere<2>([](const std::array<double, 2>& x) { return x[0] + x[1]; });
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-10);
}

TEST(MinimizeOnSphere, DeterministicForFixedSeed) {
  auto f = [](const std::array<double, 4>& x) { return std::sin(3 * x[0]) * x[1] + x[2] * x[3]; };
  SearchConfig cfg;
  cfg.seed = 7;
  const auto a = minimize_on_sphere<4>(f, cfg);
  const auto b = minimize_on_sphere<4>(f, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.point, b.point);
}

TEST(MinimizeOnSphere, ResultStaysOnSphere) {
  const auto r = minimize_on_sphere<4>([](const std::array<double, 4>& x) { return x[0] * x[3] - x[1]; });
  double n = 0.0;
  for (double v : r.point) n += v * v;
  EXPECT_NEAR(n, 1.0, 1e-12);
}

}  // namespace
}  // namespace qcorr
