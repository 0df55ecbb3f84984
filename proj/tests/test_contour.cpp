#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "thermosci/contour.hpp"

using namespace thermosci;

namespace {

AxisNodes linear(std::size_t n) {
  AxisNodes a;
  for (std::size_t i = 0; i < n; ++i) a.values.push_back(static_cast<double>(i));
  return a;
}

std::vector<double> field(std::size_t nx, std::size_t ny, auto&& f) {
  std::vector<double> v;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) v.push_back(f(static_cast<double>(i), static_cast<double>(j)));
  return v;
}

}  // namespace

TEST(MarchingSquares, UniformGridHasNoContour) {
  const auto v = field(5, 4, [](double, double) { return 1.0; });
  EXPECT_TRUE(marching_squares(v, linear(5), linear(4)).empty());
  const auto z = field(5, 4, [](double, double) { return 0.0; });
  EXPECT_TRUE(marching_squares(z, linear(5), linear(4)).empty());
}

TEST(MarchingSquares, VerticalLine) {
  const auto v = field(6, 5, [](double x, double) { return 2.3 - x; });
  const auto lines = marching_squares(v, linear(6), linear(5));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].size(), 5u);
  for (const auto& p : lines[0]) EXPECT_NEAR(p.x, 2.3, 1e-12);
}

TEST(MarchingSquares, CircleIsClosedLoop) {
  const auto v = field(21, 21, [](double x, double y) { return 36.0 - (x - 10) * (x - 10) - (y - 10) * (y - 10); });
  const auto lines = marching_squares(v, linear(21), linear(21));
  ASSERT_EQ(lines.size(), 1u);
  const auto& l = lines[0];
  EXPECT_NEAR(l.front().x, l.back().x, 1e-12);
  EXPECT_NEAR(l.front().y, l.back().y, 1e-12);
  for (const auto& p : l) EXPECT_NEAR(std::hypot(p.x - 10, p.y - 10), 6.0, 0.2);
}

TEST(MarchingSquares, TwoSeparateComponents) {
  const auto v = field(12, 4, [](double x, double) { return (x > 2.5 && x < 8.5) ? 1.0 : -1.0; });
  EXPECT_EQ(marching_squares(v, linear(12), linear(4)).size(), 2u);
}

TEST(MarchingSquares, LogAxisInterpolatesGeometrically) {
  AxisNodes x{{1.0, 10.0, 100.0}, true};
  const std::vector<double> v{1.0, -1.0, -1.0, 1.0, -1.0, -1.0};
  const auto lines = marching_squares(v, x, linear(2));
  ASSERT_EQ(lines.size(), 1u);
  for (const auto& p : lines[0]) EXPECT_NEAR(p.x, std::sqrt(10.0), 1e-12);
}

TEST(MarchingSquares, DegenerateInputs) {
  EXPECT_TRUE(marching_squares(std::vector<double>{1.0}, linear(1), linear(1)).empty());
  EXPECT_TRUE(marching_squares(std::vector<double>{1.0, 2.0}, linear(2), linear(2)).empty());
}
