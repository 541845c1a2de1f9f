#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/expression.hpp"

using namespace steklov;

namespace {

std::shared_ptr<const Spectrum> spectrum(double h, std::size_t M) {
  return std::make_shared<const Spectrum>(build_spectrum(Rectangle(h), M));
}

const CoefficientOptions kTight{{1e-13, 1e-12, 4000}, 1};

}  // namespace

TEST(Boundary, PerimeterAndSideLengths) {
  const Rectangle rect(0.5);
  EXPECT_NEAR(integrate_boundary(BoundaryFunction::constant(1.0), rect).value, rect.perimeter(), 1e-14);
  EXPECT_DOUBLE_EQ(rect.perimeter(), 6.0);
}

TEST(Boundary, SideMapsAreRequired) {
  std::array<SideMap, 4> maps{[](double, double) { return 0.0; }, nullptr, [](double, double) { return 0.0; },
                              [](double, double) { return 0.0; }};
  EXPECT_THROW(BoundaryFunction("broken", maps), DomainError);
}

TEST(Boundary, ConstantDataHasOnlyAMean) {
  const auto spec = spectrum(0.8, 3);
  const auto c = steklov_coefficients(BoundaryFunction::constant(2.5), *spec, kTight);
  EXPECT_NEAR(c.gbar(), 2.5, 1e-13);
  for (std::size_t j = 1; j < c.size(); ++j) EXPECT_NEAR(c.values[j], 0.0, 1e-12);
  EXPECT_NEAR(c.norm2, 6.25, 1e-12);
}

TEST(Boundary, FiniteExpansionIsRecoveredExactly) {
  const auto spec = spectrum(1.0, 3);
  const SteklovMode a = (*spec)[3], b = (*spec)[10];
  const BoundaryFunction g("combo", [a, b](double x, double y) { return 0.5 + 2.0 * mode_value(a, x, y) - mode_value(b, x, y); });
  const auto c = steklov_coefficients(g, *spec, kTight);
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double want = j == 0 ? 0.5 : j == 3 ? 2.0 : j == 10 ? -1.0 : 0.0;
    EXPECT_NEAR(c.values[j], want, 1e-10) << "mode " << j;
  }
}

TEST(Boundary, CoefficientsAreLinear) {
  const auto spec = spectrum(0.5, 2);
  const Rectangle& rect = spec->rectangle();
  const auto f = builtin_boundary("f2", rect);
  const auto g = BoundaryFunction::from_expression(Expression::parse("exp(x)*cos(y) + x*y^2"));
  const auto cf = steklov_coefficients(f, *spec, kTight);
  const auto cg = steklov_coefficients(g, *spec, kTight);
  const auto cs = steklov_coefficients(linear_combination(3.0, f, -0.5, g), *spec, kTight);
  for (std::size_t j = 0; j < spec->size(); ++j) EXPECT_NEAR(cs.values[j], 3.0 * cf.values[j] - 0.5 * cg.values[j], 1e-11);
}

TEST(Boundary, BesselInequalityHolds) {
  for (double h : {1.0, 0.5}) {
    const auto spec = spectrum(h, 5);
    for (const char* name : {"f1", "f2", "f3", "bd1", "bd2", "bd3"}) {
      const auto c = steklov_coefficients(builtin_boundary(name, spec->rectangle()), *spec, kTight);
      double s = 0.0;
      for (double v : c.values) s += v * v;
      EXPECT_LE(s, c.norm2 * (1.0 + 1e-12)) << name;
    }
  }
}

TEST(Boundary, ProjectionIsIdempotent) {
  const auto spec = spectrum(0.8, 3);
  const auto c = steklov_coefficients(builtin_boundary("f3", spec->rectangle()), *spec, kTight);
  const auto again = steklov_coefficients(partial_sum_function(c, spec), *spec, kTight);
  for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(again.values[j], c.values[j], 1e-11);
}

TEST(Boundary, PartialSumMatchesExpansionValue) {
  const auto spec = spectrum(1.0, 2);
  const auto c = steklov_coefficients(builtin_boundary("f1", spec->rectangle()), *spec);
  EXPECT_NEAR(boundary_partial_sum(c, *spec, Side::G1, 0.25), expansion_value(*spec, c.values, 1.0, 0.25), 1e-15);
  EXPECT_THROW(boundary_partial_sum(c, *spec, Side::G1, 3.0), DomainError);
}

TEST(Boundary, CornerReductionOfF1IsAConstantShift) {
  const Rectangle rect(1.0);
  const auto red = corner_bilinear_reduction(builtin_boundary("f1", rect), rect);
  EXPECT_NEAR(red.a0, -4.0, 1e-14);
  EXPECT_NEAR(red.a1, 0.0, 1e-14);
  EXPECT_NEAR(red.a2, 0.0, 1e-14);
  EXPECT_NEAR(red.a3, 0.0, 1e-14);
  for (Side s : kAllSides) {
    const auto [lo, hi] = side_interval(rect, s);
    EXPECT_NEAR(eval_boundary(red.remainder, rect, s, lo), 0.0, 1e-14);
    EXPECT_NEAR(eval_boundary(red.remainder, rect, s, hi), 0.0, 1e-14);
  }
}

TEST(Boundary, CornerReductionInterpolatesABilinear) {
  const Rectangle rect(0.5);
  const auto g = BoundaryFunction::from_expression(Expression::parse("1 + 2*x - 3*y + 4*x*y + sin(3*x)*sin(y)"));
  const auto red = corner_bilinear_reduction(g, rect);
  // sin(3x) sin(y) is odd-odd, so it feeds only the xy coefficient.
  EXPECT_NEAR(red.a0, 1.0, 1e-14);
  EXPECT_NEAR(red.a1, 2.0, 1e-14);
  EXPECT_NEAR(red.a2, -3.0, 1e-14);
  EXPECT_NEAR(red.a3, 4.0 + std::sin(3.0) * std::sin(0.5) / 0.5, 1e-13);
}

TEST(Boundary, DiscontinuousCornerValuesAreRejected) {
  const Rectangle rect(1.0);
  EXPECT_THROW(corner_bilinear_reduction(builtin_boundary("bd1", rect), rect), CornerConflictError);
}

TEST(Boundary, ParallelCoefficientsMatchSerial) {
  const auto spec = spectrum(0.8, 5);
  const auto g = builtin_boundary("f2", spec->rectangle());
  const auto serial = steklov_coefficients(g, *spec);
  const auto parallel = steklov_coefficients(g, *spec, CoefficientOptions{{}, 4});
  EXPECT_EQ(serial.values, parallel.values);
  EXPECT_EQ(serial.norm2, parallel.norm2);
}
