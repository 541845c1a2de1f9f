#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "steklov/catalog.hpp"
#include "steklov/expression.hpp"
#include "steklov/solvers.hpp"

using namespace steklov;

namespace {

std::shared_ptr<const Spectrum> spectrum(double h, std::size_t M, SelectionPolicy p = SelectionPolicy::PerFamily) {
  return std::make_shared<const Spectrum>(build_spectrum(Rectangle(h), M, p));
}

BoundaryFunction expr(const std::string& s) { return BoundaryFunction::from_expression(Expression::parse(s)); }

double max_delta(const Spectrum& spec) {
  double d = 0.0;
  for (const auto& m : spec.modes()) d = std::max(d, m.delta);
  return d;
}

// Non-corner sample points along every side.
std::vector<std::pair<Side, Point>> side_samples(const Rectangle& rect, int n = 13) {
  std::vector<std::pair<Side, Point>> out;
  for (Side s : kAllSides) {
    const auto [a, b] = side_interval(rect, s);
    for (int i = 1; i < n; ++i) out.emplace_back(s, side_point(rect, s, a + (b - a) * i / n));
  }
  return out;
}

}  // namespace

class SolverKinds : public ::testing::TestWithParam<ProblemKind> {};

TEST_P(SolverKinds, SolutionIsLinearInTheData) {
  const auto spec = spectrum(0.8, 3);
  const auto f = expr("x^2 - y^2 + x");
  const auto g = expr("cos(2*x) * y");
  const auto uf = solve(GetParam(), f, spec, 2.0);
  const auto ug = solve(GetParam(), g, spec, 2.0);
  const auto us = solve(GetParam(), linear_combination(1.5, f, -2.0, g), spec, 2.0);
  for (double x : {-0.7, 0.0, 0.55}) {
    for (double y : {-0.6, 0.1, 0.8}) {
      EXPECT_NEAR(us.eval(x, y), 1.5 * uf.eval(x, y) - 2.0 * ug.eval(x, y), 1e-11);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, SolverKinds, ::testing::Values(ProblemKind::Dirichlet, ProblemKind::Robin),
                         [](const auto& info) { return kind_name(info.param); });

TEST(Solvers, NeumannIsLinearOnCompatibleData) {
  const auto spec = spectrum(0.5, 3);
  const auto f = builtin_boundary("bd1", spec->rectangle());
  const auto g = builtin_boundary("bd2", spec->rectangle());
  const auto uf = solve_neumann(f, spec);
  const auto ug = solve_neumann(g, spec);
  const auto us = solve_neumann(linear_combination(0.5, f, 3.0, g), spec);
  EXPECT_NEAR(us.eval(0.2, -0.3), 0.5 * uf.eval(0.2, -0.3) + 3.0 * ug.eval(0.2, -0.3), 1e-11);
}

TEST(Solvers, DirichletTraceIsThePartialSum) {
  const auto spec = spectrum(1.0, 3);
  const auto u = solve_dirichlet(builtin_boundary("f2", spec->rectangle()), spec);
  for (const auto& [s, p] : side_samples(spec->rectangle())) {
    EXPECT_NEAR(u.eval(p.x, p.y), boundary_partial_sum(u.coefficients(), *spec, s, side_parameter(s, p.x, p.y)), 1e-14);
  }
}

TEST(Solvers, RobinBoundaryResidualVanishes) {
  for (double h : {1.0, 0.5}) {
    const auto spec = spectrum(h, 4);
    const auto& rect = spec->rectangle();
    const double b = 1.7;
    const auto u = solve_robin(expr("exp(x) * sin(y) + x"), b, spec);
    const double tol = 1e-8 * (1.0 + max_delta(*spec));
    for (const auto& [s, p] : side_samples(rect)) {
      const double gM = boundary_partial_sum(u.coefficients(), *spec, s, side_parameter(s, p.x, p.y));
      EXPECT_NEAR(u.normal_derivative(p.x, p.y) + b * u.eval(p.x, p.y), gM, tol) << "h " << h;
    }
    EXPECT_DOUBLE_EQ(u.constant_term(), u.coefficients().gbar() / b);
  }
}

TEST(Solvers, NeumannSolutionHasZeroMeanAndMatchesFlux) {
  const auto spec = spectrum(0.8, 4, SelectionPolicy::GlobalSorted);
  const auto& rect = spec->rectangle();
  const auto u = solve_neumann(builtin_boundary("bd2", rect), spec);
  EXPECT_EQ(u.constant_term(), 0.0);
  const auto mean = integrate_boundary(rect, [&](Side, double x, double y) { return u.eval(x, y); }).value;
  EXPECT_NEAR(mean, 0.0, 1e-10);
  const auto flux = integrate_boundary(rect, [&](Side s, double x, double y) {
    const Point g = u.eval_gradient(x, y).gradient;
    const Point n = outward_normal(s);
    return g.x * n.x + g.y * n.y;
  });
  EXPECT_NEAR(flux.value, 0.0, 1e-9);
  for (const auto& [s, p] : side_samples(rect)) {
    const double gM = boundary_partial_sum(u.coefficients(), *spec, s, side_parameter(s, p.x, p.y));
    EXPECT_NEAR(u.normal_derivative(p.x, p.y), gM - u.coefficients().gbar(), 1e-8 * (1.0 + max_delta(*spec)));
  }
}

TEST(Solvers, IncompatibleNeumannDataReportsTheMean) {
  const auto spec = spectrum(1.0, 2);
  try {
    solve_neumann(BoundaryFunction::constant(0.25), spec);
    FAIL() << "expected IncompatibleDataError";
  } catch (const IncompatibleDataError& e) {
    EXPECT_NEAR(e.boundary_mean, 0.25, 1e-14);
  }
  EXPECT_NO_THROW(solve_neumann(BoundaryFunction::constant(0.25), spec, 0.5));
}

TEST(Solvers, RobinRejectsNonPositiveCoefficient) {
  const auto spec = spectrum(1.0, 2);
  EXPECT_THROW(solve_robin(BoundaryFunction::constant(1.0), 0.0, spec), DomainError);
  EXPECT_THROW(solve_robin(BoundaryFunction::constant(1.0), -1.0, spec), DomainError);
  EXPECT_THROW(solve_robin(BoundaryFunction::constant(1.0), std::nan(""), spec), DomainError);
  EXPECT_THROW(solve_dirichlet(BoundaryFunction::constant(1.0), nullptr), DomainError);
}

TEST(Solvers, CornerReductionSplitsOffTheBilinearPart) {
  const auto spec = spectrum(0.5, 3);
  const auto g = builtin_boundary("f3", spec->rectangle());
  const auto red = corner_bilinear_reduction(g, spec->rectangle());
  const auto u = solve_dirichlet(g, spec, true);
  const auto rest = solve_dirichlet(red.remainder, spec);
  ASSERT_TRUE(u.lift().has_value());
  for (double x : {-1.0, -0.2, 0.6}) {
    for (double y : {-0.5, 0.0, 0.3}) EXPECT_NEAR(u.eval(x, y), red.lift(x, y) + rest.eval(x, y), 1e-14);
  }
}

TEST(Solvers, CornerReductionIsExactForBilinearData) {
  const auto spec = spectrum(0.8, 1);
  const auto u = solve_dirichlet(expr("1 + 2*x - 3*y + 4*x*y"), spec, true);
  for (double x : {-0.9, 0.0, 0.4}) {
    for (double y : {-0.7, 0.2}) {
      EXPECT_NEAR(u.eval(x, y), 1 + 2 * x - 3 * y + 4 * x * y, 1e-12);
      const Point g = u.eval_gradient(x, y).gradient;
      EXPECT_NEAR(g.x, 2 + 4 * y, 1e-11);
      EXPECT_NEAR(g.y, -3 + 4 * x, 1e-11);
    }
  }
}

TEST(Solvers, GridLayoutIsRowMajorXFastest) {
  const auto spec = spectrum(0.5, 2);
  const auto u = solve_dirichlet(expr("x + 10*y"), spec);
  const auto two = u.eval_grid(2, 2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_EQ(two[0], u.eval(-1.0, -0.5));
  EXPECT_EQ(two[1], u.eval(1.0, -0.5));
  EXPECT_EQ(two[2], u.eval(-1.0, 0.5));
  EXPECT_EQ(two[3], u.eval(1.0, 0.5));
  const auto grid = u.eval_grid(5, 3, 2);
  ASSERT_EQ(grid.size(), 15u);
  EXPECT_EQ(grid[1 * 5 + 3], u.eval(0.5, 0.0));
  EXPECT_EQ(SteklovApproximation::grid_coordinate(4, 5, 1.0), 1.0);
  EXPECT_THROW(u.eval_grid(1, 4), DomainError);
}

TEST(Solvers, ConstantDataGivesAConstantGrid) {
  const auto spec = spectrum(1.0, 2);
  const auto u = solve_dirichlet(BoundaryFunction::constant(3.0), spec);
  for (double v : u.eval_grid(7, 7)) EXPECT_NEAR(v, 3.0, 1e-12);
}

TEST(Solvers, PointsOutsideTheRectangleAreRejected) {
  const auto spec = spectrum(0.5, 2);
  const auto u = solve_dirichlet(BoundaryFunction::constant(1.0), spec);
  EXPECT_THROW(u.eval(0.0, 0.6), DomainError);
  EXPECT_THROW(u.eval(1.01, 0.0), DomainError);
  EXPECT_NO_THROW(u.eval(1.0, 0.5));
}

TEST(Solvers, NeumannInteriorErrorIsBelowBoundaryError) {
  const Rectangle rect(1.0);
  const auto pb = builtin_problem("bd1", rect);
  const auto u = solve(pb.kind, pb.data, spectrum(1.0, 5, SelectionPolicy::GlobalSorted));
  double interior = 0.0, boundary = 0.0;
  const std::size_t n = 41;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = SteklovApproximation::grid_coordinate(i, n, 1.0);
      const double y = SteklovApproximation::grid_coordinate(k, n, 1.0);
      const double e = std::abs(u.eval(x, y) - pb.exact(x, y));
      (rect.on_boundary(x, y) ? boundary : interior) = std::max(rect.on_boundary(x, y) ? boundary : interior, e);
    }
  }
  EXPECT_LT(interior, boundary);
}

TEST(Solvers, FromCoefficientsReproducesTheSolver) {
  const auto spec = spectrum(0.8, 2);
  const auto u = solve_robin(expr("x*y + 1"), 0.5, spec);
  const auto v = approximation_from_coefficients(ProblemKind::Robin, 0.5, spec, u.coefficients());
  EXPECT_EQ(u.weights(), v.weights());
  EXPECT_THROW(approximation_from_coefficients(ProblemKind::Robin, 0.0, spec, u.coefficients()), DomainError);
}
