#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <memory>

#include "steklov/analysis.hpp"
#include "steklov/expression.hpp"
#include "steklov/properties.hpp"

using namespace steklov;

namespace {

std::shared_ptr<const Spectrum> spectrum(double h, std::size_t M, SelectionPolicy p = SelectionPolicy::PerFamily) {
  return std::make_shared<const Spectrum>(build_spectrum(Rectangle(h), M, p));
}

}  // namespace

TEST(BoundaryError, ZeroAgainstItself) {
  const Rectangle rect(0.8);
  const ScalarField f = [](double x, double y) { return std::exp(x) * std::cos(y); };
  const auto r = boundary_error(rect, as_boundary_field(f), f);
  EXPECT_EQ(r.err_sup, 0.0);
  EXPECT_NEAR(r.err_l2, 0.0, 1e-14);
  EXPECT_GT(r.ref_l2, 0.0);
  EXPECT_NEAR(r.ref_sup, std::exp(1.0) * 1.0, 1e-12);
}

TEST(BoundaryError, KnownConstantOffset) {
  const Rectangle rect(0.5);
  const auto r = boundary_error(rect, as_boundary_field(ScalarField([](double, double) { return 2.0; })),
                                [](double, double) { return 2.5; });
  EXPECT_NEAR(r.err_sup, 0.5, 1e-15);
  EXPECT_NEAR(r.err_l2, 0.5 * std::sqrt(rect.perimeter()), 1e-12);
  EXPECT_NEAR(r.rerr_2(), 0.25, 1e-12);
  EXPECT_NEAR(r.rerr_inf(), 0.25, 1e-15);
}

TEST(BoundaryError, NeedsEnoughSamples) {
  const Rectangle rect(1.0);
  const ScalarField f = [](double, double) { return 1.0; };
  EXPECT_THROW(boundary_error(rect, as_boundary_field(f), f, {15, {}}), DomainError);
  EXPECT_EQ(boundary_samples(rect, 16).size(), 4u * 17u);
}

TEST(BoundaryError, RelativeErrorsAreScaleInvariant) {
  const auto spec = spectrum(1.0, 3);
  const auto& rect = spec->rectangle();
  const auto g = builtin_boundary("f2", rect);
  const auto g10 = linear_combination(10.0, g, 0.0, g);
  const auto u = solve_dirichlet(g, spec);
  const auto u10 = solve_dirichlet(g10, spec);
  const auto a = boundary_error(rect, as_boundary_field(g), [&](double x, double y) { return u.eval(x, y); });
  const auto b = boundary_error(rect, as_boundary_field(g10), [&](double x, double y) { return u10.eval(x, y); });
  EXPECT_NEAR(a.rerr_2(), b.rerr_2(), 1e-12 * a.rerr_2());
  EXPECT_NEAR(a.rerr_inf(), b.rerr_inf(), 1e-12 * a.rerr_inf());
}

TEST(InteriorError, CenterSupIsBoundedByFullSup) {
  const Rectangle rect(1.0);
  const ScalarField exact = [](double x, double y) { return x * x - y * y; };
  const ScalarField approx = [](double x, double y) { return x * x - y * y + 0.01 * x * x * y * y; };
  const auto r = interior_error(rect, exact, approx, {21, 16, 2});
  EXPECT_NEAR(r.err_sup, 0.01, 1e-15);
  EXPECT_LE(r.err_sup_center, 0.01 * 0.0625 + 1e-15);
  EXPECT_THROW(interior_error(rect, exact, approx, {1, 16, 1}), DomainError);
}

TEST(ConvergenceStudy, DirichletBoundaryErrorDecreases) {
  const Rectangle rect(1.0);
  const auto pb = builtin_problem("f1", rect);
  const auto study = convergence_study(pb.data, pb.kind, 0.0, rect, {1, 2, 3, 5}, pb.exact);
  ASSERT_EQ(study.reports.size(), 4u);
  EXPECT_TRUE(study.boundary_l2_nonincreasing);
  for (std::size_t i = 1; i < study.reports.size(); ++i) {
    EXPECT_LT(study.reports[i].rerr_2, study.reports[i - 1].rerr_2);
  }
  EXPECT_FALSE(study.reports[0].err_sup_interior.has_value());
  EXPECT_THROW(convergence_study(pb.data, pb.kind, 0.0, rect, {3, 2}, pb.exact), DomainError);
}

TEST(ConvergenceStudy, SpectralTailMatchesTheGradientEnergy) {
  const Rectangle rect(1.0);
  const auto pb = builtin_problem("f1", rect);
  StudyOptions opt;
  opt.tail_reference_M = 40;
  const auto study = convergence_study(pb.data, pb.kind, 0.0, rect, {2, 3}, pb.exact, opt);
  for (const auto& rep : study.reports) {
    ASSERT_TRUE(rep.spectral_tail.has_value());
    const auto u = solve_dirichlet(pb.data, std::make_shared<const Spectrum>(build_spectrum(rect, rep.M)));
    const double energy = gradient_energy(rect, [&](double x, double y) {
      const Point ge = pb.exact.gradient(x, y);
      const Point ga = u.eval_gradient(x, y).gradient;
      return Point{ge.x - ga.x, ge.y - ga.y};
    });
    EXPECT_NEAR(*rep.spectral_tail, energy, 1e-3 * energy) << "M=" << rep.M;
  }
  EXPECT_LT(*study.reports[1].spectral_tail, *study.reports[0].spectral_tail);
}

TEST(ConvergenceStudy, InteriorErrorsAreReportedOnRequest) {
  const Rectangle rect(1.0);
  const auto pb = builtin_problem("bd1", rect);
  StudyOptions opt;
  opt.policy = SelectionPolicy::GlobalSorted;
  opt.interior = InteriorErrorOptions{51, 32, 1};
  const auto study = convergence_study(pb.data, pb.kind, 0.0, rect, {5}, pb.exact, opt);
  const auto& rep = study.reports.front();
  ASSERT_TRUE(rep.err_sup_center.has_value());
  EXPECT_LT(*rep.err_sup_center, *rep.err_sup_interior);
  EXPECT_LE(*rep.err_sup_interior, rep.err_sup_boundary * (1.0 + 1e-12));
}

TEST(RobinBound, ZeroForDataInTheSpan) {
  const auto spec = spectrum(0.8, 3);
  const auto g = partial_sum_function(steklov_coefficients(BoundaryFunction::from_expression(Expression::parse("x*y + x")), *spec), spec);
  const auto c = steklov_coefficients(g, *spec, {{1e-14, 1e-13, 4000}, 1});
  EXPECT_NEAR(robin_bound(c, *spec, 1.0), 0.0, 1e-12);
}

TEST(RobinBound, NonincreasingInTheRetainedCount) {
  const Rectangle rect(1.0);
  const auto sorted = build_sorted_spectrum(rect, 11);
  const auto c = steklov_coefficients(builtin_boundary("bd3", rect), sorted);
  double prev = 1e300;
  for (std::size_t retained = 1; retained <= 10; ++retained) {
    const double b = robin_bound(c, sorted, 1.0, retained);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, prev * (1.0 + 1e-12)) << "retained " << retained;
    prev = b;
  }
  EXPECT_THROW(robin_bound(c, sorted, 1.0, sorted.size()), DomainError);
  EXPECT_THROW(robin_bound(c, sorted, 0.0, 3), DomainError);
}

TEST(RobinBound, DominatesTheObservedDelNormError) {
  const Rectangle rect(1.0);
  const auto pb = builtin_problem("bd3", rect);
  const auto spec = spectrum(1.0, 2, SelectionPolicy::GlobalSorted);
  const auto u = solve_robin(pb.data, 1.0, spec);
  const ScalarField diff = [&](double x, double y) { return pb.exact(x, y) - u.eval(x, y); };
  const GradientField grad = [&](double x, double y) {
    const Point g = u.eval_gradient(x, y).gradient;
    return Point{std::exp(x) * std::sin(y) - g.x, std::exp(x) * std::cos(y) - g.y};
  };
  const double err2 = del_norm2(rect, diff, grad);
  EXPECT_LE(err2, robin_bound(u.coefficients(), *spec, 1.0) * (1.0 + 1e-6));
}

TEST(DelNorm, ModeNormIsOnePlusDelta) {
  const auto spec = spectrum(0.5, 2);
  for (std::size_t j : {1u, 4u, 9u}) {
    const SteklovMode& m = (*spec)[j];
    const double n2 = del_norm2(
        spec->rectangle(), [&](double x, double y) { return mode_value(m, x, y); },
        [&](double x, double y) { return mode_gradient(m, x, y); });
    EXPECT_NEAR(n2, 1.0 + m.delta, 1e-9 * (1.0 + m.delta)) << "mode " << j;
  }
}

TEST(Tails, CoefficientTailAndNextEigenvalue) {
  const auto spec = spectrum(1.0, 2, SelectionPolicy::GlobalSorted);
  SteklovCoefficients c;
  c.values.assign(spec->size(), 0.0);
  c.values[0] = 1.0;
  c.values[1] = 0.5;
  c.norm2 = 2.0;
  EXPECT_DOUBLE_EQ(coefficient_tail(c, 2), 0.75);
  EXPECT_DOUBLE_EQ(coefficient_tail(c, 1), 1.0);
  const double next = next_eigenvalue(*spec);
  for (const auto& m : spec->modes()) EXPECT_LT(m.delta, next + 1e-12);
}

TEST(Properties, SuitePassesAtModerateOrder) {
  const auto start = std::chrono::steady_clock::now();
  PropertyOptions opt;
  opt.threads = 2;
  const auto report = property_suite(Rectangle(0.8), 3, opt);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.worst << " vs " << c.tolerance << " " << c.detail;
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

TEST(Properties, PointwiseTableColumns) {
  const auto rows = pointwise_table([](double x, double y) { return x + y; }, [](double x, double) { return x; },
                                    {Point{0.5, 0.25}, Point{-1.0, -0.5}});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].approx, 0.5);
  EXPECT_EQ(rows[0].exact, 0.75);
  EXPECT_EQ(rows[1].abs_error, 0.5);
}
