#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "steklov/quadrature.hpp"

using namespace steklov;

namespace {

// Exact integral of sum c_k x^k over [a, b].
double poly_integral(const std::vector<double>& c, double a, double b) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double p = static_cast<double>(k + 1);
    s += c[k] * (std::pow(b, p) - std::pow(a, p)) / p;
  }
  return s;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

}  // namespace

TEST(Quadrature, PolynomialsUpToDegreeEightAreExactOnOnePanel) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int degree = 0; degree <= 8; ++degree) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<double> c(static_cast<std::size_t>(degree) + 1);
      for (auto& v : c) v = coef(rng);
      const double a = -1.3, b = 2.1;
      const auto r = integrate([&](double x) { return poly_eval(c, x); }, a, b);
      const double exact = poly_integral(c, a, b);
      EXPECT_NEAR(r.value, exact, 1e-12 * (1.0 + std::abs(exact))) << "degree " << degree;
      EXPECT_EQ(r.panels, 1u) << "a degree-" << degree << " polynomial needs no refinement";
    }
  }
}

TEST(Quadrature, GaussLegendreIsExactToDegreeTwoNMinusOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 64u}) {
    const GaussLegendre gl(n);
    double wsum = 0.0;
    for (double w : gl.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-13);
    std::vector<double> c(std::min<std::size_t>(2 * n, 9));
    for (auto& v : c) v = coef(rng);
    EXPECT_NEAR(gl.integrate([&](double x) { return poly_eval(c, x); }, 0.0, 1.5), poly_integral(c, 0.0, 1.5), 1e-12)
        << "n = " << n;
  }
}

TEST(Quadrature, SmoothAndPeakedIntegrands) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-12);
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, -1.0, 1.0).value, std::exp(1.0) - std::exp(-1.0), 1e-12);
  const double eps = 1e-4;
  const auto peak = integrate([&](double x) { return 1.0 / (eps + x * x); }, -1.0, 1.0, {1e-12, 1e-12, 2000});
  const double exact = 2.0 / std::sqrt(eps) * std::atan(1.0 / std::sqrt(eps));
  EXPECT_NEAR(peak.value, exact, 1e-9 * exact);
  EXPECT_GT(peak.panels, 1u);
}

TEST(Quadrature, ErrorEstimateBoundsTheTrueError) {
  const auto r = integrate([](double x) { return std::cos(30.0 * x); }, 0.0, 2.0, {1e-8, 0.0, 2000});
  const double exact = std::sin(60.0) / 30.0;
  EXPECT_LE(std::abs(r.value - exact), std::max(r.error, 1e-14));
  EXPECT_LE(r.error, 1e-8);
}

TEST(Quadrature, OrientationAndEmptyInterval) {
  auto f = [](double x) { return x * x; };
  EXPECT_NEAR(integrate(f, 2.0, 0.0).value, -8.0 / 3.0, 1e-13);
  const auto z = integrate(f, 1.0, 1.0);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.panels, 0u);
}

TEST(Quadrature, BudgetExhaustionCarriesThePartialResult) {
  try {
    integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); }, 0.0, 1.0, {1e-14, 0.0, 8});
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_GT(e.partial_value, 0.0);
    EXPECT_LE(e.worst_panel_a, 0.3);
    EXPECT_GE(e.worst_panel_b, 0.3);
  }
}

TEST(Quadrature, RejectsInvalidTolerances) {
  auto f = [](double) { return 1.0; };
  EXPECT_THROW(integrate(f, 0.0, 1.0, {0.0, 0.0, 10}), DomainError);
  EXPECT_THROW(integrate(f, 0.0, 1.0, {-1.0, 1e-6, 10}), DomainError);
  EXPECT_THROW(GaussLegendre(0), DomainError);
}

TEST(Quadrature, NonFiniteIntegrandIsAnError) {
  EXPECT_THROW(integrate([](double x) { return x > 0.7 ? std::nan("") : 1.0; }, 0.0, 1.0), QuadratureError);
  EXPECT_THROW(integrate([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0), QuadratureError);
}
