#ifndef STEKLOV_BOUNDARY_HPP
#define STEKLOV_BOUNDARY_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "steklov/error.hpp"
#include "steklov/expression.hpp"
#include "steklov/geometry.hpp"
#include "steklov/parallel.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

/// Map from a boundary point (x, y) to a data value, used on one side.
using SideMap = std::function<double(double, double)>;

/// Scalar data on the boundary, given by one map per side.
///
/// Nothing ties the maps together at the corners, so piecewise data with
/// jumps there is representable; a corner value is always asked for through
/// one of its two sides.
class BoundaryFunction {
public:
  BoundaryFunction(std::string name, SideMap uniform) : name_(std::move(name)), maps_{uniform, uniform, uniform, uniform} {}
  BoundaryFunction(std::string name, std::array<SideMap, 4> maps) : name_(std::move(name)), maps_(std::move(maps)) {
    for (const auto& m : maps_) {
      if (!m) throw DomainError("boundary function '" + name_ + "' is missing a side map");
    }
  }

  static BoundaryFunction constant(double c) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return BoundaryFunction(buf, [c](double, double) { return c; });
  }

  static BoundaryFunction from_expression(const Expression& e) {
    return BoundaryFunction(e.source(), [e](double x, double y) { return e(x, y); });
  }

  /// Each side carries a polynomial in its own arc-length parameter t,
  /// coefficients in increasing degree.
  static BoundaryFunction side_polynomials(std::string name, std::array<std::vector<double>, 4> coeffs) {
    std::array<SideMap, 4> maps;
    for (Side s : kAllSides) {
      auto c = coeffs[static_cast<std::size_t>(s)];
      maps[static_cast<std::size_t>(s)] = [s, c](double x, double y) {
        const double t = side_parameter(s, x, y);
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
        return v;
      };
    }
    return BoundaryFunction(std::move(name), std::move(maps));
  }

  const std::string& name() const noexcept { return name_; }

  double at(Side s, double x, double y) const { return maps_[static_cast<std::size_t>(s)](x, y); }

  const SideMap& map(Side s) const { return maps_[static_cast<std::size_t>(s)]; }

private:
  std::string name_;
  std::array<SideMap, 4> maps_;
};

/// alpha * f + beta * g, side by side.
inline BoundaryFunction linear_combination(double alpha, const BoundaryFunction& f, double beta,
                                           const BoundaryFunction& g) {
  std::array<SideMap, 4> maps;
  for (Side s : kAllSides) {
    maps[static_cast<std::size_t>(s)] = [alpha, beta, fm = f.map(s), gm = g.map(s)](double x, double y) {
      return alpha * fm(x, y) + beta * gm(x, y);
    };
  }
  return BoundaryFunction(f.name() + " (combined with) " + g.name(), std::move(maps));
}

/// Value of g at parameter t of the given side.
inline double eval_boundary(const BoundaryFunction& g, const Rectangle& rect, Side side, double t) {
  require_parameter(rect, side, t);
  const Point p = side_point(rect, side, t);
  return g.at(side, p.x, p.y);
}

// ---------------------------------------------------------------------------
// Boundary integration
// ---------------------------------------------------------------------------

struct BoundaryIntegral {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Integral over the boundary of f(side, x, y) d(sigma).
///
/// Each side is integrated separately by adaptive Gauss-Kronrod, so jumps at
/// corners never fall inside a panel.
template <class F>
BoundaryIntegral integrate_boundary(const Rectangle& rect, F&& f, const QuadratureOptions& opt = {}) {
  BoundaryIntegral total;
  for (Side s : kAllSides) {
    const auto [a, b] = side_interval(rect, s);
    auto integrand = [&](double t) {
      const Point p = side_point(rect, s, t);
      return f(s, p.x, p.y);
    };
    const auto r = integrate(integrand, a, b, opt);
    total.value += r.value;
    total.error += r.error;
    total.panels += r.panels;
  }
  return total;
}

inline BoundaryIntegral integrate_boundary(const BoundaryFunction& g, const Rectangle& rect,
                                           const QuadratureOptions& opt = {}) {
  return integrate_boundary(rect, [&](Side s, double x, double y) { return g.at(s, x, y); }, opt);
}

// ---------------------------------------------------------------------------
// Steklov coefficients
// ---------------------------------------------------------------------------

/// Weighted boundary inner products of data g with every mode of a spectrum.
///
/// values[j] = |dOmega|^{-1} * integral of g * s_j; values[0] is the boundary
/// mean of g because the constant mode is first. `errors` holds the
/// quadrature error estimate of each entry on the same scale.
struct SteklovCoefficients {
  std::vector<double> values;
  std::vector<double> errors;
  double norm2 = 0.0;  ///< |dOmega|^{-1} * integral of g^2

  double gbar() const { return values.at(0); }
  std::size_t size() const noexcept { return values.size(); }
};

struct CoefficientOptions {
  QuadratureOptions quadrature{};
  unsigned threads = 1;
};

inline SteklovCoefficients steklov_coefficients(const BoundaryFunction& g, const Spectrum& spec,
                                                const CoefficientOptions& opt = {}) {
  const Rectangle& rect = spec.rectangle();
  const double inv_perimeter = 1.0 / rect.perimeter();
  SteklovCoefficients c;
  c.values.assign(spec.size(), 0.0);
  c.errors.assign(spec.size(), 0.0);
  parallel_for(spec.size() + 1, opt.threads, [&](std::size_t j) {
    if (j == spec.size()) {
      const auto r = integrate_boundary(
          rect, [&](Side s, double x, double y) { const double v = g.at(s, x, y); return v * v; }, opt.quadrature);
      c.norm2 = r.value * inv_perimeter;
      return;
    }
    const SteklovMode& m = spec[j];
    try {
      const auto r = integrate_boundary(
          rect, [&](Side s, double x, double y) { return g.at(s, x, y) * mode_value(m, x, y); }, opt.quadrature);
      c.values[j] = r.value * inv_perimeter;
      c.errors[j] = r.error * inv_perimeter;
    } catch (const QuadratureError& e) {
      throw QuadratureError("coefficient of mode " + std::to_string(j) + " (" + family_name(m.family) +
                                ", nu = " + format_number(m.nu, 6) + ") of data '" + g.name() + "': " + e.what(),
                            e.partial_value * inv_perimeter, e.worst_panel_a, e.worst_panel_b);
    }
  });
  return c;
}

/// Sum of weights[j] * s_j(x, y) over the spectrum.
inline double expansion_value(const Spectrum& spec, const std::vector<double>& weights, double x, double y) {
  if (weights.size() != spec.size()) throw DomainError("coefficient count does not match the spectrum");
  double sum = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (weights[j] != 0.0) sum += weights[j] * mode_value(spec[j], x, y);
  }
  return sum;
}

/// g_M at parameter t of a side: the boundary partial sum of the expansion.
inline double boundary_partial_sum(const SteklovCoefficients& c, const Spectrum& spec, Side side, double t) {
  require_parameter(spec.rectangle(), side, t);
  const Point p = side_point(spec.rectangle(), side, t);
  return expansion_value(spec, c.values, p.x, p.y);
}

/// The partial sum as boundary data in its own right.
inline BoundaryFunction partial_sum_function(const SteklovCoefficients& c, std::shared_ptr<const Spectrum> spec) {
  auto values = c.values;
  return BoundaryFunction("partial sum", [values = std::move(values), spec](double x, double y) {
    return expansion_value(*spec, values, x, y);
  });
}

// ---------------------------------------------------------------------------
// Corner bilinear reduction
// ---------------------------------------------------------------------------

/// g = (a0 + a1 x + a2 y + a3 x y) + remainder, with the remainder zero at all four corners.
struct BilinearReduction {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  BoundaryFunction remainder{"0", [](double, double) { return 0.0; }};

  double lift(double x, double y) const { return a0 + a1 * x + a2 * y + a3 * x * y; }
  Point lift_gradient(double x, double y) const { return {a1 + a3 * y, a2 + a3 * x}; }
};

inline BilinearReduction corner_bilinear_reduction(const BoundaryFunction& g, const Rectangle& rect,
                                                   double tol = 1e-9) {
  const double h = rect.h();
  // Corners counterclockwise from (1,h), each with the two sides that meet there.
  const std::array<std::pair<Side, Side>, 4> owners{{{Side::G1, Side::G2},
                                                     {Side::G2, Side::G3},
                                                     {Side::G3, Side::G4},
                                                     {Side::G4, Side::G1}}};
  const auto corners = rect.corners();
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Point p = corners[i];
    const double first = g.at(owners[i].first, p.x, p.y);
    const double second = g.at(owners[i].second, p.x, p.y);
    if (!(std::abs(first - second) <= tol * std::max(1.0, std::max(std::abs(first), std::abs(second))))) {
      throw CornerConflictError("data '" + g.name() + "' takes values " + format_number(first, 6) + " on " +
                                side_name(owners[i].first) + " and " + format_number(second, 6) + " on " +
                                side_name(owners[i].second) + " at corner (" + format_number(p.x, 6) + ", " +
                                format_number(p.y, 6) + ")");
    }
    v[i] = 0.5 * (first + second);
  }
  const double vpp = v[0], vmp = v[1], vmm = v[2], vpm = v[3];
  BilinearReduction r;
  r.a0 = 0.25 * (vpp + vmp + vmm + vpm);
  r.a1 = 0.25 * (vpp - vmp - vmm + vpm);
  r.a2 = 0.25 * (vpp + vmp - vmm - vpm) / h;
  r.a3 = 0.25 * (vpp - vmp + vmm - vpm) / h;
  std::array<SideMap, 4> maps;
  for (Side s : kAllSides) {
    maps[static_cast<std::size_t>(s)] = [gm = g.map(s), a0 = r.a0, a1 = r.a1, a2 = r.a2, a3 = r.a3](double x, double y) {
      return gm(x, y) - (a0 + a1 * x + a2 * y + a3 * x * y);
    };
  }
  r.remainder = BoundaryFunction(g.name() + " minus corner bilinear", std::move(maps));
  return r;
}

}  // namespace steklov

#endif  // STEKLOV_BOUNDARY_HPP
