#ifndef STEKLOV_CATALOG_HPP
#define STEKLOV_CATALOG_HPP

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steklov/boundary.hpp"
#include "steklov/error.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

/// Boundary condition attached to a problem. `b` is used only for Robin.
enum class ProblemKind { Dirichlet, Robin, Neumann };

inline std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::Dirichlet: return "dirichlet";
    case ProblemKind::Robin: return "robin";
    case ProblemKind::Neumann: return "neumann";
  }
  return "?";
}

inline ProblemKind kind_from_name(std::string_view s) {
  if (s == "dirichlet") return ProblemKind::Dirichlet;
  if (s == "robin") return ProblemKind::Robin;
  if (s == "neumann") return ProblemKind::Neumann;
  throw DomainError("unknown problem kind '" + std::string(s) + "'");
}

/// A closed-form harmonic function with its gradient.
struct ExactSolution {
  std::string name;
  std::function<double(double, double)> value;
  std::function<Point(double, double)> gradient;

  double operator()(double x, double y) const { return value(x, y); }

  /// Trace on the boundary, usable as Dirichlet data.
  BoundaryFunction trace() const { return BoundaryFunction(name, value); }
};

inline ExactSolution exact_solution(std::string_view name) {
  if (name == "f1") {
    return {"f1", [](double x, double y) { return x * x * x * x - 6.0 * x * x * y * y + y * y * y * y; },
            [](double x, double y) {
              return Point{4.0 * x * x * x - 12.0 * x * y * y, 4.0 * y * y * y - 12.0 * x * x * y};
            }};
  }
  if (name == "f2") {
    return {"f2",
            [](double x, double y) {
              const double u = 2.0 - x;
              return u / (u * u + y * y);
            },
            [](double x, double y) {
              const double u = 2.0 - x;
              const double r2 = u * u + y * y;
              return Point{(u * u - y * y) / (r2 * r2), -2.0 * u * y / (r2 * r2)};
            }};
  }
  if (name == "f3") {
    return {"f3",
            [](double x, double y) { return 0.5 * std::log((x - 3.0) * (x - 3.0) + (y - 3.0) * (y - 3.0)); },
            [](double x, double y) {
              const double r2 = (x - 3.0) * (x - 3.0) + (y - 3.0) * (y - 3.0);
              return Point{(x - 3.0) / r2, (y - 3.0) / r2};
            }};
  }
  if (name == "x+y") {
    return {"x+y", [](double x, double y) { return x + y; }, [](double, double) { return Point{1.0, 1.0}; }};
  }
  if (name == "x^2-y^2") {
    return {"x^2-y^2", [](double x, double y) { return x * x - y * y; },
            [](double x, double y) { return Point{2.0 * x, -2.0 * y}; }};
  }
  if (name == "exp(x)sin(y)") {
    return {"exp(x)sin(y)", [](double x, double y) { return std::exp(x) * std::sin(y); },
            [](double x, double y) { return Point{std::exp(x) * std::sin(y), std::exp(x) * std::cos(y)}; }};
  }
  throw DomainError("no closed-form solution named '" + std::string(name) + "'");
}

/// Boundary data of one catalog problem, with the problem it belongs to.
struct CatalogProblem {
  BoundaryFunction data;
  ProblemKind kind;
  double b;
  ExactSolution exact;
};

/// Catalog entries: f1, f2, f3 (Dirichlet traces), bd1 and bd2 (Neumann data
/// for x+y and x^2-y^2) and bd3 (Robin data with b = 1 for exp(x) sin y).
/// bd3 depends on h and is only defined for b = 1.
inline CatalogProblem builtin_problem(std::string_view name, const Rectangle& rect, double b = 1.0) {
  const double h = rect.h();
  if (name == "f1" || name == "f2" || name == "f3") {
    auto exact = exact_solution(name);
    return {exact.trace(), ProblemKind::Dirichlet, 0.0, exact};
  }
  if (name == "bd1") {
    auto one = [](double, double) { return 1.0; };
    auto minus_one = [](double, double) { return -1.0; };
    return {BoundaryFunction("bd1", {one, one, minus_one, minus_one}), ProblemKind::Neumann, 0.0,
            exact_solution("x+y")};
  }
  if (name == "bd2") {
    auto two = [](double, double) { return 2.0; };
    auto minus_2h = [h](double, double) { return -2.0 * h; };
    return {BoundaryFunction("bd2", {two, minus_2h, two, minus_2h}), ProblemKind::Neumann, 0.0,
            exact_solution("x^2-y^2")};
  }
  if (name == "bd3") {
    if (b != 1.0) throw DomainError("builtin bd3 is Robin data for b = 1 only (got b = " + format_number(b, 6) + ")");
    const double ch = std::cos(h) + std::sin(h);
    return {BoundaryFunction("bd3", {[](double, double y) { return 2.0 * std::numbers::e * std::sin(y); },
                                     [ch](double x, double) { return std::exp(x) * ch; },
                                     [](double, double) { return 0.0; },
                                     [ch](double x, double) { return -std::exp(x) * ch; }}),
            ProblemKind::Robin, 1.0, exact_solution("exp(x)sin(y)")};
  }
  throw DomainError("unknown builtin boundary data '" + std::string(name) + "'");
}

inline BoundaryFunction builtin_boundary(std::string_view name, const Rectangle& rect, double b = 1.0) {
  return builtin_problem(name, rect, b).data;
}

/// The five evaluation points used for pointwise tables.
inline const std::array<Point, 5>& reference_points() {
  static const std::array<Point, 5> pts{Point{0.9, 0.9}, Point{0.9, 0.1}, Point{0.8, 0.6}, Point{0.3, 0.9},
                                        Point{0.5, 0.5}};
  return pts;
}

}  // namespace steklov

#endif  // STEKLOV_CATALOG_HPP
