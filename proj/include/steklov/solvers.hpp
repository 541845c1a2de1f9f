#ifndef STEKLOV_SOLVERS_HPP
#define STEKLOV_SOLVERS_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/error.hpp"
#include "steklov/parallel.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

struct GradientSample {
  Point gradient;
  bool on_boundary = false;  ///< one-sided values; the expansion is still smooth there
};

/// Truncated Steklov expansion solving a Laplace boundary value problem.
///
/// u_M(x,y) = lift(x,y) + sum_j weights[j] * s_j(x,y), where weights[0] is the
/// constant term and lift is the optional corner bilinear part. Immutable.
class SteklovApproximation {
public:
  SteklovApproximation(ProblemKind kind, double b, std::shared_ptr<const Spectrum> spec, SteklovCoefficients coeffs,
                       std::vector<double> weights, std::optional<BilinearReduction> lift = std::nullopt)
      : kind_(kind), b_(b), spec_(std::move(spec)), coeffs_(std::move(coeffs)), weights_(std::move(weights)),
        lift_(std::move(lift)) {
    if (!spec_) throw DomainError("approximation needs a spectrum");
    if (weights_.size() != spec_->size() || coeffs_.size() != spec_->size()) {
      throw DomainError("weight and coefficient counts must match the spectrum size");
    }
  }

  ProblemKind kind() const noexcept { return kind_; }
  double b() const noexcept { return b_; }
  const Spectrum& spectrum() const noexcept { return *spec_; }
  std::shared_ptr<const Spectrum> spectrum_ptr() const noexcept { return spec_; }
  const Rectangle& rectangle() const noexcept { return spec_->rectangle(); }
  const SteklovCoefficients& coefficients() const noexcept { return coeffs_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double constant_term() const { return weights_.front(); }
  const std::optional<BilinearReduction>& lift() const noexcept { return lift_; }

  double eval(double x, double y) const {
    rectangle().require_contains(x, y);
    double v = expansion_value(*spec_, weights_, x, y);
    if (lift_) v += lift_->lift(x, y);
    return v;
  }

  double operator()(double x, double y) const { return eval(x, y); }

  GradientSample eval_gradient(double x, double y) const {
    rectangle().require_contains(x, y);
    Point g{0.0, 0.0};
    for (std::size_t j = 0; j < spec_->size(); ++j) {
      if (weights_[j] == 0.0) continue;
      const Point gj = mode_gradient((*spec_)[j], x, y);
      g.x += weights_[j] * gj.x;
      g.y += weights_[j] * gj.y;
    }
    if (lift_) {
      const Point gl = lift_->lift_gradient(x, y);
      g.x += gl.x;
      g.y += gl.y;
    }
    return {g, rectangle().on_boundary(x, y)};
  }

  /// Outward normal derivative at a non-corner boundary point.
  double normal_derivative(double x, double y) const {
    const Side s = boundary_side_of(x, y, rectangle().h());
    const Point g = eval_gradient(x, y).gradient;
    const Point n = outward_normal(s);
    return g.x * n.x + g.y * n.y;
  }

  /// Values on the nx-by-ny equispaced grid over the closed rectangle,
  /// row-major with x varying fastest.
  std::vector<double> eval_grid(std::size_t nx, std::size_t ny, unsigned threads = 1) const {
    if (nx < 2 || ny < 2) throw DomainError("grid needs at least two points in each direction");
    std::vector<double> out(nx * ny);
    parallel_for(ny, threads, [&](std::size_t k) {
      const double y = grid_coordinate(k, ny, rectangle().h());
      for (std::size_t i = 0; i < nx; ++i) out[k * nx + i] = eval(grid_coordinate(i, nx, 1.0), y);
    });
    return out;
  }

  /// i-th of n equispaced points on [-half, half]; both ends are hit exactly.
  static double grid_coordinate(std::size_t i, std::size_t n, double half) {
    return -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
  }

private:
  ProblemKind kind_;
  double b_;
  std::shared_ptr<const Spectrum> spec_;
  SteklovCoefficients coeffs_;
  std::vector<double> weights_;
  std::optional<BilinearReduction> lift_;
};

namespace detail {

inline std::vector<double> robin_weights(const SteklovCoefficients& c, const Spectrum& spec, double b) {
  std::vector<double> w(spec.size());
  w[0] = c.values[0] / b;
  for (std::size_t j = 1; j < spec.size(); ++j) w[j] = c.values[j] / (b + spec[j].delta);
  return w;
}

inline std::vector<double> neumann_weights(const SteklovCoefficients& c, const Spectrum& spec) {
  std::vector<double> w(spec.size(), 0.0);
  for (std::size_t j = 1; j < spec.size(); ++j) w[j] = c.values[j] / spec[j].delta;
  return w;
}

}  // namespace detail

/// Harmonic extension of Dirichlet data: weights are the Steklov coefficients.
///
/// With corner reduction the bilinear interpolant of the corner values is
/// stored as a lift and only the remainder is expanded.
inline SteklovApproximation solve_dirichlet(const BoundaryFunction& g, std::shared_ptr<const Spectrum> spec,
                                            bool corner_reduction = false, const CoefficientOptions& opt = {}) {
  if (!spec) throw DomainError("solve_dirichlet needs a spectrum");
  if (corner_reduction) {
    auto red = corner_bilinear_reduction(g, spec->rectangle());
    auto c = steklov_coefficients(red.remainder, *spec, opt);
    auto w = c.values;
    return SteklovApproximation(ProblemKind::Dirichlet, 0.0, std::move(spec), std::move(c), std::move(w), std::move(red));
  }
  auto c = steklov_coefficients(g, *spec, opt);
  auto w = c.values;
  return SteklovApproximation(ProblemKind::Dirichlet, 0.0, std::move(spec), std::move(c), std::move(w));
}

/// Galerkin solution of du/dn + b u = g: weights ghat_j / (b + delta_j), constant gbar / b.
inline SteklovApproximation solve_robin(const BoundaryFunction& g, double b, std::shared_ptr<const Spectrum> spec,
                                        const CoefficientOptions& opt = {}) {
  if (!spec) throw DomainError("solve_robin needs a spectrum");
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("Robin coefficient b must be positive, got " + format_number(b, 6));
  auto c = steklov_coefficients(g, *spec, opt);
  auto w = detail::robin_weights(c, *spec, b);
  return SteklovApproximation(ProblemKind::Robin, b, std::move(spec), std::move(c), std::move(w));
}

/// Minimum-norm Neumann solution: weights ghat_j / delta_j and zero boundary mean.
///
/// The data must satisfy the compatibility condition |gbar| <= mean_tol; the
/// default tolerance is 1e-8 times the weighted boundary L2 norm of g.
inline SteklovApproximation solve_neumann(const BoundaryFunction& g, std::shared_ptr<const Spectrum> spec,
                                          std::optional<double> mean_tol = std::nullopt,
                                          const CoefficientOptions& opt = {}) {
  if (!spec) throw DomainError("solve_neumann needs a spectrum");
  auto c = steklov_coefficients(g, *spec, opt);
  const double tol = mean_tol.value_or(1e-8 * std::sqrt(c.norm2));
  if (!(std::abs(c.gbar()) <= tol)) {
    throw IncompatibleDataError("Neumann data '" + g.name() + "' has boundary mean " + format_number(c.gbar(), 6) +
                                    ", compatibility needs |mean| <= " + format_number(tol, 3),
                                c.gbar());
  }
  auto w = detail::neumann_weights(c, *spec);
  return SteklovApproximation(ProblemKind::Neumann, 0.0, std::move(spec), std::move(c), std::move(w));
}

/// Rebuilds an approximation of the given kind from precomputed coefficients.
inline SteklovApproximation approximation_from_coefficients(ProblemKind kind, double b,
                                                            std::shared_ptr<const Spectrum> spec,
                                                            SteklovCoefficients c,
                                                            std::optional<BilinearReduction> lift = std::nullopt) {
  if (!spec) throw DomainError("approximation needs a spectrum");
  std::vector<double> w;
  switch (kind) {
    case ProblemKind::Dirichlet: w = c.values; break;
    case ProblemKind::Robin:
      if (!(b > 0.0)) throw DomainError("Robin coefficient b must be positive");
      w = detail::robin_weights(c, *spec, b);
      break;
    case ProblemKind::Neumann: w = detail::neumann_weights(c, *spec); break;
  }
  return SteklovApproximation(kind, b, std::move(spec), std::move(c), std::move(w), std::move(lift));
}

/// Dispatches on the problem kind.
inline SteklovApproximation solve(ProblemKind kind, const BoundaryFunction& g, std::shared_ptr<const Spectrum> spec,
                                  double b = 1.0, bool corner_reduction = false, const CoefficientOptions& opt = {}) {
  switch (kind) {
    case ProblemKind::Dirichlet: return solve_dirichlet(g, std::move(spec), corner_reduction, opt);
    case ProblemKind::Robin: return solve_robin(g, b, std::move(spec), opt);
    case ProblemKind::Neumann: return solve_neumann(g, std::move(spec), std::nullopt, opt);
  }
  throw DomainError("unknown problem kind");
}

}  // namespace steklov

#endif  // STEKLOV_SOLVERS_HPP
