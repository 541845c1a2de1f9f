#ifndef STEKLOV_PROPERTIES_HPP
#define STEKLOV_PROPERTIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "steklov/analysis.hpp"
#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/solvers.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

struct PropertyOptions {
  TolProfile tol{};
  SelectionPolicy policy = SelectionPolicy::PerFamily;
  double pythagoras = 1e-6;
  double h1_tail = 1e-2;
  double max_principle_slack = 1e-6;
  double robin_identity = 1e-9;
  double neumann = 1e-8;
  std::size_t reference_M = 40;  ///< per-family depth of the tail reference at h = 1
  std::size_t robin_bound_max_M = 10;
  unsigned threads = 1;
};

namespace detail {

inline CoefficientOptions tight_coefficients(unsigned threads) {
  CoefficientOptions o;
  o.quadrature = {1e-13, 1e-12, 4000};
  o.threads = threads;
  return o;
}

}  // namespace detail

/// Quadrature of ||g - g_M||^2 against ||g||^2 - ||g_M||^2 for every catalog datum
/// that lives on this rectangle.
inline CheckResult check_pythagoras(std::shared_ptr<const Spectrum> spec, const PropertyOptions& opt) {
  const Rectangle& rect = spec->rectangle();
  CheckResult c{"spectral Pythagoras", true, 0.0, opt.pythagoras, ""};
  for (const char* name : {"f1", "f2", "f3", "bd1", "bd2", "bd3"}) {
    const auto pb = builtin_problem(name, rect);
    const auto coeffs = steklov_coefficients(pb.data, *spec, detail::tight_coefficients(opt.threads));
    const auto quad = integrate_boundary(
        rect,
        [&](Side s, double x, double y) {
          const double d = pb.data.at(s, x, y) - expansion_value(*spec, coeffs.values, x, y);
          return d * d;
        },
        {1e-13, 1e-12, 8000});
    const double lhs = quad.value / rect.perimeter();
    double partial = 0.0;
    for (double v : coeffs.values) partial += v * v;
    const double rhs = coeffs.norm2 - partial;
    const double rel = std::abs(lhs - rhs) / coeffs.norm2;
    if (rel > c.worst) {
      c.worst = rel;
      c.detail = name;
    }
  }
  c.passed = c.worst <= opt.pythagoras;
  return c;
}

/// Gradient energy of the Dirichlet truncation error of f1 against the
/// spectral tail of a deep reference expansion.
inline CheckResult check_h1_tail(const Rectangle& rect, const PropertyOptions& opt) {
  CheckResult c{"H1 spectral tail identity", true, 0.0, opt.h1_tail, ""};
  const auto pb = builtin_problem("f1", rect);
  // Off the square the truncated tail shrinks only like depth^-2 (about
  // 28 / depth^2 relative at M = 5), so the reference is three times deeper.
  const std::size_t depth = rect.h() == 1.0 ? opt.reference_M : 3 * opt.reference_M;
  auto deep = std::make_shared<const Spectrum>(build_spectrum(rect, depth, SelectionPolicy::PerFamily));
  const auto deep_coeffs = steklov_coefficients(pb.data, *deep, detail::tight_coefficients(opt.threads));
  for (std::size_t M : {2u, 3u, 5u}) {
    auto spec = std::make_shared<const Spectrum>(build_spectrum(rect, M, opt.policy));
    const auto u = solve_dirichlet(pb.data, spec, false, detail::tight_coefficients(opt.threads));
    const double energy = gradient_energy(
        rect,
        [&](double x, double y) {
          const Point ge = pb.exact.gradient(x, y);
          const Point ga = u.eval_gradient(x, y).gradient;
          return Point{ge.x - ga.x, ge.y - ga.y};
        },
        64);
    const double tail = spectral_tail(deep_coeffs, *deep, *spec);
    const double rel = std::abs(energy - tail) / std::max(energy, 1e-300);
    if (rel > c.worst) {
      c.worst = rel;
      c.detail = "M=" + std::to_string(M);
    }
  }
  c.passed = c.worst <= opt.h1_tail;
  return c;
}

/// The interior error of a Dirichlet expansion never exceeds its boundary error.
inline CheckResult check_max_principle(std::shared_ptr<const Spectrum> spec, const PropertyOptions& opt) {
  const Rectangle& rect = spec->rectangle();
  CheckResult c{"maximum principle (grid vs boundary sup)", true, 0.0, opt.max_principle_slack, ""};
  for (const char* name : {"f1", "f2", "f3"}) {
    const auto pb = builtin_problem(name, rect);
    const auto u = solve_dirichlet(pb.data, spec, false, CoefficientOptions{{}, opt.threads});
    ScalarField approx = [&u](double x, double y) { return u.eval(x, y); };
    double bsup = 0.0;
    for (const auto& [s, p] : boundary_samples(rect, 1000)) {
      bsup = std::max(bsup, std::abs(pb.exact(p.x, p.y) - u.eval(p.x, p.y)));
    }
    const auto ie = interior_error(rect, pb.exact.value, approx, {101, 64, opt.threads});
    const double excess = ie.err_sup - bsup;
    if (excess > c.worst || c.detail.empty()) {
      c.worst = std::max(c.worst, excess);
      c.detail = std::string(name) + ": grid sup " + format_number(ie.err_sup, 6) + ", boundary sup " +
                 format_number(bsup, 6);
    }
  }
  c.passed = c.worst <= opt.max_principle_slack;
  return c;
}

/// Robin data (b + delta_k) s_k must reproduce s_k exactly.
inline CheckResult check_robin_identity(std::shared_ptr<const Spectrum> spec, const PropertyOptions& opt) {
  CheckResult c{"Robin eigen-data identity", true, 0.0, opt.robin_identity, ""};
  const double b = 1.0;
  std::mt19937_64 rng(opt.tol.seed + 3);
  const double h = spec->rectangle().h();
  std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-h, h);
  const std::size_t step = std::max<std::size_t>(1, spec->size() / 8);
  for (std::size_t k = 1; k < spec->size(); k += step) {
    const SteklovMode m = (*spec)[k];
    const BoundaryFunction g("eigen data", [m, b](double x, double y) { return (b + m.delta) * mode_value(m, x, y); });
    const auto u = solve_robin(g, b, spec, detail::tight_coefficients(opt.threads));
    double worst = 0.0;
    for (std::size_t j = 0; j < spec->size(); ++j) {
      worst = std::max(worst, std::abs(u.weights()[j] - (j == k ? 1.0 : 0.0)));
    }
    for (int i = 0; i < 20; ++i) {
      const double x = ux(rng), y = uy(rng);
      worst = std::max(worst, std::abs(u.eval(x, y) - mode_value(m, x, y)));
    }
    if (worst > c.worst) {
      c.worst = worst;
      c.detail = detail::mode_label(m);
    }
  }
  c.passed = c.worst <= opt.robin_identity;
  return c;
}

/// For the bd3 Robin problem, the measured squared del-norm error stays below
/// the theoretical bound for M = 1 .. robin_bound_max_M.
inline CheckResult check_robin_bound(const Rectangle& rect, const PropertyOptions& opt) {
  CheckResult c{"Robin error bound dominance", true, 0.0, 1.0, ""};
  const auto pb = builtin_problem("bd3", rect);
  double ratio_max = 0.0;
  for (std::size_t M = 1; M <= opt.robin_bound_max_M; ++M) {
    auto spec = std::make_shared<const Spectrum>(build_spectrum(rect, M, opt.policy));
    const auto u = solve_robin(pb.data, 1.0, spec, detail::tight_coefficients(opt.threads));
    const double measured = del_norm2(
        rect, [&](double x, double y) { return pb.exact(x, y) - u.eval(x, y); },
        [&](double x, double y) {
          const Point ge = pb.exact.gradient(x, y);
          const Point ga = u.eval_gradient(x, y).gradient;
          return Point{ge.x - ga.x, ge.y - ga.y};
        });
    const double bound = robin_bound(u.coefficients(), *spec, 1.0);
    const double ratio = measured / bound;
    if (ratio > ratio_max) {
      ratio_max = ratio;
      c.detail = "M=" + std::to_string(M) + ": measured " + format_number(measured, 6) + " <= bound " +
                 format_number(bound, 6);
    }
  }
  c.worst = ratio_max;
  c.passed = ratio_max <= 1.0;
  return c;
}

/// Neumann expansions have zero boundary mean and normal derivative g_M.
inline CheckResult check_neumann_consistency(std::shared_ptr<const Spectrum> spec, const PropertyOptions& opt) {
  CheckResult c{"Neumann mean and flux consistency", true, 0.0, opt.neumann, ""};
  const Rectangle& rect = spec->rectangle();
  std::mt19937_64 rng(opt.tol.seed + 4);
  for (const char* name : {"bd1", "bd2"}) {
    const auto pb = builtin_problem(name, rect);
    const auto u = solve_neumann(pb.data, spec, std::nullopt, detail::tight_coefficients(opt.threads));
    const auto mean = integrate_boundary(rect, [&](Side, double x, double y) { return u.eval(x, y); }, {1e-14, 1e-12, 4000});
    double worst = std::abs(mean.value / rect.perimeter());
    double delta_max = 0.0;
    for (const auto& m : spec->modes()) delta_max = std::max(delta_max, m.delta);
    for (int i = 0; i < 50; ++i) {
      const Point p = detail::random_boundary_point(rect, rng);
      const double gm = expansion_value(*spec, u.coefficients().values, p.x, p.y);
      worst = std::max(worst, std::abs(u.normal_derivative(p.x, p.y) - gm) / (1.0 + delta_max));
    }
    if (worst > c.worst) {
      c.worst = worst;
      c.detail = name;
    }
  }
  c.passed = c.worst <= opt.neumann;
  return c;
}

/// Spectrum invariants plus the solver-level identities on one rectangle.
inline InvariantReport property_suite(const Rectangle& rect, std::size_t M, const PropertyOptions& opt = {}) {
  auto spec = std::make_shared<const Spectrum>(build_spectrum(rect, M, opt.policy));
  InvariantReport r = invariant_suite(*spec, opt.tol, opt.threads);
  r.checks.push_back(check_pythagoras(spec, opt));
  r.checks.push_back(check_h1_tail(rect, opt));
  r.checks.push_back(check_max_principle(spec, opt));
  r.checks.push_back(check_robin_identity(spec, opt));
  r.checks.push_back(check_robin_bound(rect, opt));
  r.checks.push_back(check_neumann_consistency(spec, opt));
  return r;
}

}  // namespace steklov

#endif  // STEKLOV_PROPERTIES_HPP
