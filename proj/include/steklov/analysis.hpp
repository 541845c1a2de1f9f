#ifndef STEKLOV_ANALYSIS_HPP
#define STEKLOV_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "steklov/boundary.hpp"
#include "steklov/catalog.hpp"
#include "steklov/error.hpp"
#include "steklov/geometry.hpp"
#include "steklov/parallel.hpp"
#include "steklov/quadrature.hpp"
#include "steklov/solvers.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

using ScalarField = std::function<double(double, double)>;
using BoundaryField = std::function<double(Side, double, double)>;
using GradientField = std::function<Point(double, double)>;

// ---------------------------------------------------------------------------
// Error norms
// ---------------------------------------------------------------------------

struct BoundaryErrorOptions {
  std::size_t samples_per_side = 1000;  ///< intervals per side; both endpoints are sampled
  QuadratureOptions quadrature{1e-14, 1e-10, 4000};
};

/// Unweighted boundary norms of an error and of its reference.
struct BoundaryErrorResult {
  double err_l2 = 0.0;   ///< sqrt of the boundary integral of (ref - approx)^2
  double err_sup = 0.0;  ///< sampled sup of |ref - approx|
  double ref_l2 = 0.0;
  double ref_sup = 0.0;

  double rerr_2() const { return ref_l2 > 0.0 ? err_l2 / ref_l2 : err_l2; }
  double rerr_inf() const { return ref_sup > 0.0 ? err_sup / ref_sup : err_sup; }
};

/// Points t_i = a + (b - a) i / n, i = 0..n, on every side, corners included.
inline std::vector<std::pair<Side, Point>> boundary_samples(const Rectangle& rect, std::size_t per_side) {
  std::vector<std::pair<Side, Point>> out;
  out.reserve(4 * (per_side + 1));
  for (Side s : kAllSides) {
    const auto [a, b] = side_interval(rect, s);
    for (std::size_t i = 0; i <= per_side; ++i) {
      const double t = i == per_side ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(per_side);
      out.emplace_back(s, side_point(rect, s, t));
    }
  }
  return out;
}

/// Boundary error of `approx` against `reference`; corner samples use the
/// owning side's reference map.
inline BoundaryErrorResult boundary_error(const Rectangle& rect, const BoundaryField& reference,
                                          const ScalarField& approx, const BoundaryErrorOptions& opt = {}) {
  if (opt.samples_per_side < 16) throw DomainError("boundary error needs at least 16 samples per side");
  BoundaryErrorResult r;
  for (const auto& [s, p] : boundary_samples(rect, opt.samples_per_side)) {
    const double ref = reference(s, p.x, p.y);
    r.err_sup = std::max(r.err_sup, std::abs(ref - approx(p.x, p.y)));
    r.ref_sup = std::max(r.ref_sup, std::abs(ref));
  }
  const auto e2 = integrate_boundary(
      rect,
      [&](Side s, double x, double y) {
        const double d = reference(s, x, y) - approx(x, y);
        return d * d;
      },
      opt.quadrature);
  const auto g2 = integrate_boundary(
      rect,
      [&](Side s, double x, double y) {
        const double v = reference(s, x, y);
        return v * v;
      },
      opt.quadrature);
  r.err_l2 = std::sqrt(std::max(0.0, e2.value));
  r.ref_l2 = std::sqrt(std::max(0.0, g2.value));
  return r;
}

inline BoundaryField as_boundary_field(const BoundaryFunction& g) {
  return [g](Side s, double x, double y) { return g.at(s, x, y); };
}

inline BoundaryField as_boundary_field(ScalarField f) {
  return [f = std::move(f)](Side, double x, double y) { return f(x, y); };
}

struct InteriorErrorOptions {
  std::size_t grid = 101;
  std::size_t gauss = 64;
  unsigned threads = 1;
};

struct InteriorErrorResult {
  double err_l2 = 0.0;         ///< tensor Gauss-Legendre L2 norm of the error
  double err_sup = 0.0;        ///< sup over the closed grid
  double err_sup_center = 0.0; ///< sup over grid points with |x| <= 1/2, |y| <= h/2
  double ref_l2 = 0.0;
  double ref_sup = 0.0;
};

inline InteriorErrorResult interior_error(const Rectangle& rect, const ScalarField& exact, const ScalarField& approx,
                                          const InteriorErrorOptions& opt = {}) {
  if (opt.grid < 2) throw DomainError("interior grid needs at least two points per direction");
  const double h = rect.h();
  const std::size_t n = opt.grid;
  std::vector<double> row_sup(n, 0.0), row_center(n, 0.0), row_ref(n, 0.0);
  parallel_for(n, opt.threads, [&](std::size_t k) {
    const double y = SteklovApproximation::grid_coordinate(k, n, h);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = SteklovApproximation::grid_coordinate(i, n, 1.0);
      const double ex = exact(x, y);
      const double e = std::abs(ex - approx(x, y));
      row_sup[k] = std::max(row_sup[k], e);
      row_ref[k] = std::max(row_ref[k], std::abs(ex));
      if (std::abs(x) <= 0.5 + 1e-12 && std::abs(y) <= 0.5 * h + 1e-12) row_center[k] = std::max(row_center[k], e);
    }
  });
  InteriorErrorResult r;
  for (std::size_t k = 0; k < n; ++k) {
    r.err_sup = std::max(r.err_sup, row_sup[k]);
    r.err_sup_center = std::max(r.err_sup_center, row_center[k]);
    r.ref_sup = std::max(r.ref_sup, row_ref[k]);
  }
  const GaussLegendre gl(opt.gauss);
  std::vector<double> e2(gl.nodes.size(), 0.0), g2(gl.nodes.size(), 0.0);
  parallel_for(gl.nodes.size(), opt.threads, [&](std::size_t k) {
    const double y = h * gl.nodes[k];
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = gl.nodes[i];
      const double ex = exact(x, y);
      const double d = ex - approx(x, y);
      e2[k] += gl.weights[i] * d * d;
      g2[k] += gl.weights[i] * ex * ex;
    }
  });
  double se = 0.0, sg = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    se += gl.weights[k] * e2[k];
    sg += gl.weights[k] * g2[k];
  }
  r.err_l2 = std::sqrt(se * h);
  r.ref_l2 = std::sqrt(sg * h);
  return r;
}

/// Integral over the rectangle of |grad f|^2 by tensor Gauss-Legendre.
inline double gradient_energy(const Rectangle& rect, const GradientField& grad, std::size_t gauss = 64) {
  const GaussLegendre gl(gauss);
  const double h = rect.h();
  double sum = 0.0;
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    double row = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const Point g = grad(gl.nodes[i], h * gl.nodes[k]);
      row += gl.weights[i] * (g.x * g.x + g.y * g.y);
    }
    sum += gl.weights[k] * row;
  }
  return sum * h;
}

/// |dOmega|^{-1} (integral of |grad f|^2 over the rectangle + integral of f^2 over the boundary).
/// Under this weighting a boundary-normalized mode has squared norm 1 + delta.
inline double del_norm2(const Rectangle& rect, const ScalarField& f, const GradientField& grad,
                        std::size_t gauss = 64, const QuadratureOptions& q = {1e-14, 1e-10, 4000}) {
  const double interior = gradient_energy(rect, grad, gauss);
  const auto trace = integrate_boundary(
      rect,
      [&](Side, double x, double y) {
        const double v = f(x, y);
        return v * v;
      },
      q);
  return (interior + trace.value) / rect.perimeter();
}

// ---------------------------------------------------------------------------
// Pointwise tables
// ---------------------------------------------------------------------------

struct PointwiseRow {
  Point point;
  double approx = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
};

inline std::vector<PointwiseRow> pointwise_table(const ScalarField& exact, const ScalarField& approx,
                                                 const std::vector<Point>& points) {
  std::vector<PointwiseRow> rows;
  rows.reserve(points.size());
  for (const Point& p : points) {
    const double a = approx(p.x, p.y);
    const double e = exact(p.x, p.y);
    rows.push_back({p, a, e, std::abs(e - a)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Spectral tails and bounds
// ---------------------------------------------------------------------------

inline bool same_mode(const SteklovMode& a, const SteklovMode& b) {
  if (a.family != b.family) return false;
  if (!is_separable(a.family)) return true;
  return std::abs(a.nu - b.nu) <= 1e-9 * std::max(1.0, a.nu);
}

inline bool spectrum_contains(const Spectrum& spec, const SteklovMode& m) {
  return std::any_of(spec.modes().begin(), spec.modes().end(), [&](const SteklovMode& k) { return same_mode(k, m); });
}

/// |dOmega| * sum of delta_j ghat_j^2 over modes of the deep spectrum that are
/// not retained. This equals the squared gradient norm of the truncation
/// error, truncated at the depth of `deep`.
inline double spectral_tail(const SteklovCoefficients& deep_coeffs, const Spectrum& deep, const Spectrum& retained) {
  if (deep_coeffs.size() != deep.size()) throw DomainError("coefficients were not computed on the deep spectrum");
  double sum = 0.0;
  for (std::size_t j = 1; j < deep.size(); ++j) {
    if (!spectrum_contains(retained, deep[j])) sum += deep[j].delta * deep_coeffs.values[j] * deep_coeffs.values[j];
  }
  return deep.rectangle().perimeter() * sum;
}

/// Smallest eigenvalue among modes that the spectrum does not retain.
inline double next_eigenvalue(const Spectrum& retained) {
  const Spectrum sorted = build_sorted_spectrum(retained.rectangle(), retained.size());
  for (std::size_t j = 1; j < sorted.size(); ++j) {
    if (!spectrum_contains(retained, sorted[j])) return sorted[j].delta;
  }
  throw Error("internal: no eigenvalue outside the retained spectrum");
}

/// Weighted coefficient tail: |dOmega|^{-1} ||g||^2 minus the retained squares.
inline double coefficient_tail(const SteklovCoefficients& c, std::size_t retained) {
  double s = c.norm2;
  for (std::size_t j = 0; j < std::min(retained, c.size()); ++j) s -= c.values[j] * c.values[j];
  return std::max(0.0, s);
}

/// Upper bound on the squared del-norm of the Robin truncation error:
/// (1 + d) / (b + d)^2 times the coefficient tail, d the first eigenvalue left out.
inline double robin_bound(const SteklovCoefficients& c, const Spectrum& retained, double b) {
  if (c.size() != retained.size()) throw DomainError("coefficients were not computed on this spectrum");
  if (!(b > 0.0)) throw DomainError("Robin bound needs b > 0");
  const double d = next_eigenvalue(retained);
  return (1.0 + d) / ((b + d) * (b + d)) * coefficient_tail(c, retained.size());
}

/// Same bound with the first `retained` modes of a deeper eigenvalue-sorted spectrum.
inline double robin_bound(const SteklovCoefficients& c, const Spectrum& sorted, double b, std::size_t retained) {
  if (sorted.size() <= retained) {
    throw DomainError("spectrum holds " + std::to_string(sorted.size()) + " modes; the bound needs mode " +
                      std::to_string(retained));
  }
  if (!(b > 0.0)) throw DomainError("Robin bound needs b > 0");
  const double d = sorted[retained].delta;
  return (1.0 + d) / ((b + d) * (b + d)) * coefficient_tail(c, retained);
}

/// Neumann analogue, evaluated with b = 0 in the Robin factor.
inline double neumann_bound(const SteklovCoefficients& c, const Spectrum& retained) {
  const double d = next_eigenvalue(retained);
  return (1.0 + d) / (d * d) * coefficient_tail(c, retained.size());
}

// ---------------------------------------------------------------------------
// Error reports and convergence studies
// ---------------------------------------------------------------------------

struct ErrorReport {
  std::size_t M = 0;
  double rerr_inf = 0.0;
  double rerr_2 = 0.0;
  double err_L2_boundary = 0.0;
  double err_sup_boundary = 0.0;
  std::optional<double> err_L2_interior;
  std::optional<double> err_sup_interior;
  std::optional<double> err_sup_center;  ///< sup over the centered half-rectangle
  std::optional<double> spectral_tail;
  std::optional<double> robin_bound;
};

struct StudyOptions {
  SelectionPolicy policy = SelectionPolicy::PerFamily;
  bool corner_reduction = false;
  CoefficientOptions coefficients{};
  BoundaryErrorOptions boundary{};
  std::optional<InteriorErrorOptions> interior;
  std::size_t tail_reference_M = 0;  ///< 0 disables the spectral tail
  std::size_t reference_M = 40;      ///< depth of the surrogate solution when no closed form is given
};

struct StudyResult {
  std::vector<ErrorReport> reports;
  bool boundary_l2_nonincreasing = true;
};

/// Solves for every M in `Ms` and reports boundary (and optionally interior)
/// errors against the exact solution. Without one, Dirichlet errors are
/// measured against the data and other kinds against a deep expansion.
inline StudyResult convergence_study(const BoundaryFunction& g, ProblemKind kind, double b, const Rectangle& rect,
                                     const std::vector<std::size_t>& Ms, const std::optional<ExactSolution>& exact,
                                     const StudyOptions& opt = {}) {
  for (std::size_t i = 1; i < Ms.size(); ++i) {
    if (Ms[i] <= Ms[i - 1]) throw DomainError("convergence study needs an increasing list of M");
  }
  BoundaryField ref_trace;
  ScalarField ref_field;
  if (exact) {
    ref_trace = as_boundary_field(exact->value);
    ref_field = exact->value;
  } else {
    auto deep = std::make_shared<const Spectrum>(build_spectrum(rect, opt.reference_M, SelectionPolicy::PerFamily));
    auto surrogate = std::make_shared<SteklovApproximation>(
        solve(kind, g, deep, b, opt.corner_reduction && kind == ProblemKind::Dirichlet, opt.coefficients));
    ref_field = [surrogate](double x, double y) { return surrogate->eval(x, y); };
    ref_trace = kind == ProblemKind::Dirichlet ? as_boundary_field(g) : as_boundary_field(ref_field);
  }

  std::shared_ptr<const Spectrum> tail_spec;
  std::optional<SteklovCoefficients> tail_coeffs;
  std::optional<BilinearReduction> tail_reduction;
  if (opt.tail_reference_M > 0) {
    tail_spec = std::make_shared<const Spectrum>(build_spectrum(rect, opt.tail_reference_M, SelectionPolicy::PerFamily));
    if (opt.corner_reduction && kind == ProblemKind::Dirichlet) tail_reduction = corner_bilinear_reduction(g, rect);
    tail_coeffs = steklov_coefficients(tail_reduction ? tail_reduction->remainder : g, *tail_spec, opt.coefficients);
  }

  StudyResult result;
  for (std::size_t M : Ms) {
    auto spec = std::make_shared<const Spectrum>(build_spectrum(rect, M, opt.policy));
    const auto u = solve(kind, g, spec, b, opt.corner_reduction && kind == ProblemKind::Dirichlet, opt.coefficients);
    ScalarField approx = [&u](double x, double y) { return u.eval(x, y); };
    const auto be = boundary_error(rect, ref_trace, approx, opt.boundary);
    ErrorReport rep;
    rep.M = M;
    rep.rerr_inf = be.rerr_inf();
    rep.rerr_2 = be.rerr_2();
    rep.err_L2_boundary = be.err_l2;
    rep.err_sup_boundary = be.err_sup;
    if (opt.interior) {
      const auto ie = interior_error(rect, ref_field, approx, *opt.interior);
      rep.err_L2_interior = ie.err_l2;
      rep.err_sup_interior = ie.err_sup;
      rep.err_sup_center = ie.err_sup_center;
    }
    if (tail_coeffs) rep.spectral_tail = spectral_tail(*tail_coeffs, *tail_spec, *spec);
    if (kind == ProblemKind::Robin) rep.robin_bound = robin_bound(u.coefficients(), *spec, b);
    if (!result.reports.empty() && rep.err_L2_boundary > result.reports.back().err_L2_boundary * (1.0 + 1e-12)) {
      result.boundary_l2_nonincreasing = false;
    }
    result.reports.push_back(rep);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Invariant checks
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst = 0.0;      ///< largest violation measure seen
  double tolerance = 0.0;  ///< threshold the measure is compared with
  std::string detail;
};

struct InvariantReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct TolProfile {
  double orthonormality = 1e-8;
  double steklov_residual = 1e-8;
  double root_residual = 1e-13;
  double harmonic_order = 1.99;
  double scaling = 1e-12;
  std::size_t boundary_points_per_mode = 100;
  std::uint64_t seed = 0;
  QuadratureOptions quadrature{1e-13, 1e-11, 4000};
};

namespace detail {

inline std::string mode_label(const SteklovMode& m) {
  std::ostringstream os;
  os << "#" << m.index << " " << family_name(m.family);
  if (is_separable(m.family)) os << " nu=" << m.nu;
  return os.str();
}

inline Point random_boundary_point(const Rectangle& rect, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side_pick(0.0, rect.perimeter());
  double arc = side_pick(rng);
  for (Side s : kAllSides) {
    const double len = side_length(rect, s);
    if (arc <= len || s == Side::G4) {
      const auto [a, b] = side_interval(rect, s);
      // Keep away from corners, where the normal is undefined.
      const double t = std::clamp(a + arc, a + 1e-6, b - 1e-6);
      return side_point(rect, s, t);
    }
    arc -= len;
  }
  return side_point(rect, Side::G1, 0.0);
}

// Five-point Laplacian of a mode at (x, y) with stencil width w.
inline double fd_laplacian(const SteklovMode& m, double x, double y, double w) {
  return (mode_value(m, x + w, y) + mode_value(m, x - w, y) + mode_value(m, x, y + w) + mode_value(m, x, y - w) -
          4.0 * mode_value(m, x, y)) /
         (w * w);
}

}  // namespace detail

/// Boundary orthonormality of every pair of modes, by adaptive quadrature.
inline CheckResult check_orthonormality(const Spectrum& spec, const TolProfile& tol, unsigned threads = 1) {
  const Rectangle& rect = spec.rectangle();
  const std::size_t n = spec.size();
  std::vector<double> worst_row(n, 0.0);
  std::vector<std::string> where(n);
  parallel_for(n, threads, [&](std::size_t j) {
    for (std::size_t k = j; k < n; ++k) {
      const auto r = integrate_boundary(
          rect, [&](Side, double x, double y) { return mode_value(spec[j], x, y) * mode_value(spec[k], x, y); },
          tol.quadrature);
      const double ip = r.value / rect.perimeter();
      const double violation = std::abs(ip - (j == k ? 1.0 : 0.0));
      if (violation > worst_row[j]) {
        worst_row[j] = violation;
        where[j] = detail::mode_label(spec[j]) + " with " + detail::mode_label(spec[k]);
      }
    }
  });
  CheckResult c{"boundary orthonormality", true, 0.0, tol.orthonormality, ""};
  for (std::size_t j = 0; j < n; ++j) {
    if (worst_row[j] > c.worst) {
      c.worst = worst_row[j];
      c.detail = where[j];
    }
  }
  c.passed = c.worst <= tol.orthonormality;
  return c;
}

/// |dn s - delta s| at random boundary points, relative to (1 + delta) max|s|.
inline CheckResult check_steklov_residual(const Spectrum& spec, const TolProfile& tol) {
  std::mt19937_64 rng(tol.seed);
  CheckResult c{"Steklov boundary residual", true, 0.0, tol.steklov_residual, ""};
  for (const auto& m : spec.modes()) {
    double scale = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < tol.boundary_points_per_mode; ++i) {
      const Point p = detail::random_boundary_point(spec.rectangle(), rng);
      const double s = mode_value(m, p.x, p.y);
      scale = std::max(scale, std::abs(s));
      worst = std::max(worst, std::abs(mode_normal_derivative(m, p.x, p.y) - m.delta * s));
    }
    for (const Point& q : spec.rectangle().corners()) scale = std::max(scale, std::abs(mode_value(m, q.x, q.y)));
    const double rel = worst / ((1.0 + m.delta) * std::max(scale, 1e-300));
    if (rel > c.worst) {
      c.worst = rel;
      c.detail = detail::mode_label(m);
    }
  }
  c.passed = c.worst <= tol.steklov_residual;
  return c;
}

/// Characteristic residuals, eigenvalue rules and stored normalization constants.
inline CheckResult check_mode_data(const Spectrum& spec, const TolProfile& tol) {
  CheckResult c{"root residual, eigenvalue rule and normalization", true, 0.0, 1.0, ""};
  const Rectangle& rect = spec.rectangle();
  for (const auto& m : spec.modes()) {
    if (!is_separable(m.family)) continue;
    const double slope = std::max(characteristic_slope(m.family, m.nu, rect), 1.0);
    const double scale = 1.0 + m.nu * detail::scales(m.family, rect.h()).trig;
    const double root_measure = std::abs(characteristic_residual(m.family, m.nu, rect)) /
                                (10.0 * tol.root_residual * slope * scale);
    const double rule = eigenvalue_of(m.family, m.nu, rect);
    const double rule_measure = std::abs(rule - m.delta) / (1e-14 * std::max(1.0, rule));
    const double fresh = make_mode(m.family, m.nu, rect).norm_scaled;
    const double norm_measure = std::abs(fresh - m.norm_scaled) / (1e-10 * fresh);
    const double measure = std::max({root_measure, rule_measure, norm_measure});
    if (measure > c.worst) {
      c.worst = measure;
      c.detail = detail::mode_label(m);
    }
  }
  c.passed = c.worst <= 1.0;
  return c;
}

/// Observed order of the five-point Laplacian, which is exactly second order
/// for every separable mode and exact for the polynomial ones.
inline CheckResult check_harmonicity(const Spectrum& spec, const TolProfile& tol) {
  std::mt19937_64 rng(tol.seed + 1);
  const double h = spec.rectangle().h();
  std::uniform_real_distribution<double> ux(-0.8, 0.8), uy(-0.8 * h, 0.8 * h);
  CheckResult c{"interior harmonicity (finite-difference order)", true, 0.0, tol.harmonic_order, ""};
  double worst_order = 1e300;
  for (const auto& m : spec.modes()) {
    const double x = ux(rng), y = uy(rng);
    if (!is_separable(m.family)) {
      const double e = std::abs(detail::fd_laplacian(m, x, y, 1e-2));
      if (e > 1e-9) {
        worst_order = -1.0;
        c.detail = detail::mode_label(m) + " has a nonzero discrete Laplacian";
      }
      continue;
    }
    const double w = std::min(0.05 * h, 0.25 / std::max(1.0, m.nu));
    const double e1 = std::abs(detail::fd_laplacian(m, x, y, w));
    const double e2 = std::abs(detail::fd_laplacian(m, x, y, 0.5 * w));
    const double size = std::abs(mode_value(m, x, y)) * m.nu * m.nu * m.nu * m.nu * w * w;
    if (e1 <= 1e-6 * size || e1 < 1e-10) continue;  // sampled near a nodal line
    const double order = std::log2(e1 / e2);
    if (order < worst_order) {
      worst_order = order;
      c.detail = detail::mode_label(m);
    }
  }
  c.worst = worst_order == 1e300 ? 2.0 : worst_order;
  c.passed = c.worst >= tol.harmonic_order;
  return c;
}

/// Within each family, eigenvalues increase strictly with the root index; a
/// sorted spectrum is nondecreasing overall.
inline CheckResult check_monotonicity(const Spectrum& spec, const TolProfile&) {
  CheckResult c{"eigenvalue monotonicity", true, 0.0, 0.0, ""};
  for (Family f : kSeparableFamilies) {
    std::vector<SteklovMode> fam;
    for (const auto& m : spec.modes()) {
      if (m.family == f) fam.push_back(m);
    }
    std::sort(fam.begin(), fam.end(), [](const SteklovMode& a, const SteklovMode& b) { return a.nu < b.nu; });
    for (std::size_t i = 1; i < fam.size(); ++i) {
      if (!(fam[i].delta > fam[i - 1].delta)) {
        c.passed = false;
        c.worst = std::max(c.worst, fam[i - 1].delta - fam[i].delta);
        c.detail = family_name(f) + " eigenvalues not increasing";
      }
    }
  }
  for (std::size_t j = 1; j < spec.size(); ++j) {
    // Near-degenerate runs are ordered by family, so allow that much slack.
    if (spec[j].delta < spec[j - 1].delta - kDegeneracyTolerance) {
      c.passed = false;
      c.worst = std::max(c.worst, spec[j - 1].delta - spec[j].delta);
      c.detail = "spectrum order broken at " + detail::mode_label(spec[j]);
    }
  }
  return c;
}

/// Dilation by L divides eigenvalues by L, and the dilated mode satisfies the
/// Steklov condition with that eigenvalue.
inline CheckResult check_scaling(const Spectrum& spec, const TolProfile& tol) {
  CheckResult c{"dilation scaling", true, 0.0, tol.scaling, ""};
  std::mt19937_64 rng(tol.seed + 2);
  for (double L : {0.5, 2.0, 3.0}) {
    for (const auto& m : spec.modes()) {
      const ScaledMode sm = scale_mode(m, L);
      const double expected = m.delta / L;
      const double err = std::abs(sm.delta() - expected) / std::max(1.0, expected);
      double resid = 0.0;
      double scale = 1e-300;
      for (int i = 0; i < 5; ++i) {
        const Point p = detail::random_boundary_point(spec.rectangle(), rng);
        const double v = sm.value(L * p.x, L * p.y);
        scale = std::max(scale, std::abs(v));
        resid = std::max(resid, std::abs(sm.normal_derivative(L * p.x, L * p.y) - sm.delta() * v));
      }
      // The residual is a derived floating-point identity, held to the
      // Steklov-residual tolerance rather than the exact-division one.
      const double rel = std::max(err / tol.scaling,
                                  resid / ((1.0 + sm.delta()) * scale) / tol.steklov_residual);
      if (rel > c.worst) {
        c.worst = rel;
        c.detail = detail::mode_label(m) + " L=" + format_number(L, 6);
      }
    }
  }
  c.passed = c.worst <= 1.0;
  c.tolerance = 1.0;
  return c;
}

/// Runs the spectrum-level invariant checks and reports the worst violation of each.
inline InvariantReport invariant_suite(const Spectrum& spec, const TolProfile& tol = {}, unsigned threads = 1) {
  InvariantReport r;
  r.checks.push_back(check_mode_data(spec, tol));
  r.checks.push_back(check_orthonormality(spec, tol, threads));
  r.checks.push_back(check_steklov_residual(spec, tol));
  r.checks.push_back(check_harmonicity(spec, tol));
  r.checks.push_back(check_monotonicity(spec, tol));
  r.checks.push_back(check_scaling(spec, tol));
  return r;
}

}  // namespace steklov

#endif  // STEKLOV_ANALYSIS_HPP
