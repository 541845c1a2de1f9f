#ifndef STEKLOV_SPECTRUM_HPP
#define STEKLOV_SPECTRUM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "steklov/error.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

// ---------------------------------------------------------------------------
// Family tags
// ---------------------------------------------------------------------------

/// Harmonic Steklov eigenfunction families on the rectangle.
///
/// `Const` is the constant mode (delta = 0) and `XY` the bilinear mode xy,
/// which is an eigenfunction only when h = 1. F1..F8 are the separable
/// families; their profiles and characteristic equations are listed in
/// `family_traits`.
enum class Family { Const, XY, F1, F2, F3, F4, F5, F6, F7, F8 };

inline constexpr std::array<Family, 8> kSeparableFamilies{Family::F1, Family::F2, Family::F3, Family::F4,
                                                          Family::F5, Family::F6, Family::F7, Family::F8};

/// Parity class about the center: I even/even, II odd/odd, III even-x/odd-y, IV odd-x/even-y.
enum class SymmetryClass { I, II, III, IV };

enum class Profile { One, Linear, Cosh, Sinh, Cos, Sin };

/// Eigenvalue rules: nu*tanh(nu), nu*tanh(nu h), nu*coth(nu), nu*coth(nu h).
enum class EigenRule { None, TanhNu, TanhNuH, CothNu, CothNuH };

struct FamilyTraits {
  std::string_view name;
  SymmetryClass symmetry;
  Profile x_profile;
  Profile y_profile;
  EigenRule rule;
  bool hyperbolic_in_x;
  std::string_view equation;
};

inline constexpr FamilyTraits family_traits(Family f) {
  switch (f) {
    case Family::Const:
      return {"Const", SymmetryClass::I, Profile::One, Profile::One, EigenRule::None, false, "delta = 0"};
    case Family::XY:
      return {"XY", SymmetryClass::II, Profile::Linear, Profile::Linear, EigenRule::None, false, "h = 1"};
    case Family::F1:
      return {"F1", SymmetryClass::I, Profile::Cosh, Profile::Cos, EigenRule::TanhNu, true,
              "tan(nu h) + tanh(nu) = 0"};
    case Family::F2:
      return {"F2", SymmetryClass::I, Profile::Cos, Profile::Cosh, EigenRule::TanhNuH, false,
              "tan(nu) + tanh(nu h) = 0"};
    case Family::F3:
      return {"F3", SymmetryClass::II, Profile::Sinh, Profile::Sin, EigenRule::CothNu, true,
              "cot(nu h) - coth(nu) = 0"};
    case Family::F4:
      return {"F4", SymmetryClass::II, Profile::Sin, Profile::Sinh, EigenRule::CothNuH, false,
              "cot(nu) - coth(nu h) = 0"};
    case Family::F5:
      return {"F5", SymmetryClass::III, Profile::Cosh, Profile::Sin, EigenRule::TanhNu, true,
              "cot(nu h) - tanh(nu) = 0"};
    case Family::F6:
      return {"F6", SymmetryClass::III, Profile::Cos, Profile::Sinh, EigenRule::CothNuH, false,
              "tan(nu) + coth(nu h) = 0"};
    case Family::F7:
      return {"F7", SymmetryClass::IV, Profile::Sinh, Profile::Cos, EigenRule::CothNu, true,
              "tan(nu h) + coth(nu) = 0"};
    case Family::F8:
      return {"F8", SymmetryClass::IV, Profile::Sin, Profile::Cosh, EigenRule::TanhNuH, false,
              "cot(nu) - tanh(nu h) = 0"};
  }
  return {"?", SymmetryClass::I, Profile::One, Profile::One, EigenRule::None, false, ""};
}

inline std::string family_name(Family f) { return std::string(family_traits(f).name); }

inline Family family_from_name(std::string_view name) {
  for (Family f : {Family::Const, Family::XY, Family::F1, Family::F2, Family::F3, Family::F4, Family::F5,
                   Family::F6, Family::F7, Family::F8}) {
    if (family_traits(f).name == name) return f;
  }
  throw DomainError("unknown eigenfunction family '" + std::string(name) + "'");
}

inline bool is_separable(Family f) noexcept { return f != Family::Const && f != Family::XY; }

namespace detail {

inline bool is_hyperbolic(Profile p) noexcept { return p == Profile::Cosh || p == Profile::Sinh; }

/// Half-lengths of the hyperbolic and trigonometric coordinate of a separable family.
struct FamilyScales {
  double hyper;  // a: 1 when the hyperbolic factor is in x, h otherwise
  double trig;   // b: h when the trigonometric factor is in y, 1 otherwise
  Profile hyper_profile;
  Profile trig_profile;
};

inline FamilyScales scales(Family f, double h) {
  const auto t = family_traits(f);
  if (t.hyperbolic_in_x) return {1.0, h, t.x_profile, t.y_profile};
  return {h, 1.0, t.y_profile, t.x_profile};
}

// sinh(x) - x and x - sin(x) without cancellation for small x.
inline double sinh_minus_x(double x) {
  if (std::abs(x) >= 0.5) return std::sinh(x) - x;
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

inline double x_minus_sin(double x) {
  if (std::abs(x) >= 0.5) return x - std::sin(x);
  const double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = term;
  for (int k = 2; k < 12; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term;
  }
  return sum;
}

/// cosh(nu t) or sinh(nu t) multiplied by exp(-nu a), for |t| <= a.
inline double hyper_scaled(Profile p, double nu, double t, double a) {
  if (nu * a <= 30.0) {
    const double s = std::exp(-nu * a);
    return (p == Profile::Cosh ? std::cosh(nu * t) : std::sinh(nu * t)) * s;
  }
  const double ep = std::exp(nu * (t - a));
  const double em = std::exp(-nu * (t + a));
  return p == Profile::Cosh ? 0.5 * (ep + em) : 0.5 * (ep - em);
}

inline Profile hyper_derivative_profile(Profile p) { return p == Profile::Cosh ? Profile::Sinh : Profile::Cosh; }

inline double trig(Profile p, double arg) { return p == Profile::Cos ? std::cos(arg) : std::sin(arg); }

inline double trig_derivative(Profile p, double arg) { return p == Profile::Cos ? -std::sin(arg) : std::cos(arg); }

/// exp(-2 nu a) * integral over [-a,a] of cosh^2 or sinh^2 (nu t).
inline double hyper_square_integral_scaled(Profile p, double nu, double a) {
  const double decay = std::exp(-2.0 * nu * a);
  const double tail = -std::expm1(-4.0 * nu * a) / (4.0 * nu);
  if (p == Profile::Cosh) return a * decay + tail;
  if (2.0 * nu * a < 0.5) return decay * sinh_minus_x(2.0 * nu * a) / (2.0 * nu);
  return tail - a * decay;
}

/// Integral over [-b,b] of cos^2 or sin^2 (nu t).
inline double trig_square_integral(Profile p, double nu, double b) {
  if (p == Profile::Cos) return b + std::sin(2.0 * nu * b) / (2.0 * nu);
  return x_minus_sin(2.0 * nu * b) / (2.0 * nu);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Characteristic equations and eigenvalue rules
// ---------------------------------------------------------------------------

/// Characteristic function of a separable family, multiplied through by the
/// periodic factor's denominator so that it is smooth and bounded in nu. Its
/// positive zeros are exactly the family's separation frequencies.
inline double characteristic_residual(Family f, double nu, const Rectangle& rect) {
  if (!is_separable(f)) throw DomainError("characteristic equation requested for non-separable family");
  const auto sc = detail::scales(f, rect.h());
  const double tau = std::tanh(nu * sc.hyper);
  const double theta = nu * sc.trig;
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  if (sc.hyper_profile == Profile::Cosh) {
    return sc.trig_profile == Profile::Cos ? s + tau * c : c - tau * s;
  }
  return sc.trig_profile == Profile::Sin ? tau * c - s : c + tau * s;
}

/// Magnitude of d/dnu of the characteristic residual (central difference).
inline double characteristic_slope(Family f, double nu, const Rectangle& rect) {
  const double step = 1e-6 * std::max(1.0, nu);
  const double lo = std::max(nu - step, 0.5 * nu);
  return std::abs(characteristic_residual(f, nu + step, rect) - characteristic_residual(f, lo, rect)) /
         (nu + step - lo);
}

inline double eigenvalue_of(Family f, double nu, const Rectangle& rect) {
  if (f == Family::Const) return 0.0;
  if (f == Family::XY) return 1.0;
  if (!(nu > 0.0)) throw DomainError("eigenvalue rule needs nu > 0");
  const double h = rect.h();
  switch (family_traits(f).rule) {
    case EigenRule::TanhNu: return nu * std::tanh(nu);
    case EigenRule::TanhNuH: return nu * std::tanh(nu * h);
    case EigenRule::CothNu: return nu / std::tanh(nu);
    case EigenRule::CothNuH: return nu / std::tanh(nu * h);
    case EigenRule::None: break;
  }
  return 0.0;
}

/// Bracket, in nu, of the root on branch k of the periodic factor, or nothing
/// when that branch carries no root.
inline std::optional<std::pair<double, double>> root_bracket(Family f, const Rectangle& rect, int k) {
  using std::numbers::pi;
  const auto sc = detail::scales(f, rect.h());
  const double b = sc.trig;
  double lo = 0.0;
  double hi = 0.0;
  if (sc.hyper_profile == Profile::Cosh && sc.trig_profile == Profile::Cos) {
    if (k < 1) return std::nullopt;
    lo = (k - 0.25) * pi;
    hi = k * pi;
  } else if (sc.hyper_profile == Profile::Sinh && sc.trig_profile == Profile::Sin) {
    if (k < 0) return std::nullopt;
    lo = k * pi;
    hi = (k + 0.25) * pi;
    if (k == 0) {
      // Near nu = 0 the residual behaves like nu (a - b) - nu^3 c3, so the
      // first branch has a root only when the hyperbolic side is the longer one.
      const double a = sc.hyper;
      if (!(a > b)) return std::nullopt;
      const double c3 = a * a * a / 3.0 + a * b * b / 2.0 - b * b * b / 6.0;
      const double estimate = std::sqrt((a - b) / c3);
      double left = 0.5 * std::min(estimate, 0.25 * pi / b);
      for (int i = 0; i < 80 && !(characteristic_residual(f, left, rect) > 0.0); ++i) left *= 0.5;
      return std::make_pair(left, hi / b);
    }
  } else if (sc.hyper_profile == Profile::Cosh && sc.trig_profile == Profile::Sin) {
    if (k < 0) return std::nullopt;
    lo = (k + 0.25) * pi;
    hi = (k + 0.5) * pi;
  } else {
    if (k < 1) return std::nullopt;
    lo = (k - 0.5) * pi;
    hi = (k - 0.25) * pi;
  }
  return std::make_pair(lo / b, hi / b);
}

/// The `count` smallest positive roots of a family's characteristic equation.
///
/// Each root is isolated on one branch of the periodic factor, where the
/// residual changes sign, and refined by bisection until the bracket is no
/// wider than tol (relative to nu once nu < 1) or floating-point resolution
/// is exhausted.
inline std::vector<double> find_roots(Family f, const Rectangle& rect, std::size_t count, double tol = 1e-13) {
  if (!is_separable(f)) throw DomainError("find_roots requires one of the families F1..F8");
  if (!(tol >= 1e-14)) throw DomainError("root tolerance must be at least 1e-14");
  std::vector<double> roots;
  roots.reserve(count);
  constexpr int kMaxIterations = 400;
  for (int k = 0; roots.size() < count; ++k) {
    const auto bracket = root_bracket(f, rect, k);
    if (!bracket) continue;
    double lo = bracket->first;
    double hi = bracket->second;
    double flo = characteristic_residual(f, lo, rect);
    const double fhi = characteristic_residual(f, hi, rect);
    auto describe = [&] {
      std::ostringstream os;
      os.precision(17);
      os << "family " << family_name(f) << ", branch " << k << ", bracket [" << lo << ", " << hi << "], h = "
         << rect.h();
      return os.str();
    };
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (fhi == 0.0) {
      roots.push_back(hi);
      continue;
    }
    if ((flo > 0.0) == (fhi > 0.0)) {
      // For large nu the root approaches a bracket endpoint closer than the
      // residual can resolve; accept that endpoint when it is zero to rounding.
      const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + hi * detail::scales(f, rect.h()).trig);
      if (std::min(std::abs(flo), std::abs(fhi)) <= noise) {
        roots.push_back(std::abs(flo) < std::abs(fhi) ? lo : hi);
        continue;
      }
      throw RootFindingError("no sign change on " + describe());
    }
    bool converged = false;
    for (int it = 0; it < kMaxIterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double width = hi - lo;
      if (width <= tol * std::min(1.0, mid) || mid <= lo || mid >= hi) {
        converged = true;
        break;
      }
      const double fm = characteristic_residual(f, mid, rect);
      if (fm == 0.0) {
        lo = hi = mid;
        converged = true;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    if (!converged) throw RootFindingError("bisection did not converge on " + describe());
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

// ---------------------------------------------------------------------------
// Modes
// ---------------------------------------------------------------------------

/// One boundary-normalized eigenpair.
///
/// `norm_scaled` is the normalization multiplier with the hyperbolic growth
/// exp(nu * a) factored out; evaluation multiplies it by exp(-nu * a)-scaled
/// hyperbolic factors, so nothing overflows for large nu. `norm_const()`
/// recovers the plain multiplier (it underflows to zero past nu ~ 700).
struct SteklovMode {
  Family family = Family::Const;
  double nu = 0.0;
  double delta = 0.0;
  double norm_scaled = 1.0;
  std::size_t index = 0;
  double h = 1.0;

  double norm_const() const {
    if (!is_separable(family)) return norm_scaled;
    return norm_scaled * std::exp(-nu * detail::scales(family, h).hyper);
  }
};

namespace detail {

inline double xy_boundary_square_integral(double h) { return 4.0 * h * h * h / 3.0 + 4.0 * h * h / 3.0; }

/// exp(-2 nu a) * boundary integral of the squared raw separable product.
inline double separable_square_integral_scaled(Family f, double nu, double h) {
  const auto sc = scales(f, h);
  const double hyp_end = hyper_scaled(sc.hyper_profile, nu, sc.hyper, sc.hyper);
  const double trig_end = trig(sc.trig_profile, nu * sc.trig);
  const double hyp_int = hyper_square_integral_scaled(sc.hyper_profile, nu, sc.hyper);
  const double trig_int = trig_square_integral(sc.trig_profile, nu, sc.trig);
  // Two sides where the hyperbolic coordinate sits at +-a, two where the
  // trigonometric one sits at +-b; squares are even so both signs agree.
  return 2.0 * hyp_end * hyp_end * trig_int + 2.0 * trig_end * trig_end * hyp_int;
}

}  // namespace detail

/// Plain multiplier making the trace satisfy integral of s^2 = |dOmega|.
inline double boundary_norm_constant(Family f, double nu, const Rectangle& rect) {
  const double perimeter = rect.perimeter();
  if (f == Family::Const) return 1.0;
  if (f == Family::XY) return std::sqrt(perimeter / detail::xy_boundary_square_integral(rect.h()));
  const double integral = detail::separable_square_integral_scaled(f, nu, rect.h());
  if (!(integral > 0.0)) throw Error("internal: non-positive boundary integral of a squared mode");
  return std::sqrt(perimeter / integral) * std::exp(-nu * detail::scales(f, rect.h()).hyper);
}

inline SteklovMode make_mode(Family f, double nu, const Rectangle& rect) {
  SteklovMode m;
  m.family = f;
  m.h = rect.h();
  if (f == Family::Const) return m;
  if (f == Family::XY) {
    if (rect.h() != 1.0) throw DomainError("the xy mode is a Steklov eigenfunction only for h = 1");
    m.delta = 1.0;
    m.norm_scaled = std::sqrt(rect.perimeter() / detail::xy_boundary_square_integral(rect.h()));
    return m;
  }
  if (!(nu > 0.0)) throw DomainError("separable mode requires nu > 0");
  m.nu = nu;
  m.delta = eigenvalue_of(f, nu, rect);
  const double integral = detail::separable_square_integral_scaled(f, nu, rect.h());
  if (!(integral > 0.0)) throw Error("internal: non-positive boundary integral of a squared mode");
  m.norm_scaled = std::sqrt(rect.perimeter() / integral);
  return m;
}

namespace detail {

inline void require_closure(const SteklovMode& m, double x, double y) {
  if (!(std::abs(x) <= 1.0 + 1e-12 && std::abs(y) <= m.h + 1e-12)) {
    throw DomainError("point (" + format_number(x, 6) + ", " + format_number(y, 6) +
                      ") lies outside the closed rectangle");
  }
}

/// Value and gradient of a separable factorization (hyperbolic scaled).
struct Separable {
  double value;
  double dx;
  double dy;
};

inline Separable separable_eval(const SteklovMode& m, double x, double y) {
  const auto sc = scales(m.family, m.h);
  const double nu = m.nu;
  const bool hyp_x = family_traits(m.family).hyperbolic_in_x;
  const double hyp_t = hyp_x ? x : y;
  const double trig_t = hyp_x ? y : x;
  const double H = hyper_scaled(sc.hyper_profile, nu, hyp_t, sc.hyper);
  const double dH = nu * hyper_scaled(hyper_derivative_profile(sc.hyper_profile), nu, hyp_t, sc.hyper);
  const double T = trig(sc.trig_profile, nu * trig_t);
  const double dT = nu * trig_derivative(sc.trig_profile, nu * trig_t);
  const double n = m.norm_scaled;
  if (hyp_x) return {n * H * T, n * dH * T, n * H * dT};
  return {n * T * H, n * dT * H, n * T * dH};
}

}  // namespace detail

inline double mode_value(const SteklovMode& m, double x, double y) {
  detail::require_closure(m, x, y);
  switch (m.family) {
    case Family::Const: return 1.0;
    case Family::XY: return m.norm_scaled * x * y;
    default: return detail::separable_eval(m, x, y).value;
  }
}

inline Point mode_gradient(const SteklovMode& m, double x, double y) {
  detail::require_closure(m, x, y);
  switch (m.family) {
    case Family::Const: return {0.0, 0.0};
    case Family::XY: return {m.norm_scaled * y, m.norm_scaled * x};
    default: {
      const auto s = detail::separable_eval(m, x, y);
      return {s.dx, s.dy};
    }
  }
}

/// Side that owns a non-corner boundary point.
inline Side boundary_side_of(double x, double y, double h, double slack = 1e-12) {
  const bool on_x = std::abs(std::abs(x) - 1.0) <= slack && std::abs(y) <= h + slack;
  const bool on_y = std::abs(std::abs(y) - h) <= slack && std::abs(x) <= 1.0 + slack;
  if (on_x && on_y) throw DomainError("outward normal is undefined at a corner");
  if (on_x) return x > 0 ? Side::G1 : Side::G3;
  if (on_y) return y > 0 ? Side::G2 : Side::G4;
  throw DomainError("point (" + format_number(x, 6) + ", " + format_number(y, 6) + ") is not on the boundary");
}

/// Outward normal derivative at a non-corner boundary point.
inline double mode_normal_derivative(const SteklovMode& m, double x, double y) {
  const Side side = boundary_side_of(x, y, m.h);
  const Point g = mode_gradient(m, x, y);
  const Point n = outward_normal(side);
  return g.x * n.x + g.y * n.y;
}

/// An eigenpair transported to the dilated rectangle L * R_h.
struct ScaledMode {
  SteklovMode mode;
  double L;

  double delta() const { return mode.delta / L; }
  double value(double x, double y) const { return mode_value(mode, x / L, y / L); }
  double normal_derivative(double x, double y) const { return mode_normal_derivative(mode, x / L, y / L) / L; }
};

inline ScaledMode scale_mode(const SteklovMode& m, double L) {
  if (!(L > 0.0)) throw DomainError("dilation factor must be positive");
  return {m, L};
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

enum class SelectionPolicy {
  PerFamily,              ///< constant + M modes from each of the eight families
  GlobalSorted,           ///< constant + the 8M smallest eigenvalues over all families
  GlobalSortedInclusive,  ///< 8M modes in eigenvalue order, the constant counted among them
};

inline std::string policy_name(SelectionPolicy p) {
  switch (p) {
    case SelectionPolicy::PerFamily: return "per-family";
    case SelectionPolicy::GlobalSorted: return "global-sorted";
    case SelectionPolicy::GlobalSortedInclusive: return "global-inclusive";
  }
  return "?";
}

inline SelectionPolicy policy_from_name(std::string_view s) {
  if (s == "per-family") return SelectionPolicy::PerFamily;
  if (s == "global-sorted") return SelectionPolicy::GlobalSorted;
  if (s == "global-inclusive") return SelectionPolicy::GlobalSortedInclusive;
  throw DomainError("unknown selection policy '" + std::string(s) + "'");
}

/// Eigenvalues closer than this are treated as degenerate and ordered by family tag.
inline constexpr double kDegeneracyTolerance = 1e-12;

/// Orders modes by eigenvalue; near-degenerate runs are ordered by family tag, then nu.
inline void sort_modes(std::vector<SteklovMode>& modes) {
  std::stable_sort(modes.begin(), modes.end(),
                   [](const SteklovMode& a, const SteklovMode& b) { return a.delta < b.delta; });
  std::size_t begin = 0;
  while (begin < modes.size()) {
    std::size_t end = begin + 1;
    while (end < modes.size() && modes[end].delta - modes[end - 1].delta < kDegeneracyTolerance) ++end;
    std::stable_sort(modes.begin() + static_cast<std::ptrdiff_t>(begin),
                     modes.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const SteklovMode& a, const SteklovMode& b) {
                       if (a.family != b.family) return a.family < b.family;
                       return a.nu < b.nu;
                     });
    begin = end;
  }
  for (std::size_t i = 0; i < modes.size(); ++i) modes[i].index = i;
}

/// Ordered, immutable collection of modes on one rectangle. modes()[0] is the constant.
class Spectrum {
public:
  Spectrum(Rectangle rect, std::vector<SteklovMode> modes, SelectionPolicy policy)
      : rect_(rect), modes_(std::move(modes)), policy_(policy) {
    if (modes_.empty() || modes_.front().family != Family::Const) {
      throw DomainError("a spectrum must start with the constant mode");
    }
  }

  const Rectangle& rectangle() const noexcept { return rect_; }
  const std::vector<SteklovMode>& modes() const noexcept { return modes_; }
  SelectionPolicy policy() const noexcept { return policy_; }
  std::size_t size() const noexcept { return modes_.size(); }
  const SteklovMode& operator[](std::size_t i) const { return modes_.at(i); }

  /// The first `n` modes (constant included) as a new spectrum.
  Spectrum prefix(std::size_t n) const {
    if (n == 0) throw DomainError("a spectrum prefix must keep the constant mode");
    n = std::min(n, modes_.size());
    return Spectrum(rect_, std::vector<SteklovMode>(modes_.begin(), modes_.begin() + static_cast<std::ptrdiff_t>(n)),
                    policy_);
  }

private:
  Rectangle rect_;
  std::vector<SteklovMode> modes_;
  SelectionPolicy policy_;
};

/// Constant mode plus the `count` smallest-eigenvalue non-constant modes.
inline Spectrum build_sorted_spectrum(const Rectangle& rect, std::size_t count, double tol = 1e-13,
                                      SelectionPolicy tag = SelectionPolicy::GlobalSorted) {
  std::vector<SteklovMode> candidates;
  if (rect.h() == 1.0 && count > 0) candidates.push_back(make_mode(Family::XY, 0.0, rect));
  // No single family can hold more than `count` of the smallest modes.
  for (Family f : kSeparableFamilies) {
    for (double nu : find_roots(f, rect, count, tol)) candidates.push_back(make_mode(f, nu, rect));
  }
  sort_modes(candidates);
  if (candidates.size() > count) candidates.resize(count);
  std::vector<SteklovMode> modes;
  modes.reserve(count + 1);
  modes.push_back(make_mode(Family::Const, 0.0, rect));
  modes.insert(modes.end(), candidates.begin(), candidates.end());
  sort_modes(modes);
  return Spectrum(rect, std::move(modes), tag);
}

/// Builds a spectrum for expansion order M under the given selection policy.
///
/// Per-family: the constant plus the first M roots of every family; at h = 1
/// the xy mode occupies the first slot of F3 (its continuous limit as h -> 1).
/// Global-sorted: the constant plus the 8M smallest eigenvalues.
/// Global-inclusive: 8M modes in eigenvalue order counting the constant.
inline Spectrum build_spectrum(const Rectangle& rect, std::size_t M,
                               SelectionPolicy policy = SelectionPolicy::PerFamily, double tol = 1e-13) {
  if (M < 1) throw DomainError("expansion order M must be at least 1");
  switch (policy) {
    case SelectionPolicy::GlobalSorted: return build_sorted_spectrum(rect, 8 * M, tol, policy);
    case SelectionPolicy::GlobalSortedInclusive: return build_sorted_spectrum(rect, 8 * M - 1, tol, policy);
    case SelectionPolicy::PerFamily: break;
  }
  std::vector<SteklovMode> modes;
  modes.push_back(make_mode(Family::Const, 0.0, rect));
  for (Family f : kSeparableFamilies) {
    std::size_t want = M;
    if (f == Family::F3 && rect.h() == 1.0) {
      modes.push_back(make_mode(Family::XY, 0.0, rect));
      --want;
    }
    for (double nu : find_roots(f, rect, want, tol)) modes.push_back(make_mode(f, nu, rect));
  }
  sort_modes(modes);
  return Spectrum(rect, std::move(modes), policy);
}

}  // namespace steklov

#endif  // STEKLOV_SPECTRUM_HPP
