#ifndef STEKLOV_GEOMETRY_HPP
#define STEKLOV_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "steklov/error.hpp"

namespace steklov {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// The rectangle (-1,1) x (-h,h) with aspect ratio 0 < h <= 1.
class Rectangle {
public:
  explicit Rectangle(double h) : h_(h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw DomainError("rectangle aspect ratio must be positive, got " + format_number(h, 6));
    }
    if (h > 1.0) {
      throw DomainError("aspect ratio h > 1 is not accepted; transpose the axes so that h <= 1 (got " +
                        format_number(h, 6) + ")");
    }
  }

  double h() const noexcept { return h_; }
  double perimeter() const noexcept { return 4.0 * (1.0 + h_); }

  /// Counterclockwise from (1,h).
  std::array<Point, 4> corners() const noexcept {
    return {Point{1.0, h_}, Point{-1.0, h_}, Point{-1.0, -h_}, Point{1.0, -h_}};
  }

  bool contains(double x, double y, double slack = 1e-12) const noexcept {
    return std::abs(x) <= 1.0 + slack && std::abs(y) <= h_ + slack;
  }

  bool on_boundary(double x, double y, double slack = 1e-12) const noexcept {
    return contains(x, y, slack) &&
           (std::abs(std::abs(x) - 1.0) <= slack || std::abs(std::abs(y) - h_) <= slack);
  }

  bool is_corner(double x, double y, double slack = 1e-12) const noexcept {
    return std::abs(std::abs(x) - 1.0) <= slack && std::abs(std::abs(y) - h_) <= slack;
  }

  void require_contains(double x, double y) const {
    if (!contains(x, y)) {
      throw DomainError("point (" + format_number(x, 6) + ", " + format_number(y, 6) +
                        ") lies outside the closed rectangle with h = " + format_number(h_, 6));
    }
  }

  bool operator==(const Rectangle& other) const noexcept { return h_ == other.h_; }

private:
  double h_;
};

/// Sides of the boundary. G1: x = 1, G2: y = h, G3: x = -1, G4: y = -h.
enum class Side { G1 = 0, G2 = 1, G3 = 2, G4 = 3 };

inline constexpr std::array<Side, 4> kAllSides{Side::G1, Side::G2, Side::G3, Side::G4};

inline std::string side_name(Side s) {
  switch (s) {
    case Side::G1: return "G1";
    case Side::G2: return "G2";
    case Side::G3: return "G3";
    case Side::G4: return "G4";
  }
  return "?";
}

/// Parameter interval of a side: [-h,h] for G1/G3, [-1,1] for G2/G4.
inline std::pair<double, double> side_interval(const Rectangle& rect, Side s) noexcept {
  const double a = (s == Side::G1 || s == Side::G3) ? rect.h() : 1.0;
  return {-a, a};
}

inline double side_length(const Rectangle& rect, Side s) noexcept {
  auto [a, b] = side_interval(rect, s);
  return b - a;
}

// Counterclockwise arc-length parametrizations: G1 upward, G2 leftward,
// G3 downward, G4 rightward. All have unit speed.
inline Point side_point(const Rectangle& rect, Side s, double t) noexcept {
  const double h = rect.h();
  switch (s) {
    case Side::G1: return {1.0, t};
    case Side::G2: return {-t, h};
    case Side::G3: return {-1.0, -t};
    case Side::G4: return {t, -h};
  }
  return {};
}

inline double side_parameter(Side s, double x, double y) noexcept {
  switch (s) {
    case Side::G1: return y;
    case Side::G2: return -x;
    case Side::G3: return -y;
    case Side::G4: return x;
  }
  return 0.0;
}

inline Point outward_normal(Side s) noexcept {
  switch (s) {
    case Side::G1: return {1.0, 0.0};
    case Side::G2: return {0.0, 1.0};
    case Side::G3: return {-1.0, 0.0};
    case Side::G4: return {0.0, -1.0};
  }
  return {};
}

inline void require_parameter(const Rectangle& rect, Side s, double t) {
  auto [a, b] = side_interval(rect, s);
  if (!(t >= a - 1e-12 && t <= b + 1e-12)) {
    throw DomainError("parameter t = " + format_number(t, 6) + " outside [" + format_number(a, 6) + ", " +
                      format_number(b, 6) + "] of side " + side_name(s));
  }
}

}  // namespace steklov

#endif  // STEKLOV_GEOMETRY_HPP
