#ifndef STEKLOV_ERROR_HPP
#define STEKLOV_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace steklov {

/// printf-style %.{digits}g of one value.
inline std::string format_number(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the admissible set (point outside the rectangle, bad h, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A characteristic-equation root could not be isolated or refined.
class RootFindingError : public Error {
public:
  using Error::Error;
};

class QuadratureError : public Error {
public:
  QuadratureError(const std::string& what, double partial, double worst_a, double worst_b)
      : Error(what), partial_value(partial), worst_panel_a(worst_a), worst_panel_b(worst_b) {}

  double partial_value;
  double worst_panel_a;
  double worst_panel_b;
};

/// Lexing or parsing failure in a boundary-data expression.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}

  std::size_t position;
};

/// Neumann data violating the zero-mean compatibility condition.
class IncompatibleDataError : public Error {
public:
  IncompatibleDataError(const std::string& what, double mean) : Error(what), boundary_mean(mean) {}

  double boundary_mean;
};

/// Corner values of piecewise data disagree, so the bilinear reduction is undefined.
class CornerConflictError : public Error {
public:
  using Error::Error;
};

}  // namespace steklov

#endif  // STEKLOV_ERROR_HPP
