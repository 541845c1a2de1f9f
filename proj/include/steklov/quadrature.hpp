#ifndef STEKLOV_QUADRATURE_HPP
#define STEKLOV_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "steklov/error.hpp"

namespace steklov {

struct QuadratureOptions {
  double abstol = 1e-10;
  double reltol = 1e-6;
  std::size_t max_panels = 2000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.0};

inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452854, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};

// Gauss weights for the Kronrod nodes with odd index (the embedded 10-point rule).
inline constexpr std::array<double, 5> kWg{0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                           0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  double resabs;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double abs_k = std::abs(kronrod);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    kronrod += kWgk[j] * (f1[j] + f2[j]);
    abs_k += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * kronrod;
  double asc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  const double result = kronrod * half;
  const double resabs = abs_k * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, result, err, resabs};
}

}  // namespace detail

/// Globally adaptive 21-point Gauss-Kronrod integration of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate satisfies error <= max(abstol, reltol * |value|), or until it
/// sits at the rounding floor 100 eps * integral of |f|, below which no
/// refinement can help. Throws
/// QuadratureError, carrying the partial sum and the worst panel, when the
/// panel budget runs out first or the integrand returns a non-finite value.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  if (!(opt.abstol >= 0.0) || !(opt.reltol >= 0.0) || (opt.abstol == 0.0 && opt.reltol == 0.0)) {
    throw DomainError("quadrature tolerances must be non-negative and not both zero");
  }
  if (a == b) return {};
  auto require_finite = [&](const detail::Panel& p, double partial) {
    if (std::isfinite(p.value) && std::isfinite(p.error)) return;
    std::ostringstream os;
    os << "integrand is not finite on [" << p.a << ", " << p.b << "] while integrating over [" << a << ", " << b << "]";
    throw QuadratureError(os.str(), partial, p.a, p.b);
  };
  std::priority_queue<detail::Panel> heap;
  auto first = detail::gauss_kronrod_21(f, a, b);
  require_finite(first, 0.0);
  double value = first.value;
  double error = first.error;
  double resabs = first.resabs;
  heap.push(first);
  std::size_t panels = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto done = [&] { return error <= std::max({opt.abstol, opt.reltol * std::abs(value), 100.0 * eps * resabs}); };
  while (!done()) {
    const detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (panels + 1 > opt.max_panels || !(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      std::ostringstream os;
      os << "adaptive quadrature on [" << a << ", " << b << "] stopped after " << panels
         << " panels with error estimate " << error << "; worst panel [" << worst.a << ", " << worst.b << "]";
      throw QuadratureError(os.str(), value, worst.a, worst.b);
    }
    heap.pop();
    const auto left = detail::gauss_kronrod_21(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_21(f, mid, worst.b);
    require_finite(left, value);
    require_finite(right, value);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    resabs += left.resabs + right.resabs - worst.resabs;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, panels};
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t n) : nodes(n), weights(n) {
    if (n == 0) throw DomainError("Gauss-Legendre rule needs at least one node");
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = pk;
        }
        if (n == 1) p0 = 1.0;
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = n == 1 ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
  }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(c + r * nodes[i]);
    return sum * r;
  }
};

}  // namespace steklov

#endif  // STEKLOV_QUADRATURE_HPP
