#ifndef STEKLOV_REFERENCE_TABLES_HPP
#define STEKLOV_REFERENCE_TABLES_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "steklov/error.hpp"

// Published reference values used by the table reproduction, stored exactly
// as printed (six decimals or six significant digits).
namespace steklov::reference {

inline constexpr std::array<std::size_t, 3> kOrders{2, 3, 5};

/// Pointwise values at P1..P5 for one Dirichlet datum on the unit-height square.
struct PointwiseTable {
  std::string_view datum;
  std::array<std::array<double, 5>, 3> approx;  ///< rows M = 2, 3, 5
  std::array<double, 5> exact;
  std::array<std::array<double, 5>, 3> abs_error;
};

inline constexpr PointwiseTable kPointwiseF1{
    "f1",
    {{{-2.626748, 0.694643, -0.844238, 0.230283, -0.249859},
      {-2.625942, 0.607979, -0.842944, 0.225907, -0.249983},
      {-2.624712, 0.607588, -0.843208, 0.226837, -0.250000}}},
    {-2.624400, 0.607600, -0.843200, 0.226800, -0.250000},
    {{{0.002348, 0.002957, 0.001038, 0.003483, 0.000141},
      {0.001542, 0.000379, 0.000256, 0.000893, 0.000017},
      {0.000312, 0.000012, 0.000008, 0.000037, 0.0}}}};

inline constexpr PointwiseTable kPointwiseF2{
    "f2",
    {{{0.544285, 0.899505, 0.666815, 0.455438, 0.600096},
      {0.544745, 0.902138, 0.667202, 0.460368, 0.599985},
      {0.544675, 0.901609, 0.666636, 0.459219, 0.600000}}},
    {0.544554, 0.901639, 0.666667, 0.459459, 0.600000},
    {{{0.000269, 0.002135, 0.000148, 0.004021, 0.000096},
      {0.000191, 0.000498, 0.000535, 0.000909, 0.000015},
      {0.000121, 0.000030, 0.000031, 0.000240, 0.0}}}};

inline constexpr PointwiseTable kPointwiseF3{
    "f3",
    {{{1.088867, 1.277069, 1.179619, 1.230746, 1.262756},
      {1.088349, 1.274927, 1.180394, 1.229961, 1.262881},
      {1.088384, 1.275412, 1.180439, 1.229874, 1.262864}}},
    {1.088511, 1.275503, 1.180427, 1.229794, 1.262864},
    {{{0.000356, 0.001566, 0.000808, 0.000952, 0.000108},
      {0.000162, 0.000576, 0.000033, 0.000167, 0.000017},
      {0.000127, 0.000091, 0.000012, 0.000080, 0.0}}}};

/// The printed f1 entry at M = 2, P2 disagrees with its own exact and error
/// rows; exact - D = 0.604643 is the consistent value.
inline constexpr double kPointwiseF1M2P2Consistent = 0.604643;

inline const PointwiseTable& pointwise(std::string_view datum) {
  if (datum == "f1") return kPointwiseF1;
  if (datum == "f2") return kPointwiseF2;
  if (datum == "f3") return kPointwiseF3;
  throw DomainError("no pointwise reference table for '" + std::string(datum) + "'");
}

enum class Norm { Sup, L2 };

/// rerr values for f1, f2, f3 at one aspect ratio; rows M = 2, 3, 5.
struct RerrTable {
  int number;
  double h;
  Norm norm;
  std::array<std::array<double, 3>, 3> values;
};

inline constexpr std::array<RerrTable, 6> kRerrTables{{
    {4, 1.0, Norm::Sup, {{{6.59553e-3, 1.82382e-2, 6.48245e-3}, {2.28748e-3, 1.21554e-2, 4.3219e-3},
                          {5.55757e-4, 7.35222e-3, 2.59338e-3}}}},
    {5, 0.8, Norm::Sup, {{{4.82556e-2, 2.46749e-2, 6.38229e-3}, {4.20662e-2, 1.78505e-2, 4.18945e-3},
                          {2.28023e-2, 1.0105e-2, 2.47618e-3}}}},
    {6, 0.5, Norm::Sup, {{{2.09505e-1, 3.40908e-2, 5.58445e-3}, {1.12233e-1, 2.00031e-2, 3.84456e-3},
                          {7.66842e-2, 1.29479e-2, 2.24773e-3}}}},
    {7, 1.0, Norm::L2, {{{5.22051e-3, 1.30532e-2, 2.9694e-3}, {1.57535e-3, 7.2083e-3, 1.62779e-3},
                         {3.1167e-4, 3.43748e-3, 7.59478e-4}}}},
    {9, 0.8, Norm::L2, {{{5.13497e-2, 1.69181e-2, 2.77799e-3}, {4.15782e-2, 1.0364e-2, 1.52184e-3},
                         {1.78172e-2, 4.58322e-3, 6.98156e-4}}}},
    {10, 0.5, Norm::L2, {{{2.36676e-1, 2.14194e-2, 2.31158e-3}, {1.00467e-1, 1.04072e-2, 1.3035e-3},
                          {5.79567e-2, 5.45324e-3, 5.9589e-4}}}},
}};

/// Corner reduction at h = 1; columns rerr_inf(f1), rerr_inf(f1+4), rerr_2(f1), rerr_2(f1+4).
inline constexpr std::array<std::array<double, 4>, 3> kCornerReduction{{
    {6.59553e-3, 5.27642e-3, 5.22051e-3, 2.54632e-3},
    {2.28748e-3, 1.82998e-3, 1.57535e-3, 7.6838e-4},
    {5.55757e-4, 4.46061e-4, 3.1167e-4, 1.52018e-4},
}};

/// Exact-solution experiments at h = 1; each row is (rerr_inf, rerr_2) as printed.
struct ExperimentTable {
  int number;
  std::string_view datum;
  std::array<std::array<double, 2>, 3> values;
  bool columns_swapped;  ///< printed under the wrong column headings
};

inline constexpr std::array<ExperimentTable, 3> kExperiments{{
    {12, "bd1", {{{3.44988e-2, 2.17341e-2}, {2.34853e-2, 1.23794e-2}, {1.43896e-2, 5.98271e-3}}}, false},
    {13, "bd2", {{{9.07987e-2, 1.32590e-1}, {5.34729e-2, 9.20000e-2}, {2.64002e-2, 5.70258e-2}}}, true},
    {14, "bd3", {{{1.51186e-2, 1.4854e-2}, {9.64123e-3, 7.84911e-3}, {5.60122e-3, 3.53263e-3}}}, false},
}};

}  // namespace steklov::reference

#endif  // STEKLOV_REFERENCE_TABLES_HPP
