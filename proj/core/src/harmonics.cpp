#include "plasmod/harmonics.hpp"

#include <cmath>
#include <numbers>

namespace plasmod {
namespace {

const double kSqrt2Pi3 = std::sqrt(2.0 * std::numbers::pi / 3.0);
const double kSqrt4Pi3 = std::sqrt(4.0 * std::numbers::pi / 3.0);
constexpr Complex kI{0.0, 1.0};

}  // namespace

Complex spherical_harmonic_l1(int m, double theta, double phi) {
  const double pi = std::numbers::pi;
  switch (m) {
    case 0:
      return std::sqrt(3.0 / (4.0 * pi)) * std::cos(theta);
    case 1:
      return -std::sqrt(3.0 / (8.0 * pi)) * std::sin(theta) * std::exp(kI * phi);
    case -1:
      return std::sqrt(3.0 / (8.0 * pi)) * std::sin(theta) * std::exp(-kI * phi);
    default:
      throw Error(ErrorCode::kInvalidArgument, "degree-one harmonics need m in {-1, 0, 1}");
  }
}

// x = sqrt(2pi/3) r (Y_1^-1 - Y_1^1), y = i sqrt(2pi/3) r (Y_1^-1 + Y_1^1),
// z = sqrt(4pi/3) r Y_1^0.
DipoleCoefficients dipole_coefficients(const Vec3& e) {
  return {kSqrt2Pi3 * (e[0] + kI * e[1]), kSqrt4Pi3 * e[2], kSqrt2Pi3 * (-e[0] + kI * e[1])};
}

Vec3 field_from_dipole_coefficients(const DipoleCoefficients& a) {
  const Complex ex = (a[0] - a[2]) / (2.0 * kSqrt2Pi3);
  const Complex ey = (a[0] + a[2]) / (2.0 * kI * kSqrt2Pi3);
  const Complex ez = a[1] / kSqrt4Pi3;
  return {ex, ey, ez};
}

double coefficient_norm_squared(const DipoleCoefficients& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

}  // namespace plasmod
