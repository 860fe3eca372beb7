#pragma once

// Degree-one spherical harmonics, complex and orthonormal on the unit sphere:
//   Y_1^0  = sqrt(3/4pi) cos(theta)
//   Y_1^+-1 = -+ sqrt(3/8pi) sin(theta) e^{+-i phi}
// A uniform field E enters as E.x = r * sum_m a_m Y_1^m, which makes
// sum_m |a_m|^2 = (4pi/3) |E|^2.

#include <array>

#include "plasmod/geometry.hpp"

namespace plasmod {

/// Coefficients indexed by m + 1, i.e. [m = -1, m = 0, m = 1].
using DipoleCoefficients = std::array<Complex, 3>;

Complex spherical_harmonic_l1(int m, double theta, double phi);

DipoleCoefficients dipole_coefficients(const Vec3& field);
Vec3 field_from_dipole_coefficients(const DipoleCoefficients& a);

double coefficient_norm_squared(const DipoleCoefficients& a);

}  // namespace plasmod
