#pragma once

// Photothermal heating of a spherical particle: the dissipated power density
// and the steady conduction profile with a uniform source inside the particle.

#include "plasmod/numerics.hpp"
#include "plasmod/sphere.hpp"

namespace plasmod {

struct HeatScene {
  double sigma_matrix = 1.0;  // host conductivity
  double sigma_np = 1.0;      // particle conductivity
  double r_np = 1.0;
  double q = 0.0;  // volumetric source inside the particle

  void validate() const;
  double volume() const;
};

struct TemperatureProfile {
  double a_coeff = 0.0;  // T(r) = A - Q r^2 / (6 sigma_np) inside
  double b_coeff = 0.0;  // T(r) = B / r outside
  HeatScene scene;
};

/// Q = omega Im(eps1) |E2|^2 / (8 pi). Throws kNegativeLoss for Im(eps1) < 0.
double heat_intensity(double omega, Complex eps1, double e2_magnitude_sq);

/// Q for a sphere driven by its own uniform interior field.
double heat_intensity(const SphereScene& s, double omega);

/// Steady profile. B = r^3 Q / (3 sigma_matrix) from flux balance, A from
/// temperature continuity at r_np.
TemperatureProfile steady_profile(const HeatScene& scene);

double temperature_at(const TemperatureProfile& profile, double r);

}  // namespace plasmod
