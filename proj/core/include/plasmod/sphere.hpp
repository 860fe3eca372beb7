#pragma once

// Quasi-static response of a single spherical particle in a uniform field.

#include <optional>
#include <span>
#include <vector>

#include "plasmod/drude.hpp"
#include "plasmod/geometry.hpp"

namespace plasmod {

struct SphereScene {
  double r_np = 1.0;
  Complex eps_matrix{1.0, 0.0};
  Complex eps_particle{1.0, 0.0};
  Vec3 e0{Complex(0.0), Complex(0.0), Complex(1.0)};

  // Requires r_np > 0 and a lossless, positive host permittivity.
  void validate() const;
  double volume() const;
};

struct SphereResponse {
  Vec3 e2;  // uniform interior field
  Vec3 e1;  // dipole strength of the scattered potential e1.x / |x|^3
  // (eps1 + eps0) / (2 (eps1 - eps0)); empty when there is no contrast.
  std::optional<Complex> lambda_eps;
  Complex interior_factor;   // 3 eps0 / (2 eps0 + eps1)
  Complex scattered_factor;  // (eps0 - eps1) / (2 eps0 + eps1), before the r^3
};

/// Permittivity contrast (inside + outside) / (2 (inside - outside)).
std::optional<Complex> contrast(Complex inside, Complex outside);

/// Throws kExactResonanceSingularity when 2 eps0 + eps1 vanishes.
SphereResponse sphere_response(const SphereScene& s);

/// Largest violation of potential continuity and flux continuity at r_np,
/// relative to |E0|.
double transmission_residual(const SphereScene& s, const SphereResponse& r);

/// Interior field energy |3 eps0 / (2 eps0 + eps1)|^2 (4pi/3) r^3 |E0|^2.
double sphere_energy(const SphereScene& s);

struct BlowupSample {
  double tau = 0.0;
  double energy = 0.0;
  double tau_times_energy = 0.0;
};

/// Energy of a Drude sphere in a host of permittivity p.eps0 over a strictly
/// decreasing loss grid.
std::vector<BlowupSample> resonance_blowup_scan(const DrudeParams& p, double omega, double r_np,
                                                const Vec3& e0, std::span<const double> tau_grid);

/// Incident wavelength 2 pi v sqrt(3) / omega_p at which a Drude sphere resonates.
double resonance_wavelength(const DrudeParams& p, double speed);

struct PolarizationTensors {
  Tensor3 m_e{};
  Tensor3 m_h{};
};

/// V / (lambda - 1/6), the l = 1 polarizability of a ball of volume V. An
/// empty contrast (no material jump) gives zero. Throws kEigenvalueHit when
/// lambda sits on 1/6.
Complex polarization_from_contrast(std::optional<Complex> lambda, double volume);

/// 3 V (inside - outside) / (inside + 2 outside); the same quantity written in
/// permittivities.
Complex polarization_from_permittivity(Complex inside, Complex outside, double volume);

/// Electric and magnetic polarization tensors of the sphere. `mu_contrast` is
/// empty for a nonmagnetic particle.
PolarizationTensors sphere_polarization_tensors(const SphereScene& s,
                                                std::optional<Complex> mu_contrast);

}  // namespace plasmod
