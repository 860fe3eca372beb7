#pragma once

#include <optional>

#include "plasmod/numerics.hpp"

namespace plasmod {

/// Drude dispersion eps(w) = eps0 * (1 - wp^2 / (w (w + i tau))).
/// Frequencies in rad/s; eps0 sets the permittivity scale.
struct DrudeParams {
  double eps0 = 1.0;
  double omega_p = 1.0;
  double tau = 0.0;

  // Throws kInvalidArgument unless eps0 > 0, omega_p > 0, tau >= 0.
  void validate() const;

  DrudeParams with_tau(double new_tau) const {
    DrudeParams copy = *this;
    copy.tau = new_tau;
    return copy;
  }

  bool operator==(const DrudeParams&) const = default;
};

/// Incident light described by angular frequency and propagation speed; the
/// wavelength is carried only when the caller supplied it.
struct IncidentLight {
  double omega = 0.0;
  double speed = 0.0;
  std::optional<double> wavelength;

  static IncidentLight from_wavelength(double wavelength, double speed);
  static IncidentLight from_omega(double omega, double speed);
};

/// Exact rationalized Drude permittivity. Imaginary part is >= 0.
Complex permittivity(const DrudeParams& p, double omega);

/// The positive frequency at which the lossless (tau = 0) permittivity equals
/// `eps_target`: omega_p / sqrt(1 - eps_target / eps0). Throws
/// kNoRealFrequency when eps_target >= eps0.
double lossless_frequency_for(const DrudeParams& p, double eps_target);

}  // namespace plasmod
