#include "plasmod/drude.hpp"

#include <cmath>
#include <numbers>

namespace plasmod {

void DrudeParams::validate() const {
  if (!(eps0 > 0.0) || !(omega_p > 0.0) || !(tau >= 0.0) || !std::isfinite(eps0) ||
      !std::isfinite(omega_p) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidArgument, "Drude parameters need eps0 > 0, omega_p > 0, tau >= 0");
  }
}

IncidentLight IncidentLight::from_wavelength(double wavelength, double speed) {
  if (!(wavelength > 0.0) || !(speed > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "wavelength and speed must be positive");
  }
  return {2.0 * std::numbers::pi * speed / wavelength, speed, wavelength};
}

IncidentLight IncidentLight::from_omega(double omega, double speed) {
  if (!(omega > 0.0) || !(speed > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "omega and speed must be positive");
  }
  return {omega, speed, std::nullopt};
}

Complex permittivity(const DrudeParams& p, double omega) {
  p.validate();
  if (!(omega > 0.0)) throw Error(ErrorCode::kInvalidArgument, "omega must be positive");
  const double wp2 = p.omega_p * p.omega_p;
  const double denom = omega * omega + p.tau * p.tau;
  const double re = p.eps0 * (1.0 - wp2 / denom);
  const double im = p.eps0 * wp2 * p.tau / (omega * denom);
  return {re, im};
}

double lossless_frequency_for(const DrudeParams& p, double eps_target) {
  p.validate();
  if (!(eps_target < p.eps0)) {
    throw Error(ErrorCode::kNoRealFrequency, "target permittivity must lie below eps0");
  }
  return p.omega_p / std::sqrt(1.0 - eps_target / p.eps0);
}

}  // namespace plasmod
