#include "plasmod/heat.hpp"

#include <cmath>
#include <numbers>

namespace plasmod {

void HeatScene::validate() const {
  if (!(sigma_matrix > 0.0) || !(sigma_np > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "thermal conductivities must be positive");
  }
  if (!(r_np > 0.0)) throw Error(ErrorCode::kInvalidArgument, "particle radius must be positive");
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kInvalidArgument, "heat source must be finite and nonnegative");
  }
}

double HeatScene::volume() const { return 4.0 * std::numbers::pi / 3.0 * r_np * r_np * r_np; }

double heat_intensity(double omega, Complex eps1, double e2_magnitude_sq) {
  if (!(omega > 0.0)) throw Error(ErrorCode::kInvalidArgument, "omega must be positive");
  if (!(e2_magnitude_sq >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "|E2|^2 must be nonnegative");
  if (eps1.imag() < 0.0) throw Error(ErrorCode::kNegativeLoss, "Im(eps1) < 0 is not dissipative");
  return omega * eps1.imag() * e2_magnitude_sq / (8.0 * std::numbers::pi);
}

double heat_intensity(const SphereScene& s, double omega) {
  const SphereResponse r = sphere_response(s);
  return heat_intensity(omega, s.eps_particle, norm_squared(r.e2));
}

TemperatureProfile steady_profile(const HeatScene& scene) {
  scene.validate();
  const double r = scene.r_np;
  TemperatureProfile p;
  p.scene = scene;
  p.b_coeff = r * r * r * scene.q / (3.0 * scene.sigma_matrix);
  p.a_coeff = p.b_coeff / r + scene.q * r * r / (6.0 * scene.sigma_np);
  return p;
}

double temperature_at(const TemperatureProfile& profile, double r) {
  if (!(r >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be nonnegative");
  const HeatScene& s = profile.scene;
  if (r <= s.r_np) return profile.a_coeff - s.q * r * r / (6.0 * s.sigma_np);
  return profile.b_coeff / r;
}

}  // namespace plasmod
