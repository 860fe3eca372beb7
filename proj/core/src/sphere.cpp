#include "plasmod/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plasmod {
namespace {

constexpr double kSingularDistance = 1e-300;
constexpr double kEigenvalueTolerance = 1e-14;

void require_finite(Complex c, const char* what) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw Error(ErrorCode::kInvalidArgument, what);
  }
}

}  // namespace

void SphereScene::validate() const {
  if (!(r_np > 0.0) || !std::isfinite(r_np)) {
    throw Error(ErrorCode::kInvalidArgument, "sphere radius must be positive");
  }
  if (!(eps_matrix.real() > 0.0) || eps_matrix.imag() != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "host permittivity must be real and positive");
  }
  require_finite(eps_particle, "particle permittivity must be finite");
  for (const auto& c : e0) require_finite(c, "incident field must be finite");
}

double SphereScene::volume() const { return 4.0 * std::numbers::pi / 3.0 * r_np * r_np * r_np; }

std::optional<Complex> contrast(Complex inside, Complex outside) {
  if (inside == outside) return std::nullopt;
  // Through the ratio so that inside = -2 outside gives exactly 1/6.
  if (outside != Complex(0.0)) {
    const Complex x = inside / outside;
    if (x != Complex(1.0)) return (x + 1.0) / (2.0 * (x - 1.0));
  }
  return (inside + outside) / (2.0 * (inside - outside));
}

SphereResponse sphere_response(const SphereScene& s) {
  s.validate();
  const Complex eps0 = s.eps_matrix;
  const Complex eps1 = s.eps_particle;
  const Complex denom = 2.0 * eps0 + eps1;
  if (std::abs(denom) < kSingularDistance) {
    throw Error(ErrorCode::kExactResonanceSingularity, "2 eps0 + eps1 vanishes");
  }
  SphereResponse r;
  r.interior_factor = 3.0 * eps0 / denom;
  r.scattered_factor = (eps0 - eps1) / denom;
  const double r3 = s.r_np * s.r_np * s.r_np;
  r.e2 = scaled(s.e0, r.interior_factor);
  r.e1 = scaled(s.e0, r.scattered_factor * r3);
  r.lambda_eps = contrast(eps1, eps0);
  return r;
}

double transmission_residual(const SphereScene& s, const SphereResponse& r) {
  const double inv_r3 = 1.0 / (s.r_np * s.r_np * s.r_np);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    // potential: E2.x = E0.x + E1.x / r^3 on |x| = r
    const Complex potential = r.e2[i] - (s.e0[i] + r.e1[i] * inv_r3);
    // flux: eps1 E2 = eps0 (E0 - 2 E1 / r^3)
    const Complex flux = s.eps_particle * r.e2[i] - s.eps_matrix * (s.e0[i] - 2.0 * r.e1[i] * inv_r3);
    worst = std::max({worst, std::abs(potential), std::abs(flux) / std::abs(s.eps_matrix)});
  }
  const double scale = std::sqrt(norm_squared(s.e0));
  return scale > 0.0 ? worst / scale : worst;
}

double sphere_energy(const SphereScene& s) {
  const SphereResponse r = sphere_response(s);
  return std::norm(r.interior_factor) * s.volume() * norm_squared(s.e0);
}

std::vector<BlowupSample> resonance_blowup_scan(const DrudeParams& p, double omega, double r_np,
                                                const Vec3& e0, std::span<const double> tau_grid) {
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "loss grid must be positive");
    if (i > 0 && !(tau_grid[i] < tau_grid[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "loss grid must be strictly decreasing");
    }
  }
  std::vector<BlowupSample> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    SphereScene scene;
    scene.r_np = r_np;
    scene.eps_matrix = p.eps0;
    scene.eps_particle = permittivity(p.with_tau(tau), omega);
    scene.e0 = e0;
    const double energy = sphere_energy(scene);
    out.push_back({tau, energy, tau * energy});
  }
  return out;
}

double resonance_wavelength(const DrudeParams& p, double speed) {
  p.validate();
  if (!(speed > 0.0)) throw Error(ErrorCode::kInvalidArgument, "speed must be positive");
  return 2.0 * std::numbers::pi * speed * std::sqrt(3.0) / p.omega_p;
}

Complex polarization_from_contrast(std::optional<Complex> lambda, double volume) {
  if (!lambda) return 0.0;
  const Complex gap = *lambda - 1.0 / 6.0;
  if (std::abs(gap) < kEigenvalueTolerance) {
    throw Error(ErrorCode::kEigenvalueHit, "contrast coincides with the l = 1 eigenvalue 1/6");
  }
  return volume / gap;
}

Complex polarization_from_permittivity(Complex inside, Complex outside, double volume) {
  const Complex denom = inside + 2.0 * outside;
  if (std::abs(denom) < kSingularDistance) {
    throw Error(ErrorCode::kEigenvalueHit, "inside + 2 outside vanishes");
  }
  return 3.0 * volume * (inside - outside) / denom;
}

PolarizationTensors sphere_polarization_tensors(const SphereScene& s,
                                                std::optional<Complex> mu_contrast) {
  s.validate();
  const double v = s.volume();
  PolarizationTensors pt;
  pt.m_e = scalar_tensor(polarization_from_contrast(contrast(s.eps_particle, s.eps_matrix), v));
  pt.m_h = scalar_tensor(polarization_from_contrast(mu_contrast, v));
  return pt;
}

}  // namespace plasmod
