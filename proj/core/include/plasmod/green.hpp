#pragma once

// Free-space Helmholtz kernels and the dipole far-field expansion for a small
// inclusion D = delta * B + z.

#include "plasmod/geometry.hpp"
#include "plasmod/sphere.hpp"

namespace plasmod {

struct GreenParams {
  Complex k{1.0, 0.0};  // host wavenumber k0
  Complex eps_matrix{1.0, 0.0};
  Complex mu_matrix{1.0, 0.0};
  Complex mu_particle{1.0, 0.0};
  Point3 source{0.0, 0.0, 0.0};  // z
  double delta = 1.0;

  void validate() const;
};

/// Gamma_k(d) = -exp(i k |d|) / (4 pi |d|).
Complex helmholtz_fundamental(Complex k, const Point3& d);
Vec3 helmholtz_gradient(Complex k, const Point3& d);
Tensor3 helmholtz_hessian(Complex k, const Point3& d);

/// eps0 (Gamma_k(x - z) I + k^-2 D^2 Gamma_k(x - z)). Throws
/// kSourceSingularity when x is within 1e-12 of z.
Tensor3 dyadic_green(const GreenParams& g, const Point3& x);

/// curl_x (G(x, z) p) for a constant vector p. The Hessian part is a gradient
/// field and drops out, leaving eps0 grad Gamma_k x p.
Vec3 curl_dyadic_green_apply(const GreenParams& g, const Point3& x, const Vec3& p);

/// Leading-order scattered field E - E_in at x:
///   -delta^3 w^2 mu0 G M^e E_in(z) - delta^3 (i w mu0 / eps0) curl G M^h H_in(z).
Vec3 far_field_scattered(const GreenParams& g, const PolarizationTensors& pt, const Vec3& e_in_at_z,
                         const Vec3& h_in_at_z, const Point3& x, double omega);

}  // namespace plasmod
