#include "plasmod/green.hpp"

#include <cmath>
#include <numbers>

namespace plasmod {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSourceTolerance = 1e-12;

struct RadialDerivatives {
  Complex f;    // Gamma(r)
  Complex df;   // dGamma/dr
  Complex d2f;  // d^2 Gamma / dr^2
};

RadialDerivatives radial(Complex k, double r) {
  const Complex e = std::exp(kI * k * r);
  const double c = -1.0 / (4.0 * std::numbers::pi);
  RadialDerivatives out;
  out.f = c * e / r;
  out.df = c * e * (kI * k / r - 1.0 / (r * r));
  out.d2f = c * e * (-k * k / r - 2.0 * kI * k / (r * r) + 2.0 / (r * r * r));
  return out;
}

double checked_radius(const Point3& d) {
  const double r = std::hypot(d[0], d[1], d[2]);
  if (!(r > kSourceTolerance)) {
    throw Error(ErrorCode::kSourceSingularity, "field point coincides with the source");
  }
  return r;
}

Point3 offset(const Point3& x, const Point3& z) { return {x[0] - z[0], x[1] - z[1], x[2] - z[2]}; }

}  // namespace

void GreenParams::validate() const {
  if (!(std::abs(k) > 0.0)) throw Error(ErrorCode::kInvalidArgument, "wavenumber must be nonzero");
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "particle scale must be positive");
  if (eps_matrix == 0.0) throw Error(ErrorCode::kInvalidArgument, "host permittivity must be nonzero");
}

Complex helmholtz_fundamental(Complex k, const Point3& d) { return radial(k, checked_radius(d)).f; }

Vec3 helmholtz_gradient(Complex k, const Point3& d) {
  const double r = checked_radius(d);
  const Complex df = radial(k, r).df;
  return {df * (d[0] / r), df * (d[1] / r), df * (d[2] / r)};
}

// D^2 f(|d|) = f'' u u^T + (f' / r) (I - u u^T), u = d / r.
Tensor3 helmholtz_hessian(Complex k, const Point3& d) {
  const double r = checked_radius(d);
  const RadialDerivatives rd = radial(k, r);
  const Point3 u{d[0] / r, d[1] / r, d[2] / r};
  const Complex tangential = rd.df / r;
  Tensor3 h{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double uu = u[i] * u[j];
      h[i][j] = rd.d2f * uu + tangential * ((i == j ? 1.0 : 0.0) - uu);
    }
  }
  return h;
}

Tensor3 dyadic_green(const GreenParams& g, const Point3& x) {
  g.validate();
  const Point3 d = offset(x, g.source);
  const Complex gamma = helmholtz_fundamental(g.k, d);
  Tensor3 h = helmholtz_hessian(g.k, d);
  const Complex inv_k2 = 1.0 / (g.k * g.k);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      h[i][j] = g.eps_matrix * ((i == j ? gamma : Complex(0.0)) + inv_k2 * h[i][j]);
    }
  }
  return h;
}

Vec3 curl_dyadic_green_apply(const GreenParams& g, const Point3& x, const Vec3& p) {
  g.validate();
  return scaled(cross(helmholtz_gradient(g.k, offset(x, g.source)), p), g.eps_matrix);
}

Vec3 far_field_scattered(const GreenParams& g, const PolarizationTensors& pt, const Vec3& e_in_at_z,
                         const Vec3& h_in_at_z, const Point3& x, double omega) {
  g.validate();
  const double delta3 = g.delta * g.delta * g.delta;
  const Complex electric_coeff = -delta3 * omega * omega * g.mu_matrix;
  const Complex magnetic_coeff = -delta3 * (kI * omega * g.mu_matrix / g.eps_matrix);

  const Vec3 electric = tensor_apply(dyadic_green(g, x), tensor_apply(pt.m_e, e_in_at_z));
  const Vec3 magnetic = curl_dyadic_green_apply(g, x, tensor_apply(pt.m_h, h_in_at_z));
  return scaled(electric, electric_coeff) + scaled(magnetic, magnetic_coeff);
}

}  // namespace plasmod
