#pragma once

#include <array>
#include <cmath>

#include "plasmod/numerics.hpp"

namespace plasmod {

using Point3 = std::array<double, 3>;
using Vec3 = std::array<Complex, 3>;
using Tensor3 = std::array<std::array<Complex, 3>, 3>;

inline Vec3 to_vec3(const Point3& p) { return {Complex(p[0]), Complex(p[1]), Complex(p[2])}; }

inline double norm_squared(const Vec3& v) {
  return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

inline double distance(const Point3& a, const Point3& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

inline Vec3 scaled(const Vec3& v, Complex s) { return {v[0] * s, v[1] * s, v[2] * s}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline Vec3 tensor_apply(const Tensor3& t, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
  return out;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Tensor3 scalar_tensor(Complex s) {
  Tensor3 t{};
  for (int i = 0; i < 3; ++i) t[i][i] = s;
  return t;
}

}  // namespace plasmod
