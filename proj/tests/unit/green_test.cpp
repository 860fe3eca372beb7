#include "plasmod/green.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace plasmod {
namespace {

Point3 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Point3 p{};
  do {
    p = {u(rng), u(rng), u(rng)};
  } while (std::hypot(p[0], p[1], p[2]) < 0.2);
  return p;
}

TEST(Helmholtz, FundamentalMatchesDirectFormula) {
  const Complex k(1.3, 0.2);
  const Point3 d{0.4, -1.0, 0.7};
  const Complex ref = oracle::helmholtz(k, d[0], d[1], d[2]);
  EXPECT_LT(std::abs(helmholtz_fundamental(k, d) - ref), 1e-15 * std::abs(ref));
}

TEST(Helmholtz, HessianMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (const Complex k : {Complex(1.0, 0.0), Complex(2.5, 0.3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Point3 d = random_point(rng);
      const double r = std::hypot(d[0], d[1], d[2]);
      const auto fd = oracle::hessian_fd(k, d, 1e-5 * r);
      const auto an = helmholtz_hessian(k, d);
      double scale = 0.0;
      for (const auto& row : an) {
        for (const auto& v : row) scale = std::max(scale, std::abs(v));
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(an[i][j] - fd[i][j]), 1e-6 * scale);
      }
    }
  }
}

TEST(Helmholtz, GradientMatchesFiniteDifferences) {
  const Complex k(1.7, 0.0);
  const Point3 d{0.3, 0.9, -1.2};
  const double h = 1e-6;
  const auto g = helmholtz_gradient(k, d);
  for (int i = 0; i < 3; ++i) {
    Point3 p = d, m = d;
    p[i] += h;
    m[i] -= h;
    const Complex fd = (helmholtz_fundamental(k, p) - helmholtz_fundamental(k, m)) / (2.0 * h);
    EXPECT_LT(std::abs(g[i] - fd), 1e-8);
  }
}

TEST(Helmholtz, SatisfiesHelmholtzEquation) {
  std::mt19937_64 rng(6);
  const Complex k(2.0, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Point3 d = random_point(rng);
    const double r = std::hypot(d[0], d[1], d[2]);
    const auto fd = oracle::hessian_fd(k, d, 1e-3 * r);
    const Complex gamma = oracle::helmholtz(k, d[0], d[1], d[2]);
    const Complex residual = fd[0][0] + fd[1][1] + fd[2][2] + k * k * gamma;
    EXPECT_LE(std::abs(residual), 1e-4 * std::abs(k * k * gamma));
  }
}

TEST(DyadicGreen, SymmetricAtRandomPoints) {
  std::mt19937_64 rng(7);
  GreenParams g;
  g.k = Complex(1.4, 0.05);
  g.eps_matrix = 2.25;
  g.source = {0.1, -0.2, 0.3};
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = dyadic_green(g, random_point(rng));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        EXPECT_LE(std::abs(t[i][j] - t[j][i]), 1e-12 * std::abs(t[i][j]) + 1e-300);
        EXPECT_TRUE(std::isfinite(t[i][j].real()) && std::isfinite(t[i][j].imag()));
      }
    }
  }
}

TEST(DyadicGreen, DiagonalOnAxis) {
  GreenParams g;
  g.k = 1.0;
  const auto t = dyadic_green(g, Point3{2.0, 0.0, 0.0});
  EXPECT_EQ(std::abs(t[0][1]), 0.0);
  EXPECT_EQ(std::abs(t[0][2]), 0.0);
  EXPECT_EQ(std::abs(t[1][2]), 0.0);
  EXPECT_LT(std::abs(t[1][1] - t[2][2]), 1e-15);
}

TEST(DyadicGreen, SourceSingularity) {
  GreenParams g;
  g.source = {1.0, 1.0, 1.0};
  try {
    dyadic_green(g, g.source);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSourceSingularity);
  }
}

TEST(DyadicGreen, CurlMatchesFiniteDifferences) {
  GreenParams g;
  g.k = Complex(1.1, 0.0);
  g.eps_matrix = 1.5;
  const Vec3 p{Complex(0.3, 0.1), Complex(-0.7), Complex(0.2, -0.4)};
  const Point3 x{0.8, -0.5, 1.3};
  const double h = 1e-5;
  const auto field = [&](Point3 q) { return tensor_apply(dyadic_green(g, q), p); };
  std::array<Vec3, 3> jac{};  // jac[j][i] = d field_i / d x_j
  for (int j = 0; j < 3; ++j) {
    Point3 a = x, b = x;
    a[j] += h;
    b[j] -= h;
    jac[j] = scaled(field(a) - field(b), 1.0 / (2.0 * h));
  }
  const Vec3 fd{jac[1][2] - jac[2][1], jac[2][0] - jac[0][2], jac[0][1] - jac[1][0]};
  const Vec3 an = curl_dyadic_green_apply(g, x, p);
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(an[i] - fd[i]), 1e-6);
}

class FarField : public ::testing::Test {
 protected:
  SphereScene scene_;
  GreenParams g_;
  Vec3 e_in_{Complex(0.0), Complex(0.0), Complex(1.0)};
  Vec3 h_in_{Complex(0.0), Complex(1.0), Complex(0.0)};
  Point3 x_{3.0, 1.0, -2.0};

  void SetUp() override {
    scene_.eps_particle = Complex(-3.0, 0.2);
    g_.k = 1.2;
  }
};

TEST_F(FarField, ZeroTensorsGiveZero) {
  const PolarizationTensors zero{};
  const Vec3 out = far_field_scattered(g_, zero, e_in_, h_in_, x_, 1.0);
  EXPECT_EQ(norm_squared(out), 0.0);
}

TEST_F(FarField, NonmagneticKeepsElectricTermOnly) {
  const auto pt = sphere_polarization_tensors(scene_, std::nullopt);
  const Vec3 with_h = far_field_scattered(g_, pt, e_in_, h_in_, x_, 1.0);
  const Vec3 without_h = far_field_scattered(g_, pt, e_in_, Vec3{}, x_, 1.0);
  EXPECT_EQ(norm_squared(with_h - without_h), 0.0);
  const Vec3 expected = scaled(tensor_apply(dyadic_green(g_, x_), tensor_apply(pt.m_e, e_in_)), -1.0);
  EXPECT_LT(std::sqrt(norm_squared(with_h - expected)), 1e-14 * std::sqrt(norm_squared(expected)));
}

TEST_F(FarField, ScalesAsDeltaCubed) {
  const auto pt = sphere_polarization_tensors(scene_, Complex(3.0));
  for (const double delta : {0.1, 0.03, 1e-4}) {
    g_.delta = delta;
    const Vec3 small = far_field_scattered(g_, pt, e_in_, h_in_, x_, 0.9);
    g_.delta = 2.0 * delta;
    const Vec3 big = far_field_scattered(g_, pt, e_in_, h_in_, x_, 0.9);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(big[i], 8.0 * small[i]);
  }
}

TEST(GreenParams, Validation) {
  GreenParams g;
  g.delta = 0.0;
  EXPECT_THROW(g.validate(), Error);
  g.delta = 1.0;
  g.k = 0.0;
  EXPECT_THROW(g.validate(), Error);
}

}  // namespace
}  // namespace plasmod
