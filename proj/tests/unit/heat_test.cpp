#include "plasmod/heat.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

namespace plasmod {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(HeatIntensity, Examples) {
  EXPECT_EQ(heat_intensity(1.0, Complex(-3.0, 0.0), 10.0), 0.0);
  EXPECT_DOUBLE_EQ(heat_intensity(8.0 * kPi, Complex(0.0, 1.0), 1.0), 1.0);
  try {
    heat_intensity(1.0, Complex(1.0, -0.1), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNegativeLoss);
  }
}

TEST(HeatIntensity, SphereOverloadUsesInteriorField) {
  SphereScene s;
  s.eps_particle = Complex(-1.5, 0.3);
  s.e0 = {Complex(0.0), Complex(0.5), Complex(1.0)};
  const double e2 = norm_squared(sphere_response(s).e2);
  EXPECT_DOUBLE_EQ(heat_intensity(s, 2.0), heat_intensity(2.0, s.eps_particle, e2));
}

TEST(HeatIntensity, InverseLossScalingAtResonance) {
  const DrudeParams p{1.0, 1.0, 0.0};
  const double omega = p.omega_p / std::sqrt(3.0);
  std::vector<double> taus, qs;
  for (double t = 1e-2; t > 0.9e-6; t /= 10.0) {
    SphereScene s;
    s.eps_particle = permittivity(p.with_tau(t), omega);
    taus.push_back(t);
    qs.push_back(heat_intensity(s, omega));
  }
  EXPECT_NEAR(loglog_slope(taus, qs), -1.0, 0.05);
}

TEST(SteadyProfile, SymmetricConductivities) {
  const HeatScene scene{2.0, 2.0, 1.5, 3.0};
  const auto prof = steady_profile(scene);
  EXPECT_NEAR(prof.a_coeff, scene.q * scene.r_np * scene.r_np / (2.0 * 2.0), 1e-14);
}

TEST(SteadyProfile, NoSourceMeansNoHeating) {
  const auto prof = steady_profile(HeatScene{1.0, 3.0, 1.0, 0.0});
  EXPECT_EQ(prof.a_coeff, 0.0);
  EXPECT_EQ(prof.b_coeff, 0.0);
  EXPECT_EQ(temperature_at(prof, 0.3), 0.0);
  EXPECT_EQ(temperature_at(prof, 7.0), 0.0);
}

TEST(SteadyProfile, GenericMatchesTransmissionSolve) {
  const HeatScene scene{1.0, 2.0, 1.0, 6.0};
  const auto prof = steady_profile(scene);
  EXPECT_NEAR(prof.b_coeff, 2.0, 1e-15);
  EXPECT_NEAR(prof.a_coeff, 2.5, 1e-15);

  // Continuity A - B / r = Q r^2 / (6 s_np) and flux s0 B / r^2 = Q r / 3.
  const double r = scene.r_np;
  const std::vector<std::vector<double>> m{{1.0, -1.0 / r}, {0.0, scene.sigma_matrix / (r * r)}};
  const std::vector<double> rhs{scene.q * r * r / (6.0 * scene.sigma_np), scene.q * r / 3.0};
  const auto x = oracle::naive_solve(m, rhs);
  EXPECT_NEAR(prof.a_coeff, x[0], 1e-14);
  EXPECT_NEAR(prof.b_coeff, x[1], 1e-14);
}

TEST(SteadyProfile, InvariantsOnRandomScenes) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const HeatScene scene{u(rng), u(rng), 0.1 * u(rng), u(rng)};
    const auto prof = steady_profile(scene);
    const double r = scene.r_np;
    const double inside = prof.a_coeff - scene.q * r * r / (6.0 * scene.sigma_np);
    EXPECT_NEAR(inside, prof.b_coeff / r, 1e-12 * std::abs(inside));
    const double flux_in = scene.sigma_np * (scene.q * r / (3.0 * scene.sigma_np));
    const double flux_out = scene.sigma_matrix * prof.b_coeff / (r * r);
    EXPECT_NEAR(flux_in, flux_out, 1e-12 * flux_in);
    EXPECT_NEAR(temperature_at(prof, r), temperature_at(prof, std::nextafter(r, 2.0 * r)),
                1e-12 * temperature_at(prof, r));

    for (double f : {1.01, 2.0, 13.7}) {
      const double x = f * r;
      EXPECT_NEAR(temperature_at(prof, x), scene.volume() * scene.q / (4.0 * kPi * scene.sigma_matrix * x),
                  1e-12 * temperature_at(prof, x));
    }
    EXPECT_NEAR(temperature_at(prof, 2.0 * r), 0.5 * temperature_at(prof, std::nextafter(r, 2.0 * r)),
                1e-12 * temperature_at(prof, r));
    EXPECT_EQ(temperature_at(prof, 0.0), prof.a_coeff);
  }
}

TEST(SteadyProfile, RadialLaplacianResidual) {
  const HeatScene scene{0.6, 3.1, 2.0, 4.5};
  const auto prof = steady_profile(scene);
  const auto t = [&](double r) { return temperature_at(prof, r); };
  const int n = 1000;
  const double h = 1e-4 * scene.r_np;
  for (int i = 1; i < n; ++i) {
    const double r = scene.r_np * i / n;
    if (r - h <= 0.0 || r + h >= scene.r_np) continue;
    const double residual = scene.sigma_np * oracle::radial_laplacian(t, r, h) + scene.q;
    EXPECT_LE(std::abs(residual), 1e-6 * scene.q);
  }
  for (int i = 1; i <= n; ++i) {
    const double r = scene.r_np * (1.0 + 9.0 * i / n) + h;
    const double lap = oracle::radial_laplacian(t, r, h);
    EXPECT_LE(std::abs(lap), 1e-6 * scene.q);
  }
}

TEST(SteadyProfile, InteriorNonincreasing) {
  const auto prof = steady_profile(HeatScene{1.0, 0.5, 1.0, 2.0});
  double prev = temperature_at(prof, 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double cur = temperature_at(prof, i / 100.0);
    EXPECT_LE(cur, prev);
    prev = cur;
  }
}

TEST(HeatScene, Validation) {
  EXPECT_THROW(steady_profile(HeatScene{0.0, 1.0, 1.0, 1.0}), Error);
  EXPECT_THROW(steady_profile(HeatScene{1.0, 1.0, 1.0, -1.0}), Error);
  EXPECT_THROW(temperature_at(steady_profile(HeatScene{}), -1.0), Error);
}

}  // namespace
}  // namespace plasmod
