#pragma once

// Concentric nanoshell: dielectric core, metal shell, dielectric spacer, metal
// shell, dielectric host. Regions are numbered 1..5 from the center outward
// and interfaces 1..4 sit at r1 < r2 < r3 < r4. Dielectric regions share one
// permittivity, metal regions another.
//
// In each region the l = 1 potential is r a_j Y + r^-2 b_j Y, with b_1 = 0
// and a_5 = a_0 the driving coefficient. Writing x = P^-1 e,
//   b = a0 * Xi Upsilon x,   a = a0 * (Xi^T x + e4),
// where Xi is the lower-triangular ones matrix and Upsilon = diag(r_j^3).
// With the simplified material pattern P = lambda_1 I - K, so lossless
// resonances are the eigenvalues of the radius-only matrix K.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "plasmod/drude.hpp"
#include "plasmod/harmonics.hpp"
#include "plasmod/numerics.hpp"
#include "plasmod/sphere.hpp"

namespace plasmod {

using ShellRadii = std::array<double, 4>;

void validate_radii(const ShellRadii& radii);

struct ConcentricStructure {
  ShellRadii radii{1.0, 2.0, 3.0, 4.0};
  Complex eps_core{1.0, 0.0};   // regions 1, 3, 5
  Complex eps_shell{1.0, 0.0};  // regions 2, 4

  void validate() const;
};

struct ShellMatrices {
  ComplexMatrix p{4, 4};
  RealMatrix k{4, 4};
  RealMatrix xi{4, 4};
  RealMatrix upsilon{4, 4};
  RealMatrix f{4, 4};
  std::array<double, 4> e{1.0, -1.0, 1.0, -1.0};
  std::array<double, 4> e4{1.0, 1.0, 1.0, 1.0};
  std::array<Complex, 4> lambdas{};
};

/// (2 eps_outer + eps_inner) / (eps_outer - eps_inner) for one interface.
Complex interface_contrast(Complex eps_outer, Complex eps_inner);

/// eps_shell / eps_core that puts lambda_1 at the given value, and back.
double eps_ratio_for_lambda(double lambda1);
Complex lambda_for_eps_ratio(Complex ratio);

RealMatrix coupling_matrix(const ShellRadii& radii);
RealMatrix energy_selector_matrix(const ShellRadii& radii);

/// Throws kDegenerateInterface when shell and core permittivities coincide.
ShellMatrices assemble_matrices(const ConcentricStructure& s);

/// Monic coefficients of det(lambda I - K), highest degree first.
std::array<double, 5> resonance_quartic_coeffs(const ShellRadii& radii);

struct ShellMode {
  double lambda1 = 0.0;
  double eps_ratio = 0.0;  // eps_shell / eps_core
  std::array<double, 4> eigenvector{};
  double e_overlap = 0.0;        // v . (1, -1, 1, -1)
  double upsilon_overlap = 0.0;  // (r1 / r4)^3 v_1
  std::array<double, 4> f_overlaps{};  // F v with radii scaled by r4

  // Both the drive overlap and at least one energy overlap are nonzero.
  bool excitable(double tolerance = 1e-10) const;
};

/// Eigenmodes of K sorted by lambda1 ascending.
std::vector<ShellMode> resonance_modes(const ShellRadii& radii);

struct CoefficientSet {
  std::array<DipoleCoefficients, 4> a{};  // regions 1..4
  std::array<DipoleCoefficients, 4> b{};  // regions 2..5
  DipoleCoefficients a0{};
};

/// Throws kResonantSingularity when P is numerically singular.
CoefficientSet shell_coefficients(const ConcentricStructure& s, const DipoleCoefficients& a0);

/// Shell energy
///   (r2^3 - r1^3)/3 |a2|^2 + (r4^3 - r3^3)/3 |a4|^2
///   + (r1^-5 - r2^-5)/5 |b2|^2 + (r3^-5 - r4^-5)/5 |b4|^2, summed over m.
double shell_energy(const ShellRadii& radii, const CoefficientSet& coeffs);

/// The same weights applied to f = F P^-1 e + (1, 1, 0, 0), times sum |a0|^2.
double shell_energy_from_f(const ConcentricStructure& s, const DipoleCoefficients& a0);

enum class EnergyIntegrand { kField, kPotential };

/// Radial Gauss-Legendre quadrature of |grad u|^2 or |u|^2 over both metal
/// shells, with the angular integral done exactly.
double shell_energy_quadrature(const ShellRadii& radii, const CoefficientSet& coeffs,
                               EnergyIntegrand integrand, std::size_t nodes = 64);

struct ModeFrequency {
  ShellMode mode;
  std::optional<double> omega;  // empty when no real Drude frequency exists
};

/// Lossless Drude frequency at which each mode's permittivity ratio is met,
/// with the shell metal described by `p` and the dielectric by `eps_core`.
std::vector<ModeFrequency> mode_frequencies(const ShellRadii& radii, const DrudeParams& p,
                                            double eps_core);

/// Shell energy at a fixed drive frequency over a strictly decreasing loss grid.
std::vector<BlowupSample> shell_blowup_at(const ShellRadii& radii, const DrudeParams& p,
                                          double eps_core, double omega,
                                          std::span<const double> tau_grid,
                                          const DipoleCoefficients& a0);

/// Energy blow-up at the frequency of mode `mode_index`. Throws
/// kHypothesisViolated when the mode cannot be excited and kNoRealFrequency
/// when the Drude metal never reaches the required permittivity.
std::vector<BlowupSample> resonance_blowup_shell(const ShellRadii& radii, const DrudeParams& p,
                                                 double eps_core, std::size_t mode_index,
                                                 std::span<const double> tau_grid,
                                                 const DipoleCoefficients& a0);

/// Drive coefficients of a unit field along z.
DipoleCoefficients unit_z_drive();

}  // namespace plasmod
