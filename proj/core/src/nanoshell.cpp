#include "plasmod/nanoshell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plasmod {
namespace {

constexpr double kInterfaceTolerance = 1e-14;
constexpr double kIdentityTolerance = 1e-12;

double cube(double x) { return x * x * x; }

std::array<Complex, 5> region_permittivities(const ConcentricStructure& s) {
  return {s.eps_core, s.eps_shell, s.eps_core, s.eps_shell, s.eps_core};
}

RealMatrix lower_ones() {
  RealMatrix xi(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j <= i; ++j) xi(i, j) = 1.0;
  }
  return xi;
}

std::array<Complex, 4> solve_drive(const ComplexMatrix& p) {
  const std::array<Complex, 4> e{1.0, -1.0, 1.0, -1.0};
  std::vector<Complex> x;
  try {
    x = solve_linear(p, e);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kSingularMatrix) {
      throw Error(ErrorCode::kResonantSingularity, "P is singular: exact lossless resonance");
    }
    throw;
  }
  return {x[0], x[1], x[2], x[3]};
}

void check_tau_grid(std::span<const double> tau_grid) {
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "loss grid must be positive");
    if (i > 0 && !(tau_grid[i] < tau_grid[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "loss grid must be strictly decreasing");
    }
  }
}

// Weights of the four terms of the shell energy.
std::array<double, 4> energy_weights(const ShellRadii& r) {
  return {(cube(r[1]) - cube(r[0])) / 3.0, (cube(r[3]) - cube(r[2])) / 3.0,
          (std::pow(r[0], -5) - std::pow(r[1], -5)) / 5.0,
          (std::pow(r[2], -5) - std::pow(r[3], -5)) / 5.0};
}

}  // namespace

void validate_radii(const ShellRadii& radii) {
  if (!(radii[0] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radii must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be finite and strictly increasing");
    }
  }
}

void ConcentricStructure::validate() const {
  validate_radii(radii);
  if (!(eps_core.real() > 0.0) || eps_core.imag() != 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "dielectric permittivity must be real and positive");
  }
  if (!std::isfinite(eps_shell.real()) || !std::isfinite(eps_shell.imag())) {
    throw Error(ErrorCode::kInvalidArgument, "shell permittivity must be finite");
  }
}

Complex interface_contrast(Complex eps_outer, Complex eps_inner) {
  return (2.0 * eps_outer + eps_inner) / (eps_outer - eps_inner);
}

double eps_ratio_for_lambda(double lambda1) { return (lambda1 + 1.0) / (lambda1 - 2.0); }

Complex lambda_for_eps_ratio(Complex ratio) { return (2.0 * ratio + 1.0) / (ratio - 1.0); }

RealMatrix coupling_matrix(const ShellRadii& radii) {
  validate_radii(radii);
  const auto q = [&](std::size_t i, std::size_t j) { return cube(radii[i] / radii[j]); };
  return RealMatrix(4, 4,
                    {0.0, 1.0, 1.0, 1.0,                                 //
                     2.0 * q(0, 1), 1.0, -1.0, -1.0,                     //
                     -2.0 * q(0, 2), -2.0 * q(1, 2), 0.0, 1.0,           //
                     2.0 * q(0, 3), 2.0 * q(1, 3), 2.0 * q(2, 3), 1.0});
}

RealMatrix energy_selector_matrix(const ShellRadii& radii) {
  const double c1 = cube(radii[0]);
  const double c2 = cube(radii[1]);
  const double c3 = cube(radii[2]);
  return RealMatrix(4, 4,
                    {0.0, 1.0, 1.0, 1.0,  //
                     0.0, 0.0, 0.0, 1.0,  //
                     c1, 0.0, 0.0, 0.0,   //
                     c1, c2, c3, 0.0});
}

ShellMatrices assemble_matrices(const ConcentricStructure& s) {
  s.validate();
  const auto eps = region_permittivities(s);
  const double scale = std::max(std::abs(s.eps_core), std::abs(s.eps_shell));
  if (std::abs(s.eps_shell - s.eps_core) < kInterfaceTolerance * scale) {
    throw Error(ErrorCode::kDegenerateInterface, "shell and core permittivities coincide");
  }

  ShellMatrices m;
  for (std::size_t j = 0; j < 4; ++j) m.lambdas[j] = interface_contrast(eps[j + 1], eps[j]);

  const auto& r = s.radii;
  const auto q = [&](std::size_t i, std::size_t j) { return cube(r[i] / r[j]); };
  const auto& l = m.lambdas;
  m.p = ComplexMatrix(4, 4,
                      {l[0], -1.0, -1.0, -1.0,                                    //
                       -2.0 * q(0, 1), -l[1], 1.0, 1.0,                           //
                       2.0 * q(0, 2), 2.0 * q(1, 2), l[2], -1.0,                  //
                       -2.0 * q(0, 3), -2.0 * q(1, 3), -2.0 * q(2, 3), -l[3]});
  m.k = coupling_matrix(r);
  m.xi = lower_ones();
  m.upsilon = RealMatrix(4, 4);
  for (std::size_t j = 0; j < 4; ++j) m.upsilon(j, j) = cube(r[j]);
  m.f = energy_selector_matrix(r);

  // lambda_1 = lambda_3 = 1 - lambda_2 = 1 - lambda_4, hence P = lambda_1 I - K.
  const double lscale = 1.0 + std::abs(l[0]);
  if (std::abs(l[2] - l[0]) > kIdentityTolerance * lscale ||
      std::abs(1.0 - l[1] - l[0]) > kIdentityTolerance * lscale ||
      std::abs(1.0 - l[3] - l[0]) > kIdentityTolerance * lscale) {
    throw Error(ErrorCode::kInvalidArgument, "interface contrasts violate the shell identity");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex expected = (i == j ? l[0] : Complex(0.0)) - m.k(i, j);
      if (std::abs(m.p(i, j) - expected) > kIdentityTolerance * (lscale + std::abs(m.k(i, j)))) {
        throw Error(ErrorCode::kInvalidArgument, "P differs from lambda_1 I - K");
      }
    }
  }
  return m;
}

std::array<double, 5> resonance_quartic_coeffs(const ShellRadii& radii) {
  validate_radii(radii);
  const auto q = [&](std::size_t i, std::size_t j) { return cube(radii[i] / radii[j]); };
  const double q12 = q(0, 1), q13 = q(0, 2), q14 = q(0, 3);
  const double q23 = q(1, 2), q24 = q(1, 3), q34 = q(2, 3);
  return {1.0,
          -2.0,
          -2.0 * q12 + 2.0 * q13 - 2.0 * q14 - 2.0 * q23 + 2.0 * q24 - 2.0 * q34 + 1.0,
          2.0 * q12 - 2.0 * q13 + 2.0 * q14 + 2.0 * q23 - 2.0 * q24 + 2.0 * q34,
          4.0 * q12 * q34};
}

bool ShellMode::excitable(double tolerance) const {
  if (!(std::abs(e_overlap) > tolerance)) return false;
  return std::any_of(f_overlaps.begin(), f_overlaps.end(),
                     [&](double f) { return std::abs(f) > tolerance; });
}

std::vector<ShellMode> resonance_modes(const ShellRadii& radii) {
  const RealMatrix k = coupling_matrix(radii);
  const double outer = radii[3];
  const ShellRadii unit{radii[0] / outer, radii[1] / outer, radii[2] / outer, 1.0};
  const RealMatrix f = energy_selector_matrix(unit);

  std::vector<ShellMode> modes;
  for (const auto& pair : eig_real(k)) {
    if (std::abs(pair.value.imag()) > 1e-9 * (1.0 + std::abs(pair.value.real()))) {
      throw Error(ErrorCode::kNoConvergence, "coupling matrix produced a complex eigenvalue");
    }
    ShellMode mode;
    mode.lambda1 = pair.value.real();
    mode.eps_ratio = eps_ratio_for_lambda(mode.lambda1);
    for (std::size_t i = 0; i < 4; ++i) mode.eigenvector[i] = pair.vector[i].real();
    const auto& v = mode.eigenvector;
    mode.e_overlap = v[0] - v[1] + v[2] - v[3];
    mode.upsilon_overlap = cube(unit[0]) * v[0];
    const auto fv = multiply(f, std::span<const double>(v));
    std::copy(fv.begin(), fv.end(), mode.f_overlaps.begin());
    modes.push_back(mode);
  }
  return modes;
}

CoefficientSet shell_coefficients(const ConcentricStructure& s, const DipoleCoefficients& a0) {
  const ShellMatrices m = assemble_matrices(s);
  const auto x = solve_drive(m.p);

  // Xi^T x: suffix sums. Xi Upsilon x: prefix sums of r_j^3 x_j.
  std::array<Complex, 4> a_unit{};
  std::array<Complex, 4> b_unit{};
  Complex suffix = 0.0;
  for (std::size_t j = 4; j-- > 0;) {
    suffix += x[j];
    a_unit[j] = suffix + 1.0;
  }
  Complex prefix = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    prefix += m.upsilon(j, j) * x[j];
    b_unit[j] = prefix;
  }

  CoefficientSet out;
  out.a0 = a0;
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t mi = 0; mi < 3; ++mi) {
      out.a[j][mi] = a0[mi] * a_unit[j];
      out.b[j][mi] = a0[mi] * b_unit[j];
    }
  }
  return out;
}

double shell_energy(const ShellRadii& radii, const CoefficientSet& c) {
  validate_radii(radii);
  const auto w = energy_weights(radii);
  return w[0] * coefficient_norm_squared(c.a[1]) + w[1] * coefficient_norm_squared(c.a[3]) +
         w[2] * coefficient_norm_squared(c.b[0]) + w[3] * coefficient_norm_squared(c.b[2]);
}

double shell_energy_from_f(const ConcentricStructure& s, const DipoleCoefficients& a0) {
  const ShellMatrices m = assemble_matrices(s);
  const auto x = solve_drive(m.p);
  const auto fx = multiply(to_complex(m.f), std::span<const Complex>(x));
  const std::array<Complex, 4> f{fx[0] + 1.0, fx[1] + 1.0, fx[2], fx[3]};
  const auto w = energy_weights(s.radii);
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) total += w[i] * std::norm(f[i]);
  return total * coefficient_norm_squared(a0);
}

double shell_energy_quadrature(const ShellRadii& radii, const CoefficientSet& c,
                               EnergyIntegrand integrand, std::size_t nodes) {
  validate_radii(radii);
  // (region a-index, b-index, inner radius, outer radius) for the two shells
  struct Shell {
    std::size_t a_index, b_index;
    double lo, hi;
  };
  const std::array<Shell, 2> shells{Shell{1, 0, radii[0], radii[1]}, Shell{3, 2, radii[2], radii[3]}};

  double total = 0.0;
  for (const auto& sh : shells) {
    const QuadratureRule rule = gauss_legendre(nodes, sh.lo, sh.hi);
    for (std::size_t mi = 0; mi < 3; ++mi) {
      const Complex a = c.a[sh.a_index][mi];
      const Complex b = c.b[sh.b_index][mi];
      for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
        const double r = rule.nodes[n];
        const double r3 = r * r * r;
        double density = 0.0;
        if (integrand == EnergyIntegrand::kPotential) {
          density = std::norm(a * r + b / (r * r));
        } else {
          // |f'|^2 + l(l+1) |f / r|^2 with f = a r + b r^-2
          density = std::norm(a - 2.0 * b / r3) + 2.0 * std::norm(a + b / r3);
        }
        total += rule.weights[n] * density * r * r;
      }
    }
  }
  return total;
}

std::vector<ModeFrequency> mode_frequencies(const ShellRadii& radii, const DrudeParams& p,
                                            double eps_core) {
  p.validate();
  if (!(eps_core > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps_core must be positive");
  std::vector<ModeFrequency> out;
  for (const auto& mode : resonance_modes(radii)) {
    const double target = mode.eps_ratio * eps_core;
    ModeFrequency mf{mode, std::nullopt};
    if (target < p.eps0) mf.omega = lossless_frequency_for(p, target);
    out.push_back(mf);
  }
  return out;
}

std::vector<BlowupSample> shell_blowup_at(const ShellRadii& radii, const DrudeParams& p,
                                          double eps_core, double omega,
                                          std::span<const double> tau_grid,
                                          const DipoleCoefficients& a0) {
  check_tau_grid(tau_grid);
  std::vector<BlowupSample> out;
  out.reserve(tau_grid.size());
  for (double tau : tau_grid) {
    ConcentricStructure s;
    s.radii = radii;
    s.eps_core = eps_core;
    s.eps_shell = permittivity(p.with_tau(tau), omega);
    const double energy = shell_energy(radii, shell_coefficients(s, a0));
    out.push_back({tau, energy, tau * energy});
  }
  return out;
}

std::vector<BlowupSample> resonance_blowup_shell(const ShellRadii& radii, const DrudeParams& p,
                                                 double eps_core, std::size_t mode_index,
                                                 std::span<const double> tau_grid,
                                                 const DipoleCoefficients& a0) {
  const auto modes = mode_frequencies(radii, p, eps_core);
  if (mode_index >= modes.size()) throw Error(ErrorCode::kInvalidArgument, "mode index out of range");
  const ModeFrequency& mf = modes[mode_index];
  if (!mf.mode.excitable()) {
    throw Error(ErrorCode::kHypothesisViolated, "mode has vanishing drive or energy overlap");
  }
  if (!mf.omega) {
    throw Error(ErrorCode::kNoRealFrequency, "Drude metal never reaches this mode's permittivity");
  }
  return shell_blowup_at(radii, p, eps_core, *mf.omega, tau_grid, a0);
}

DipoleCoefficients unit_z_drive() {
  return dipole_coefficients({Complex(0.0), Complex(0.0), Complex(1.0)});
}

}  // namespace plasmod
