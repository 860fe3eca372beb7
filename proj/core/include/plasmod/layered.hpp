#pragma once

// Brute-force l = 1 solver for N concentric regions. The raw transmission
// conditions at every interface are assembled into one dense system; no
// structure of the four-interface nanoshell is used.

#include <optional>
#include <vector>

#include "plasmod/numerics.hpp"

namespace plasmod {

struct LayeredSphere {
  std::vector<double> radii;  // N - 1 interfaces, strictly increasing
  std::vector<Complex> eps;   // N regions, innermost first, host last

  void validate() const;
  std::size_t regions() const { return eps.size(); }
};

/// Potential r a Y + r^-2 b Y in one region.
struct RegionCoefficients {
  Complex a;
  Complex b;
};

/// Coefficients for every region, innermost first, with b = 0 in the core and
/// a = a0 in the host. Throws kResonantSingularity on a singular system.
std::vector<RegionCoefficients> direct_solve(const LayeredSphere& ls, Complex a0);

/// Largest relative violation of continuity or flux continuity over all
/// interfaces.
double transmission_residual(const LayeredSphere& ls, const std::vector<RegionCoefficients>& c);

/// Determinant of the homogeneous (a0 = 0) transmission system.
double transmission_determinant(const std::vector<double>& radii, const std::vector<double>& eps);

/// Layer pattern for resonance scans: an empty entry marks a metal region
/// whose permittivity is swept as ratio * host permittivity.
struct LayerTemplate {
  std::vector<double> radii;
  std::vector<std::optional<double>> dielectric_eps;
};

struct ModeScanOptions {
  double ratio_lo = -100.0;
  double ratio_hi = -0.01;
  std::size_t grid_points = 10000;
  double tolerance = 1e-10;
};

/// Real eps_metal / eps_host values, ascending, at which the lossless system
/// admits a source-free solution. Bracketing uses a grid uniform in
/// log|ratio|, refined by bisection.
std::vector<double> mode_count_scan(const LayerTemplate& t, const ModeScanOptions& options = {});

}  // namespace plasmod
