#include "plasmod/layered.hpp"

#include <algorithm>
#include <cmath>

namespace plasmod {
namespace {

// Unknowns: a_1 .. a_{N-1} then b_2 .. b_N (1-based region numbers).
template <typename T>
struct TransmissionSystem {
  Matrix<T> matrix;
  std::vector<T> rhs;
};

template <typename T>
TransmissionSystem<T> assemble(const std::vector<double>& radii, const std::vector<T>& eps, T a0) {
  const std::size_t interfaces = radii.size();
  const std::size_t n = 2 * interfaces;
  TransmissionSystem<T> sys{Matrix<T>(n, n), std::vector<T>(n, T{})};
  const auto col_a = [](std::size_t region) { return region - 1; };
  const auto col_b = [&](std::size_t region) { return interfaces + region - 2; };

  for (std::size_t j = 1; j <= interfaces; ++j) {
    const double r = radii[j - 1];
    const double r_m2 = 1.0 / (r * r);
    const double r_m3 = r_m2 / r;
    const std::size_t cont = 2 * (j - 1);
    const std::size_t flux = cont + 1;
    const T eps_in = eps[j - 1];
    const T eps_out = eps[j];

    // a_{j+1} r + b_{j+1} r^-2 - a_j r - b_j r^-2 = 0
    if (j + 1 <= interfaces) {
      sys.matrix(cont, col_a(j + 1)) += r;
      sys.matrix(flux, col_a(j + 1)) += eps_out;
    } else {
      sys.rhs[cont] -= a0 * r;
      sys.rhs[flux] -= eps_out * a0;
    }
    sys.matrix(cont, col_b(j + 1)) += r_m2;
    sys.matrix(cont, col_a(j)) -= r;
    // eps_{j+1} (a_{j+1} - 2 b_{j+1} r^-3) - eps_j (a_j - 2 b_j r^-3) = 0
    sys.matrix(flux, col_b(j + 1)) += -2.0 * eps_out * r_m3;
    sys.matrix(flux, col_a(j)) -= eps_in;
    if (j >= 2) {
      sys.matrix(cont, col_b(j)) -= r_m2;
      sys.matrix(flux, col_b(j)) += 2.0 * eps_in * r_m3;
    }
  }
  return sys;
}

void validate_radii_list(const std::vector<double>& radii) {
  if (radii.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one interface");
  if (2 * radii.size() > kMaxMatrixDim) throw Error(ErrorCode::kInvalidArgument, "too many layers");
  if (!(radii[0] > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radii must be positive");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be finite and strictly increasing");
    }
  }
}

}  // namespace

void LayeredSphere::validate() const {
  validate_radii_list(radii);
  if (eps.size() != radii.size() + 1) {
    throw Error(ErrorCode::kInvalidArgument, "need one permittivity per region");
  }
  if (!(eps.back().real() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "host permittivity must have positive real part");
  }
}

std::vector<RegionCoefficients> direct_solve(const LayeredSphere& ls, Complex a0) {
  ls.validate();
  const auto sys = assemble<Complex>(ls.radii, ls.eps, a0);
  std::vector<Complex> x;
  try {
    x = solve_linear(sys.matrix, sys.rhs);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kSingularMatrix) {
      throw Error(ErrorCode::kResonantSingularity, "transmission system is singular");
    }
    throw;
  }
  const std::size_t interfaces = ls.radii.size();
  std::vector<RegionCoefficients> out(ls.regions());
  for (std::size_t region = 1; region <= ls.regions(); ++region) {
    auto& c = out[region - 1];
    c.a = region <= interfaces ? x[region - 1] : a0;
    c.b = region >= 2 ? x[interfaces + region - 2] : Complex(0.0);
  }
  return out;
}

double transmission_residual(const LayeredSphere& ls, const std::vector<RegionCoefficients>& c) {
  double worst = 0.0;
  for (std::size_t j = 0; j < ls.radii.size(); ++j) {
    const double r = ls.radii[j];
    const double r_m2 = 1.0 / (r * r);
    const double r_m3 = r_m2 / r;
    const auto& in = c[j];
    const auto& out = c[j + 1];
    const Complex cont_l = out.a * r + out.b * r_m2;
    const Complex cont_r = in.a * r + in.b * r_m2;
    const Complex flux_l = ls.eps[j + 1] * (out.a - 2.0 * out.b * r_m3);
    const Complex flux_r = ls.eps[j] * (in.a - 2.0 * in.b * r_m3);
    const double cont_scale = std::abs(out.a * r) + std::abs(out.b * r_m2) + std::abs(in.a * r) +
                              std::abs(in.b * r_m2);
    const double flux_scale = std::abs(ls.eps[j + 1]) * (std::abs(out.a) + 2.0 * std::abs(out.b * r_m3)) +
                              std::abs(ls.eps[j]) * (std::abs(in.a) + 2.0 * std::abs(in.b * r_m3));
    if (cont_scale > 0.0) worst = std::max(worst, std::abs(cont_l - cont_r) / cont_scale);
    if (flux_scale > 0.0) worst = std::max(worst, std::abs(flux_l - flux_r) / flux_scale);
  }
  return worst;
}

double transmission_determinant(const std::vector<double>& radii, const std::vector<double>& eps) {
  validate_radii_list(radii);
  if (eps.size() != radii.size() + 1) {
    throw Error(ErrorCode::kInvalidArgument, "need one permittivity per region");
  }
  return determinant(assemble<double>(radii, eps, 0.0).matrix);
}

std::vector<double> mode_count_scan(const LayerTemplate& t, const ModeScanOptions& options) {
  validate_radii_list(t.radii);
  if (t.dielectric_eps.size() != t.radii.size() + 1) {
    throw Error(ErrorCode::kInvalidArgument, "need one layer entry per region");
  }
  if (!t.dielectric_eps.back() || !(*t.dielectric_eps.back() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "host must be a dielectric with positive permittivity");
  }
  if (!(options.ratio_lo < options.ratio_hi) || !(options.ratio_hi < 0.0) || options.grid_points < 2) {
    throw Error(ErrorCode::kInvalidArgument, "scan bracket must be a negative interval");
  }
  const double host = *t.dielectric_eps.back();

  const auto det_at = [&](double ratio) {
    std::vector<double> eps;
    eps.reserve(t.dielectric_eps.size());
    for (const auto& layer : t.dielectric_eps) eps.push_back(layer ? *layer : ratio * host);
    return transmission_determinant(t.radii, eps);
  };

  // Ascending ratios: from ratio_lo (most negative) towards ratio_hi.
  const double log_hi = std::log(-options.ratio_lo);
  const double log_lo = std::log(-options.ratio_hi);
  const std::size_t n = options.grid_points;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n - 1);
    grid[i] = -std::exp(log_hi + s * (log_lo - log_hi));
  }

  std::vector<double> roots;
  double x_prev = grid[0];
  double d_prev = det_at(x_prev);
  if (d_prev == 0.0) roots.push_back(x_prev);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = grid[i];
    const double d = det_at(x);
    if (d == 0.0) {
      roots.push_back(x);
    } else if (d_prev != 0.0 && std::signbit(d) != std::signbit(d_prev)) {
      double lo = x_prev;
      double hi = x;
      double d_lo = d_prev;
      for (int it = 0; it < 200 && hi - lo > options.tolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double d_mid = det_at(mid);
        if (d_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if (std::signbit(d_mid) == std::signbit(d_lo)) {
          lo = mid;
          d_lo = d_mid;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    d_prev = d;
  }
  return roots;
}

}  // namespace plasmod
