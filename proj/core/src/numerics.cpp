#include "plasmod/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace plasmod {
namespace {

constexpr double kPivotTolerance = 1e-14;
constexpr int kQrIterationsPerEigenvalue = 60;
constexpr int kInverseIterations = 6;

double magnitude(double x) { return std::abs(x); }
double magnitude(const Complex& x) { return std::abs(x); }

template <typename T>
double inf_norm_impl(const Matrix<T>& m) {
  double norm = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) row += magnitude(m(r, c));
    norm = std::max(norm, row);
  }
  return norm;
}

template <typename T>
std::vector<T> multiply_impl(const Matrix<T>& a, std::span<const T> x) {
  if (x.size() != a.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix/vector dimension mismatch");
  }
  std::vector<T> y(a.rows(), T{});
  for (std::size_t r = 0; r < a.rows(); ++r) {
    T acc{};
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

// In-place LU with partial pivoting. `perm[i]` is the original row stored in
// row i. Returns false (and stops) at the first pivot not exceeding `floor`.
template <typename T>
struct LuFactors {
  Matrix<T> lu;
  std::vector<std::size_t> perm;
  int swaps = 0;
};

template <typename T>
bool lu_factor(LuFactors<T>& f, double floor, bool clamp_small_pivots) {
  Matrix<T>& a = f.lu;
  const std::size_t n = a.rows();
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (magnitude(a(i, k)) > best) {
        best = magnitude(a(i, k));
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(f.perm[k], f.perm[piv]);
      ++f.swaps;
    }
    if (best <= floor) {
      if (!clamp_small_pivots) return false;
      a(k, k) = T{floor > 0.0 ? floor : std::numeric_limits<double>::min()};
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T m = a(i, k) / a(k, k);
      a(i, k) = m;
      for (std::size_t c = k + 1; c < n; ++c) a(i, c) -= m * a(k, c);
    }
  }
  return true;
}

template <typename T>
std::vector<T> lu_solve(const LuFactors<T>& f, std::span<const T> b) {
  const std::size_t n = f.lu.rows();
  std::vector<T> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < i; ++c) x[i] -= f.lu(i, c) * x[c];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t c = ii + 1; c < n; ++c) x[ii] -= f.lu(ii, c) * x[c];
    x[ii] /= f.lu(ii, ii);
  }
  return x;
}

template <typename T>
std::vector<T> solve_impl(const Matrix<T>& a, std::span<const T> b) {
  if (!a.is_square()) throw Error(ErrorCode::kInvalidArgument, "solve_linear needs a square matrix");
  if (b.size() != a.rows()) throw Error(ErrorCode::kInvalidArgument, "right-hand side length mismatch");
  const double norm = inf_norm_impl(a);
  LuFactors<T> f{a, {}, 0};
  if (norm == 0.0 || !lu_factor(f, kPivotTolerance * norm, false)) {
    throw Error(ErrorCode::kSingularMatrix, "pivot below 1e-14 * ||A||_inf");
  }
  return lu_solve(f, b);
}

template <typename T>
T determinant_impl(const Matrix<T>& a) {
  if (!a.is_square()) throw Error(ErrorCode::kInvalidArgument, "determinant needs a square matrix");
  LuFactors<T> f{a, {}, 0};
  if (!lu_factor(f, 0.0, false)) return T{0};
  T det = (f.swaps % 2 == 0) ? T{1} : T{-1};
  for (std::size_t i = 0; i < a.rows(); ++i) det *= f.lu(i, i);
  return det;
}

// Parlett-Reinsch balancing by powers of two (exact in floating point).
void balance(RealMatrix& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transforms. Entries below the subdiagonal are zeroed on exit.
void reduce_to_hessenberg(RealMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t piv = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        piv = j;
      }
    }
    if (piv != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a(piv, j), a(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(a(j, piv), a(j, m));
    }
    if (x == 0.0) continue;
    for (std::size_t i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a(i, m - 1) = y;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
    }
  }
  for (std::size_t i = 2; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
  }
}

double sign_of(double magnitude_value, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude_value) : -std::abs(magnitude_value);
}

// Francis double-shift QR on an upper Hessenberg matrix (destroyed).
std::vector<Complex> hessenberg_qr(RealMatrix& a) {
  const int n = static_cast<int>(a.rows());
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  std::vector<Complex> w(static_cast<std::size_t>(n));
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  }
  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[nn] = Complex(x + t, 0.0);
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double wv = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + wv;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            w[nn - 1] = w[nn] = Complex(x + z, 0.0);
            if (z != 0.0) w[nn] = Complex(x - wv / z, 0.0);
          } else {
            w[nn] = Complex(x + p, -z);
            w[nn - 1] = std::conj(w[nn]);
          }
          nn -= 2;
        } else {
          if (its == kQrIterationsPerEigenvalue) {
            throw Error(ErrorCode::kNoConvergence, "QR iteration budget exhausted");
          }
          if (its > 0 && its % 10 == 0) {
            // exceptional shift
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            wv = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - wv) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k + 1 != nn) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k + 1 != nn) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l < nn - 1);
  }
  return w;
}

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Rotate so the first component above the noise floor is real and positive.
void normalize_eigenvector(std::vector<Complex>& v) {
  double norm2 = 0.0;
  double vmax = 0.0;
  for (const auto& c : v) {
    norm2 += std::norm(c);
    vmax = std::max(vmax, std::abs(c));
  }
  const double norm = std::sqrt(norm2);
  for (auto& c : v) c /= norm;
  vmax /= norm;
  for (const auto& c : v) {
    if (std::abs(c) > 1e-12 * vmax) {
      const Complex phase = std::conj(c) / std::abs(c);
      for (auto& d : v) d *= phase;
      break;
    }
  }
  // Components that are pure rounding noise in the imaginary direction.
  for (auto& c : v) {
    if (std::abs(c.imag()) < 1e-15) c = Complex(c.real(), 0.0);
  }
}

std::vector<Complex> inverse_iteration(const RealMatrix& a, Complex lambda, double anorm) {
  const std::size_t n = a.rows();
  ComplexMatrix shifted = to_complex(a);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
  LuFactors<Complex> f{shifted, {}, 0};
  const double scale = std::max({anorm, std::abs(lambda), 1.0});
  lu_factor(f, std::numeric_limits<double>::epsilon() * scale, true);

  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    // deterministic start vector with no special alignment
    const double frac = std::fmod(static_cast<double>(i + 1) * std::numbers::phi, 1.0);
    v[i] = Complex(1.0 + frac, 0.0);
  }
  const ComplexMatrix ac = to_complex(a);
  std::vector<Complex> best = v;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kInverseIterations; ++it) {
    v = lu_solve(f, std::span<const Complex>(v));
    double vmax = 0.0;
    for (const auto& c : v) vmax = std::max(vmax, std::abs(c));
    if (!(vmax > 0.0) || !std::isfinite(vmax)) break;
    for (auto& c : v) c /= vmax;
    const auto av = multiply(ac, v);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(av[i] - lambda * v[i]));
    if (residual < best_residual) {
      best_residual = residual;
      best = v;
    }
    if (residual <= 1e-14 * scale) break;
  }
  normalize_eigenvector(best);
  return best;
}

void polish_root(std::span<const double> coeffs, Complex& root) {
  const std::size_t n = coeffs.size() - 1;
  for (int it = 0; it < 3; ++it) {
    Complex p = coeffs[0];
    Complex dp = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      dp = dp * root + p;
      p = p * root + coeffs[k];
    }
    if (std::abs(dp) == 0.0) return;
    const Complex candidate = root - p / dp;
    if (std::abs(poly_eval(coeffs, candidate)) < std::abs(p)) {
      root = candidate;
    } else {
      return;
    }
  }
}

}  // namespace

ComplexMatrix to_complex(const RealMatrix& m) {
  ComplexMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
  }
  return c;
}

double inf_norm(const RealMatrix& m) { return inf_norm_impl(m); }
double inf_norm(const ComplexMatrix& m) { return inf_norm_impl(m); }

double inf_norm(std::span<const Complex> v) {
  double out = 0.0;
  for (const auto& c : v) out = std::max(out, std::abs(c));
  return out;
}

double inf_norm(std::span<const double> v) {
  double out = 0.0;
  for (double c : v) out = std::max(out, std::abs(c));
  return out;
}

std::vector<Complex> multiply(const ComplexMatrix& a, std::span<const Complex> x) {
  return multiply_impl(a, x);
}

std::vector<double> multiply(const RealMatrix& a, std::span<const double> x) {
  return multiply_impl(a, x);
}

std::vector<Complex> solve_linear(const ComplexMatrix& a, std::span<const Complex> b) {
  return solve_impl(a, b);
}

std::vector<double> solve_linear(const RealMatrix& a, std::span<const double> b) {
  return solve_impl(a, b);
}

double determinant(const RealMatrix& a) { return determinant_impl(a); }
Complex determinant(const ComplexMatrix& a) { return determinant_impl(a); }

std::vector<Complex> eigenvalues_real(const RealMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::kInvalidArgument, "eigenvalues need a square matrix");
  for (double x : a.data()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "matrix has non-finite entries");
  }
  RealMatrix h = a;
  balance(h);
  reduce_to_hessenberg(h);
  auto values = hessenberg_qr(h);
  std::sort(values.begin(), values.end(), complex_less);
  return values;
}

std::vector<EigenPair> eig_real(const RealMatrix& a) {
  const auto values = eigenvalues_real(a);
  const double anorm = inf_norm(a);
  std::vector<EigenPair> pairs;
  pairs.reserve(values.size());
  for (const auto& lambda : values) {
    pairs.push_back({lambda, inverse_iteration(a, lambda, anorm)});
  }
  return pairs;
}

Complex poly_eval(std::span<const double> coeffs, Complex x) {
  Complex acc = 0.0;
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

std::vector<Complex> poly_roots(std::span<const double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::kInvalidArgument, "empty coefficient list");
  const std::size_t degree = coeffs.size() - 1;
  if (degree > kMaxPolyDegree) throw Error(ErrorCode::kInvalidArgument, "degree exceeds 16");
  const double cmax = inf_norm(coeffs);
  if (cmax == 0.0 || std::abs(coeffs[0]) < 1e-14 * cmax) {
    throw Error(ErrorCode::kDegenerateLeadingCoefficient, "leading coefficient is negligible");
  }
  if (degree == 0) return {};

  RealMatrix companion(degree, degree);
  for (std::size_t k = 0; k < degree; ++k) companion(0, k) = -coeffs[k + 1] / coeffs[0];
  for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;

  auto roots = eigenvalues_real(companion);
  for (auto& r : roots) polish_root(coeffs, r);
  std::sort(roots.begin(), roots.end(), complex_less);
  return roots;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "slope fit needs two or more paired samples");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(std::abs(x[i]));
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error(ErrorCode::kInvalidArgument, "abscissae are all equal");
  return (n * sxy - sx * sy) / denom;
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "quadrature needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const auto jd = static_cast<double>(j);
        p1 = ((2.0 * jd + 1.0) * z * p2 - jd * p3) / (jd + 1.0);
      }
      dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p1 / dp;
      if (std::abs(z - z_prev) <= 1e-15) break;
    }
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = 2.0 * half / ((1.0 - z * z) * dp * dp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace plasmod
