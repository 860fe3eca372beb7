// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "oracles.hpp"
#include "plasmod/green.hpp"
#include "plasmod/heat.hpp"
#include "plasmod/layered.hpp"
#include "plasmod/nanoshell.hpp"
#include "plasmod/sphere.hpp"
#include "run.hpp"
#include "published_modes.hpp"

namespace {

using namespace plasmod;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Outcome published_mode_regression() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& row : reference::kPublishedModes) {
    const auto modes = resonance_modes(row.radii);
    o.require(modes.size() == 4, "mode count");
    for (std::size_t i = 0; i < 4 && i < modes.size(); ++i) {
      worst = std::max(worst, std::abs(modes[i].lambda1 - row.lambda1[i]));
      worst = std::max(worst, std::abs(modes[i].eps_ratio - row.eps_ratio[i]));
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= reference::kPublishedTolerance, "max deviation " + sci(worst));
  o.require(elapsed < 1.0, "runtime " + sci(elapsed) + " s");
  o.detail = "16 pairs, max deviation " + sci(worst) + ", " + sci(elapsed) + " s" + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome quartic_consistency() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::vector<ShellRadii> cases;
  for (const auto& row : reference::kPublishedModes) cases.push_back(row.radii);
  for (int i = 0; i < 100; ++i) cases.push_back(oracle::random_radii(rng));
  double worst = 0.0;
  for (const auto& r : cases) {
    auto roots = poly_roots(resonance_quartic_coeffs(r));
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    const auto eig = eigenvalues_real(coupling_matrix(r));
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(roots[i] - eig[i]));
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= 1e-10, "max gap " + sci(worst));
  o.require(elapsed < 1.0, "runtime " + sci(elapsed) + " s");
  o.detail = "104 radius tuples, max gap " + sci(worst) + ", " + sci(elapsed) + " s" + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome sphere_theorem() {
  Outcome o;
  const DrudeParams p{1.0, 1.0, 0.0};
  std::vector<double> grid;
  for (int k = 0; k <= 16; ++k) grid.push_back(std::pow(10.0, -2.0 - 0.25 * k));
  const auto fit = [&](double omega) {
    const auto samples = resonance_blowup_scan(p, omega, 1.0, {0.0, 0.0, 1.0}, grid);
    std::vector<double> t, e;
    for (const auto& s : samples) {
      t.push_back(s.tau);
      e.push_back(s.energy);
    }
    return std::pair{loglog_slope(t, e), samples};
  };
  const auto [on_slope, on] = fit(p.omega_p / std::sqrt(3.0));
  const auto [off_slope, off] = fit(10.0 * p.omega_p);
  bool monotone = true;
  for (std::size_t i = 1; i < on.size(); ++i) monotone = monotone && on[i].tau_times_energy > on[i - 1].tau_times_energy;
  o.require(std::abs(on_slope + 2.0) <= 0.05, "resonant slope " + sci(on_slope));
  o.require(monotone, "tau*E not monotone");
  o.require(std::abs(off_slope) <= 0.05, "off-resonance slope " + sci(off_slope));
  const std::string summary = "slope " + sci(on_slope) + " at wp/sqrt3, " + sci(off_slope) + " at 10wp";
  o.detail = summary + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome shell_theorem() {
  Outcome o;
  const ShellRadii radii{4.0, 5.0, 9.0, 10.0};
  const DrudeParams p{1.0, 1.0, 0.0};
  const std::vector<double> grid{1e-3, 1e-4, 1e-5, 1e-6};
  const auto a0 = unit_z_drive();
  const auto freqs = mode_frequencies(radii, p, 1.0);
  double min_growth = std::numeric_limits<double>::infinity();
  int tested = 0;
  for (std::size_t m = 0; m < freqs.size(); ++m) {
    if (!freqs[m].omega || !freqs[m].mode.excitable()) continue;
    const auto s = resonance_blowup_shell(radii, p, 1.0, m, grid, a0);
    min_growth = std::min(min_growth, s.back().tau_times_energy / s.front().tau_times_energy);
    ++tested;
  }
  double max_off = 0.0;
  std::vector<double> omegas;
  for (const auto& f : freqs) {
    if (f.omega) omegas.push_back(*f.omega);
  }
  std::sort(omegas.begin(), omegas.end());
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    const auto s = shell_blowup_at(radii, p, 1.0, 0.5 * (omegas[i - 1] + omegas[i]), grid, a0);
    max_off = std::max(max_off, s.back().tau_times_energy / s.front().tau_times_energy);
  }
  o.require(tested > 0, "no eligible mode");
  o.require(min_growth > 1e2, "on-mode growth " + sci(min_growth));
  o.require(max_off < 2.0, "off-mode ratio " + sci(max_off));
  o.detail = std::to_string(tested) + " modes, min growth " + sci(min_growth) + ", max off-mode ratio " +
             sci(max_off) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 4.0);
  const auto a0 = unit_z_drive();
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ConcentricStructure s;
    s.radii = oracle::random_radii(rng);
    s.eps_core = 0.5 + std::abs(g(rng));
    s.eps_shell = Complex(g(rng), std::abs(g(rng)) + 0.01);
    const auto shell = shell_coefficients(s, a0);
    const LayeredSphere ls{{s.radii.begin(), s.radii.end()},
                           {s.eps_core, s.eps_shell, s.eps_core, s.eps_shell, s.eps_core}};
    const auto direct = direct_solve(ls, a0[1]);
    for (std::size_t j = 0; j < 4; ++j) {
      worst = std::max(worst, std::abs(direct[j].a - shell.a[j][1]) / std::abs(shell.a[j][1]));
      worst = std::max(worst, std::abs(direct[j + 1].b - shell.b[j][1]) / std::abs(shell.b[j][1]));
    }
  }
  double worst_sphere = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double r = 0.1 + std::abs(g(rng));
    const Complex eps0 = 0.5 + std::abs(g(rng));
    const Complex eps1(g(rng), std::abs(g(rng)));
    const auto c = direct_solve(LayeredSphere{{r}, {eps1, eps0}}, 1.0);
    const Complex a_in = 3.0 * eps0 / (2.0 * eps0 + eps1);
    const Complex b_out = (eps0 - eps1) / (2.0 * eps0 + eps1) * r * r * r;
    worst_sphere = std::max(worst_sphere, std::abs(c[0].a - a_in) / std::abs(a_in));
    worst_sphere = std::max(worst_sphere, std::abs(c[1].b - b_out) / std::abs(b_out));
  }
  o.require(worst <= 1e-10, "nanoshell gap " + sci(worst));
  o.require(worst_sphere <= 1e-12, "sphere gap " + sci(worst_sphere));
  o.detail = "nanoshell rel gap " + sci(worst) + ", sphere rel gap " + sci(worst_sphere) + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome heat_model() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  double worst_inv = 0.0, worst_lap = 0.0, worst_ext = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const HeatScene scene{u(rng), u(rng), 0.1 * u(rng), u(rng)};
    const auto prof = steady_profile(scene);
    const double r = scene.r_np;
    const double inside = prof.a_coeff - scene.q * r * r / (6.0 * scene.sigma_np);
    worst_inv = std::max(worst_inv, std::abs(inside - prof.b_coeff / r) / std::abs(inside));
    const double flux_in = scene.q * r / 3.0;
    const double flux_out = scene.sigma_matrix * prof.b_coeff / (r * r);
    worst_inv = std::max(worst_inv, std::abs(flux_in - flux_out) / flux_in);

    const auto t = [&](double x) { return temperature_at(prof, x); };
    const double h = 1e-4 * r;
    for (int i = 1; i < 1000; ++i) {
      const double x = r * i / 1000.0;
      if (x - h <= 0.0 || x + h >= r) continue;
      worst_lap = std::max(worst_lap, std::abs(scene.sigma_np * oracle::radial_laplacian(t, x, h) + scene.q) / scene.q);
    }
    for (int i = 1; i <= 100; ++i) {
      const double x = r * (1.0 + 0.1 * i);
      const double ref = scene.volume() * scene.q / (4.0 * std::numbers::pi * scene.sigma_matrix * x);
      worst_ext = std::max(worst_ext, std::abs(t(x) - ref) / ref);
    }
  }
  o.require(worst_inv <= 1e-12, "transmission " + sci(worst_inv));
  o.require(worst_lap <= 1e-6, "laplacian " + sci(worst_lap));
  o.require(worst_ext <= 1e-12, "exterior " + sci(worst_ext));
  o.detail = "transmission " + sci(worst_inv) + ", laplacian " + sci(worst_lap) + ", exterior " + sci(worst_ext) +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome polarization_lemma() {
  Outcome o;
  bool exact = true;
  for (double eps0 : {1.0, 2.25, 3.7, 0.01, 13.0}) {
    const auto l = contrast(Complex(-2.0 * eps0), Complex(eps0));
    exact = exact && l && l->real() == 1.0 / 6.0 && l->imag() == 0.0;
  }
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 3.0);
  double worst = 0.0;
  const double v = 4.0 * std::numbers::pi / 3.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Complex eps1(g(rng), g(rng));
    const Complex a = polarization_from_contrast(contrast(eps1, 1.0), v);
    const Complex b = polarization_from_permittivity(eps1, 1.0, v);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  o.require(exact, "contrast is not exactly 1/6");
  o.require(worst <= 1e-10, "closed forms differ by " + sci(worst));
  o.detail = std::string("lambda = 1/6 ") + (exact ? "exact" : "inexact") + ", closed-form gap " + sci(worst) +
             (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome dyadic_green_checks() {
  Outcome o;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  GreenParams g;
  g.k = Complex(1.3, 0.0);
  g.source = {0.2, -0.1, 0.4};
  double worst_fd = 0.0, worst_sym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Point3 x{};
    do {
      x = {u(rng), u(rng), u(rng)};
    } while (distance(x, g.source) < 0.2);
    const Point3 d{x[0] - g.source[0], x[1] - g.source[1], x[2] - g.source[2]};
    const auto an = helmholtz_hessian(g.k, d);
    const auto fd = oracle::hessian_fd(g.k, d, 1e-5 * distance(x, g.source));
    double scale = 0.0, diff = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        scale = std::max(scale, std::abs(an[i][j]));
        diff = std::max(diff, std::abs(an[i][j] - fd[i][j]));
      }
    }
    worst_fd = std::max(worst_fd, diff / scale);
    const auto t = dyadic_green(g, x);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) worst_sym = std::max(worst_sym, std::abs(t[i][j] - t[j][i]) / std::abs(t[i][i]));
    }
  }
  SphereScene s;
  s.eps_particle = Complex(-3.0, 0.2);
  const auto pt = sphere_polarization_tensors(s, Complex(3.0));
  const Vec3 e_in{Complex(0.0), Complex(0.0), Complex(1.0)};
  const Vec3 h_in{Complex(0.0), Complex(1.0), Complex(0.0)};
  bool exact = true;
  for (double delta : {0.1, 0.03, 1e-4}) {
    g.delta = delta;
    const Vec3 a = far_field_scattered(g, pt, e_in, h_in, {3.0, 1.0, -2.0}, 0.9);
    g.delta = 2.0 * delta;
    const Vec3 b = far_field_scattered(g, pt, e_in, h_in, {3.0, 1.0, -2.0}, 0.9);
    for (int i = 0; i < 3; ++i) exact = exact && b[i] == 8.0 * a[i];
  }
  o.require(worst_fd <= 1e-6, "hessian vs FD " + sci(worst_fd));
  o.require(worst_sym <= 1e-12, "asymmetry " + sci(worst_sym));
  o.require(exact, "delta^3 scaling not exact");
  o.detail = "hessian vs FD " + sci(worst_fd) + ", asymmetry " + sci(worst_sym) + ", delta^3 scaling " +
             (exact ? "exact" : "inexact") + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome cli_determinism() {
  namespace fs = std::filesystem;
  Outcome o;
  const auto t0 = Clock::now();
  const fs::path dir = fs::temp_directory_path() / ("plasmod_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int runs = 0;
  for (const auto& row : reference::kPublishedModes) {
    std::ostringstream cfg;
    cfg << R"({"kind": "nanoshell", "geometry": {"radii": [)" << row.radii[0] << "," << row.radii[1] << ","
        << row.radii[2] << "," << row.radii[3] << R"(]}, "materials": {"shell": {"drude": {"omega_p": 1}}}})";
    const fs::path path = dir / ("shell_" + std::to_string(runs) + ".json");
    std::ofstream(path) << cfg.str();
    std::string reference_body;
    for (int rep = 0; rep < 5; ++rep) {
      const fs::path out = dir / "out.csv";
      std::ostringstream sink, err;
      const int code = cli::run({"shell-modes", path.string(), out.string(), "csv"}, sink, err);
      std::ifstream in(out, std::ios::binary);
      std::stringstream text;
      text << in.rdbuf();
      const std::string body = cli::csv_body(text.str());
      o.require(code == 0, "exit code " + std::to_string(code));
      if (rep == 0) reference_body = body;
      o.require(body == reference_body, "bodies differ");
      ++runs;
    }
  }
  fs::remove_all(dir);
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 10.0, "runtime " + sci(elapsed) + " s");
  o.detail = std::to_string(runs) + " runs byte-identical, " + sci(elapsed) + " s" + (o.pass ? "" : " | " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"published mode regression", published_mode_regression},
      {"quartic/eigenvalue consistency", quartic_consistency},
      {"sphere resonance blow-up", sphere_theorem},
      {"shell resonance blow-up", shell_theorem},
      {"oracle equivalence", oracle_equivalence},
      {"heat model", heat_model},
      {"polarization/eigenvalue lemma", polarization_lemma},
      {"dyadic Green function", dyadic_green_checks},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
