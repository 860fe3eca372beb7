#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <limits>
#include <numbers>

#include "plasmod/harmonics.hpp"
#include "plasmod/heat.hpp"
#include "plasmod/layered.hpp"
#include "plasmod/nanoshell.hpp"
#include "plasmod/sphere.hpp"

namespace plasmod::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec3 amplitude(const StructureConfig& c) {
  return {Complex(c.drive.amplitude[0]), Complex(c.drive.amplitude[1]), Complex(c.drive.amplitude[2])};
}

const DrudeParams& require_drude(const std::optional<Material>& m, const std::string& path,
                                 const std::string& why) {
  if (!m || m->type != Material::Type::kDrude) throw ConfigError(path, why + " needs a Drude material");
  return m->drude;
}

double host_eps(const StructureConfig& c) {
  if (c.materials.host) return c.materials.host->eps.real();
  if (c.materials.particle && c.materials.particle->type == Material::Type::kDrude) {
    return c.materials.particle->drude.eps0;
  }
  return 1.0;
}

double core_eps(const StructureConfig& c) { return c.materials.core ? c.materials.core->eps.real() : 1.0; }

void require_kind(const StructureConfig& c, std::initializer_list<Kind> kinds, const std::string& command) {
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) {
    throw ConfigError("/kind", command + " does not support " + to_string(c.kind));
  }
}

ShellRadii shell_radii(const std::vector<double>& r, double scale) {
  return {r[0] * scale, r[1] * scale, r[2] * scale, r[3] * scale};
}

SphereScene sphere_scene(const StructureConfig& c, Complex eps_particle) {
  SphereScene s;
  s.r_np = c.geometry.radii[0] * c.geometry.scale();
  s.eps_matrix = host_eps(c);
  s.eps_particle = eps_particle;
  s.e0 = amplitude(c);
  return s;
}

// Runs one evaluation, turning resonance singularities into a flagged row.
template <typename F>
std::pair<double, std::string> guarded(F fn) {
  try {
    return {fn(), "ok"};
  } catch (const Error& e) {
    if (!is_singularity(e.code())) throw;
    return {kNaN, "singular"};
  }
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// d log E / d log tau from neighbouring rows, one-sided at the ends.
std::vector<double> local_slopes(const std::vector<double>& tau, const std::vector<double>& energy) {
  const std::size_t n = tau.size();
  std::vector<double> out(n, kNaN);
  const auto usable = [&](std::size_t i) { return tau[i] > 0.0 && energy[i] > 0.0 && std::isfinite(energy[i]); };
  for (std::size_t i = 0; i < n; ++i) {
    if (!usable(i)) continue;
    const std::size_t lo = (i > 0 && usable(i - 1)) ? i - 1 : i;
    const std::size_t hi = (i + 1 < n && usable(i + 1)) ? i + 1 : i;
    if (lo == hi) continue;
    out[i] = (std::log(energy[hi]) - std::log(energy[lo])) / (std::log(tau[hi]) - std::log(tau[lo]));
  }
  return out;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void stamp(SweepResult& r, const StructureConfig& c, const std::string& command) {
  std::vector<std::pair<std::string, std::string>> head{{"tool", std::string("plasmod ") + kVersion},
                                                        {"command", command},
                                                        {"timestamp", timestamp()},
                                                        {"config", to_json(c).dump()}};
  r.metadata.insert(r.metadata.begin(), head.begin(), head.end());
}

SweepResult cmd_sphere_resonance(const StructureConfig& c) {
  require_kind(c, {Kind::kSphere}, "sphere-resonance");
  const DrudeParams& p = require_drude(c.materials.particle, "/materials/particle", "sphere-resonance");

  std::vector<double> omegas;
  if (c.drive.omega_grid) {
    omegas = c.drive.omega_grid->expand(p.omega_p);
  } else if (c.drive.omega) {
    omegas = {c.drive.omega->resolve(p.omega_p)};
  } else {
    throw ConfigError("/drive", "sphere-resonance needs omega_grid or omega");
  }
  const std::vector<double> taus = c.drive.tau_grid ? c.drive.tau_grid->expand(p.omega_p) : std::vector<double>{p.tau};
  for (double w : omegas) {
    if (!(w > 0.0)) throw ConfigError("/drive/omega_grid", "frequencies must be positive");
  }
  for (double t : taus) {
    if (t < 0.0) throw ConfigError("/drive/tau_grid", "losses must not be negative");
  }

  struct Point {
    double omega, tau;
  };
  std::vector<Point> points;
  for (double w : sorted_unique(omegas)) {
    for (double t : sorted_unique(taus)) points.push_back({w, t});
  }

  SweepResult r;
  r.columns = {"omega", "tau", "energy", "tau_times_energy", "status"};
  const auto rows = parallel_map<std::vector<Cell>>(points.size(), [&](std::size_t i) {
    const auto [w, t] = points[i];
    const auto [energy, status] = guarded([&] { return sphere_energy(sphere_scene(c, permittivity(p.with_tau(t), w))); });
    return std::vector<Cell>{w, t, energy, t * energy, status};
  });
  r.rows = rows;

  const double eps_host = host_eps(c);
  const double omega_res = lossless_frequency_for(p, -2.0 * eps_host);
  r.add_meta("resonance_omega", omega_res);
  r.add_meta("resonance_wavelength", 2.0 * std::numbers::pi * c.drive.speed / omega_res);
  return r;
}

SweepResult cmd_shell_modes(const StructureConfig& c) {
  require_kind(c, {Kind::kNanoshell, Kind::kLayered}, "shell-modes");
  SweepResult r;

  if (c.kind == Kind::kNanoshell) {
    // Mode data depend on radius ratios only, so the raw radii are used.
    const ShellRadii radii = shell_radii(c.geometry.radii, 1.0);
    r.columns = {"lambda1", "eps_ratio", "e_overlap", "upsilon_overlap", "omega"};
    std::vector<ModeFrequency> modes;
    if (c.materials.shell && c.materials.shell->type == Material::Type::kDrude) {
      modes = mode_frequencies(radii, c.materials.shell->drude, core_eps(c));
    } else {
      for (const auto& m : resonance_modes(radii)) modes.push_back({m, std::nullopt});
    }
    for (const auto& mf : modes) {
      const ShellMode& m = mf.mode;
      r.rows.push_back({m.lambda1, m.eps_ratio, m.e_overlap, m.upsilon_overlap, mf.omega.value_or(kNaN)});
    }
    return r;
  }

  LayerTemplate t;
  t.radii = c.geometry.radii;
  for (const auto& m : c.materials.regions) {
    if (m.type == Material::Type::kMetal) {
      t.dielectric_eps.push_back(std::nullopt);
    } else if (m.type == Material::Type::kFixed && m.eps.imag() == 0.0 && m.eps.real() > 0.0) {
      t.dielectric_eps.push_back(m.eps.real());
    } else {
      throw ConfigError("/materials/regions", "mode scans need \"metal\" or real positive dielectric regions");
    }
  }
  const double host = c.materials.regions.back().eps.real();
  r.columns = {"eps_ratio", "omega"};
  for (double ratio : mode_count_scan(t)) {
    double omega = kNaN;
    if (c.materials.metal && c.materials.metal->type == Material::Type::kDrude &&
        ratio * host < c.materials.metal->drude.eps0) {
      omega = lossless_frequency_for(c.materials.metal->drude, ratio * host);
    }
    r.rows.push_back({ratio, omega});
  }
  r.add_meta("mode_count", std::to_string(r.rows.size()));
  return r;
}

SweepResult cmd_heat_profile(const StructureConfig& c) {
  require_kind(c, {Kind::kSphere}, "heat-profile");
  if (!c.heat) throw ConfigError("/heat", "heat-profile needs a heat block");
  if (!c.heat->r_grid) throw ConfigError("/heat/r_grid", "heat-profile needs an r_grid");

  const double r_np = c.geometry.radii[0] * c.geometry.scale();
  double q = 0.0;
  if (c.heat->q) {
    q = *c.heat->q;
  } else {
    if (!c.materials.particle) throw ConfigError("/materials/particle", "needed to compute the heat source");
    const double omega_p = c.materials.particle->type == Material::Type::kDrude ? c.materials.particle->drude.omega_p : 1.0;
    if (!c.drive.omega) throw ConfigError("/drive/omega", "needed to compute the heat source");
    const double omega = c.drive.omega->resolve(omega_p);
    q = heat_intensity(sphere_scene(c, c.materials.particle->at(omega)), omega);
  }

  const HeatScene scene{c.heat->sigma_matrix, c.heat->sigma_np, r_np, q};
  const TemperatureProfile prof = steady_profile(scene);
  std::vector<double> radii = c.heat->r_grid->expand(r_np);
  for (double x : radii) {
    if (x < 0.0) throw ConfigError("/heat/r_grid", "radii must not be negative");
  }
  radii = sorted_unique(radii);

  SweepResult r;
  r.columns = {"r", "T"};
  for (double x : radii) r.rows.push_back({x, temperature_at(prof, x)});
  r.add_meta("Q", q);
  r.add_meta("A", prof.a_coeff);
  r.add_meta("B", prof.b_coeff);
  return r;
}

SweepResult cmd_blowup_scan(const StructureConfig& c) {
  require_kind(c, {Kind::kSphere, Kind::kNanoshell}, "blowup-scan");
  if (!c.drive.tau_grid) throw ConfigError("/drive/tau_grid", "blowup-scan needs a tau_grid");

  SweepResult r;
  std::function<double(double)> energy_at;
  double omega = 0.0;
  double omega_p = 0.0;

  if (c.kind == Kind::kSphere) {
    const DrudeParams& p = require_drude(c.materials.particle, "/materials/particle", "blowup-scan");
    omega_p = p.omega_p;
    omega = c.drive.omega ? c.drive.omega->resolve(p.omega_p) : lossless_frequency_for(p, -2.0 * host_eps(c));
    energy_at = [&c, p, omega](double tau) {
      return sphere_energy(sphere_scene(c, permittivity(p.with_tau(tau), omega)));
    };
  } else {
    const DrudeParams& p = require_drude(c.materials.shell, "/materials/shell", "blowup-scan");
    omega_p = p.omega_p;
    const ShellRadii radii = shell_radii(c.geometry.radii, c.geometry.scale());
    const double eps_core = core_eps(c);
    if (c.drive.mode) {
      const auto modes = mode_frequencies(radii, p, eps_core);
      if (*c.drive.mode >= modes.size()) throw ConfigError("/drive/mode", "mode index out of range");
      const ModeFrequency& mf = modes[*c.drive.mode];
      if (!mf.mode.excitable()) {
        throw Error(ErrorCode::kHypothesisViolated,
                    "mode " + std::to_string(*c.drive.mode) + " has vanishing drive or energy overlap");
      }
      if (!mf.omega) throw Error(ErrorCode::kNoRealFrequency, "no real Drude frequency for the selected mode");
      omega = *mf.omega;
      r.add_meta("mode_lambda1", mf.mode.lambda1);
      r.add_meta("mode_eps_ratio", mf.mode.eps_ratio);
    } else if (c.drive.omega) {
      omega = c.drive.omega->resolve(p.omega_p);
    } else {
      throw ConfigError("/drive", "blowup-scan on a nanoshell needs mode or omega");
    }
    const DipoleCoefficients a0 = dipole_coefficients(amplitude(c));
    energy_at = [radii, eps_core, p, omega, a0](double tau) {
      ConcentricStructure s;
      s.radii = radii;
      s.eps_core = eps_core;
      s.eps_shell = permittivity(p.with_tau(tau), omega);
      return shell_energy(radii, shell_coefficients(s, a0));
    };
  }

  const std::vector<double> taus = sorted_unique(c.drive.tau_grid->expand(omega_p));
  for (double t : taus) {
    if (t < 0.0) throw ConfigError("/drive/tau_grid", "losses must not be negative");
  }
  const auto results = parallel_map<std::pair<double, std::string>>(
      taus.size(), [&](std::size_t i) { return guarded([&] { return energy_at(taus[i]); }); });

  std::vector<double> energies;
  for (const auto& [e, status] : results) energies.push_back(e);
  const auto slopes = local_slopes(taus, energies);

  r.columns = {"tau", "energy", "tau_times_energy", "local_loglog_slope", "status"};
  for (std::size_t i = 0; i < taus.size(); ++i) {
    r.rows.push_back({taus[i], energies[i], taus[i] * energies[i], slopes[i], results[i].second});
  }
  r.metadata.insert(r.metadata.begin(), {"omega", format_number(omega)});
  return r;
}

}  // namespace plasmod::cli
