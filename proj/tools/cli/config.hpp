#pragma once

// JSON run configuration shared by all subcommands.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "plasmod/drude.hpp"

namespace plasmod::cli {

/// Bad configuration. `pointer` is a JSON pointer to the offending value, or
/// empty when the document itself is unreadable.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string pointer, const std::string& message);
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

enum class Kind { kSphere, kNanoshell, kLayered };

struct Material {
  enum class Type { kFixed, kDrude, kMetal } type = Type::kFixed;
  Complex eps{1.0, 0.0};
  DrudeParams drude;

  // Permittivity at omega; a fixed material ignores omega.
  Complex at(double omega) const;
  bool operator==(const Material&) const = default;
};

// A list of sample points, either explicit or generated, optionally in units of
// a reference value ("omega_p" for frequencies and losses, "r_np" for radii).
struct Grid {
  std::vector<double> values;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 0;
  bool log_spacing = false;
  std::string unit = "absolute";

  std::vector<double> expand(double reference) const;
  bool operator==(const Grid&) const = default;
};

struct Quantity {
  double value = 0.0;
  std::string unit = "absolute";

  double resolve(double reference) const { return unit == "absolute" ? value : value * reference; }
  bool operator==(const Quantity&) const = default;
};

struct Geometry {
  std::vector<double> radii;
  std::string units = "m";

  double scale() const;
  bool operator==(const Geometry&) const = default;
};

struct Materials {
  std::optional<Material> particle;  // sphere
  std::optional<Material> host;      // sphere
  std::optional<Material> core;      // nanoshell
  std::optional<Material> shell;     // nanoshell
  std::vector<Material> regions;     // layered
  std::optional<Material> metal;     // layered, Drude model of the metal regions
  bool operator==(const Materials&) const = default;
};

struct Drive {
  std::vector<double> amplitude{0.0, 0.0, 1.0};
  std::optional<Quantity> omega;
  std::optional<Grid> omega_grid;
  std::optional<Grid> tau_grid;
  std::optional<std::size_t> mode;
  double speed = 299792458.0;
  bool operator==(const Drive&) const = default;
};

struct Heat {
  double sigma_matrix = 1.0;
  double sigma_np = 1.0;
  std::optional<double> q;
  std::optional<Grid> r_grid;
  bool operator==(const Heat&) const = default;
};

struct StructureConfig {
  Kind kind = Kind::kSphere;
  Geometry geometry;
  Materials materials;
  Drive drive;
  std::optional<Heat> heat;
  bool operator==(const StructureConfig&) const = default;
};

StructureConfig parse_config(const nlohmann::json& doc);
StructureConfig parse_config_text(const std::string& text);
StructureConfig load_config(const std::string& path);

/// Canonical JSON form; parse_config(to_json(c)) == c.
nlohmann::json to_json(const StructureConfig& c);

std::string to_string(Kind kind);

}  // namespace plasmod::cli
