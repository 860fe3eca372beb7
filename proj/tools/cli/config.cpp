#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace plasmod::cli {

using nlohmann::json;

ConfigError::ConfigError(std::string pointer, const std::string& message)
    : std::runtime_error(pointer.empty() ? message : pointer + ": " + message),
      pointer_(std::move(pointer)) {}

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

// Walks one JSON object, remembering which keys were read so leftovers can
// be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_.empty() ? "/" : path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) throw ConfigError(join(path_, key), "required field is missing");
    return *v;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) throw ConfigError(join(path_, item.key()), "unknown field");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) throw ConfigError(path, "must be positive");
  return v;
}

double nonnegative(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (v < 0.0) throw ConfigError(path, "must not be negative");
  return v;
}

std::string string_in(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  const std::string s = j.get<std::string>();
  std::string options;
  for (const char* a : allowed) {
    if (s == a) return s;
    options += options.empty() ? a : std::string(", ") + a;
  }
  throw ConfigError(path, "expected one of " + options);
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
  return out;
}

Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return number(j, path);
  const auto v = number_array(j, path);
  if (v.size() != 2) throw ConfigError(path, "expected a number or [re, im]");
  return {v[0], v[1]};
}

Material parse_material(const json& j, const std::string& path, bool allow_metal) {
  if (j.is_string()) {
    if (allow_metal && j.get<std::string>() == "metal") return Material{Material::Type::kMetal, {}, {}};
    throw ConfigError(path, allow_metal ? "expected a material object or \"metal\"" : "expected a material object");
  }
  ObjectReader r(j, path);
  Material m;
  const json* eps = r.find("eps");
  const json* drude = r.find("drude");
  if ((eps == nullptr) == (drude == nullptr)) throw ConfigError(path, "give exactly one of eps or drude");
  if (eps != nullptr) {
    m.type = Material::Type::kFixed;
    m.eps = complex_value(*eps, r.path("eps"));
  } else {
    m.type = Material::Type::kDrude;
    ObjectReader d(*drude, r.path("drude"));
    if (const json* v = d.find("eps0")) m.drude.eps0 = positive(*v, d.path("eps0"));
    m.drude.omega_p = positive(d.require("omega_p"), d.path("omega_p"));
    if (const json* v = d.find("tau")) m.drude.tau = nonnegative(*v, d.path("tau"));
    d.finish();
  }
  r.finish();
  return m;
}

Grid parse_grid(const json& j, const std::string& path, std::initializer_list<const char*> units) {
  Grid g;
  if (j.is_array()) {
    g.values = number_array(j, path);
    return g;
  }
  ObjectReader r(j, path);
  if (const json* u = r.find("unit")) g.unit = string_in(*u, r.path("unit"), units);
  if (const json* v = r.find("values")) {
    g.values = number_array(*v, r.path("values"));
    for (const char* key : {"start", "stop", "count", "spacing"}) {
      if (j.contains(key)) throw ConfigError(r.path(key), "not allowed together with values");
    }
  } else {
    g.start = number(r.require("start"), r.path("start"));
    g.stop = number(r.require("stop"), r.path("stop"));
    const json& count = r.require("count");
    if (!count.is_number_unsigned()) throw ConfigError(r.path("count"), "expected a nonnegative integer");
    g.count = count.get<std::size_t>();
    if (g.count > 1000000) throw ConfigError(r.path("count"), "at most 1000000 points");
    if (const json* s = r.find("spacing")) g.log_spacing = string_in(*s, r.path("spacing"), {"linear", "log"}) == "log";
    if (g.log_spacing && !(g.start > 0.0 && g.stop > 0.0)) {
      throw ConfigError(r.path("start"), "log spacing needs positive endpoints");
    }
  }
  r.finish();
  return g;
}

Quantity parse_quantity(const json& j, const std::string& path, std::initializer_list<const char*> units) {
  if (j.is_number()) return {number(j, path), "absolute"};
  ObjectReader r(j, path);
  Quantity q;
  q.value = number(r.require("value"), r.path("value"));
  if (const json* u = r.find("unit")) q.unit = string_in(*u, r.path("unit"), units);
  r.finish();
  return q;
}

json material_json(const Material& m) {
  switch (m.type) {
    case Material::Type::kMetal:
      return "metal";
    case Material::Type::kFixed:
      return {{"eps", {m.eps.real(), m.eps.imag()}}};
    case Material::Type::kDrude:
      return {{"drude", {{"eps0", m.drude.eps0}, {"omega_p", m.drude.omega_p}, {"tau", m.drude.tau}}}};
  }
  return nullptr;
}

json grid_json(const Grid& g) {
  json out{{"unit", g.unit}};
  if (!g.values.empty()) {
    out["values"] = g.values;
  } else {
    out["start"] = g.start;
    out["stop"] = g.stop;
    out["count"] = g.count;
    out["spacing"] = g.log_spacing ? "log" : "linear";
  }
  return out;
}

json quantity_json(const Quantity& q) { return {{"value", q.value}, {"unit", q.unit}}; }

}  // namespace

Complex Material::at(double omega) const {
  if (type == Type::kDrude) return permittivity(drude, omega);
  return eps;
}

std::vector<double> Grid::expand(double reference) const {
  std::vector<double> out = values;
  if (values.empty()) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back(log_spacing ? start * std::pow(stop / start, t) : start + (stop - start) * t);
    }
  }
  if (unit != "absolute") {
    for (auto& v : out) v *= reference;
  }
  return out;
}

double Geometry::scale() const {
  if (units == "nm") return 1e-9;
  if (units == "um") return 1e-6;
  return 1.0;
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::kSphere:
      return "sphere";
    case Kind::kNanoshell:
      return "nanoshell";
    case Kind::kLayered:
      return "layered";
  }
  return "?";
}

StructureConfig parse_config(const json& doc) {
  ObjectReader top(doc, "");
  StructureConfig c;

  const std::string kind = string_in(top.require("kind"), "/kind", {"sphere", "nanoshell", "layered"});
  c.kind = kind == "sphere" ? Kind::kSphere : kind == "nanoshell" ? Kind::kNanoshell : Kind::kLayered;

  {
    ObjectReader g(top.require("geometry"), "/geometry");
    c.geometry.radii = number_array(g.require("radii"), "/geometry/radii");
    if (const json* u = g.find("units")) c.geometry.units = string_in(*u, "/geometry/units", {"m", "um", "nm"});
    g.finish();
    const auto& r = c.geometry.radii;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string p = "/geometry/radii/" + std::to_string(i);
      if (!(r[i] > 0.0)) throw ConfigError(p, "must be positive");
      if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError(p, "radii must be strictly increasing");
    }
    const std::size_t want = c.kind == Kind::kSphere ? 1 : c.kind == Kind::kNanoshell ? 4 : 0;
    if (want != 0 && r.size() != want) {
      throw ConfigError("/geometry/radii", kind + " needs exactly " + std::to_string(want) + " radii");
    }
    if (r.empty()) throw ConfigError("/geometry/radii", "at least one radius is required");
  }

  if (const json* m = top.find("materials")) {
    ObjectReader mr(*m, "/materials");
    const auto opt = [&](const char* key) -> std::optional<Material> {
      const json* v = mr.find(key);
      if (v == nullptr) return std::nullopt;
      return parse_material(*v, mr.path(key), false);
    };
    switch (c.kind) {
      case Kind::kSphere:
        c.materials.particle = opt("particle");
        c.materials.host = opt("host");
        break;
      case Kind::kNanoshell:
        c.materials.core = opt("core");
        c.materials.shell = opt("shell");
        break;
      case Kind::kLayered: {
        c.materials.metal = opt("metal");
        const json& regions = mr.require("regions");
        if (!regions.is_array()) throw ConfigError("/materials/regions", "expected an array");
        for (std::size_t i = 0; i < regions.size(); ++i) {
          c.materials.regions.push_back(
              parse_material(regions[i], "/materials/regions/" + std::to_string(i), true));
        }
        if (c.materials.regions.size() != c.geometry.radii.size() + 1) {
          throw ConfigError("/materials/regions", "need one more region than radii");
        }
        if (c.materials.regions.back().type != Material::Type::kFixed) {
          throw ConfigError("/materials/regions/" + std::to_string(c.materials.regions.size() - 1),
                            "the host region needs a fixed permittivity");
        }
        break;
      }
    }
    mr.finish();
  } else if (c.kind == Kind::kLayered) {
    throw ConfigError("/materials", "layered structures need materials.regions");
  }

  const auto check_host = [](const std::optional<Material>& m, const std::string& path) {
    if (!m) return;
    if (m->type != Material::Type::kFixed || m->eps.imag() != 0.0 || !(m->eps.real() > 0.0)) {
      throw ConfigError(path, "must be a fixed, real, positive permittivity");
    }
  };
  check_host(c.materials.host, "/materials/host");
  check_host(c.materials.core, "/materials/core");

  if (const json* d = top.find("drive")) {
    ObjectReader dr(*d, "/drive");
    if (const json* a = dr.find("amplitude")) {
      c.drive.amplitude = number_array(*a, "/drive/amplitude");
      if (c.drive.amplitude.size() != 3) throw ConfigError("/drive/amplitude", "expected three components");
    }
    if (const json* v = dr.find("omega")) {
      c.drive.omega = parse_quantity(*v, "/drive/omega", {"absolute", "omega_p"});
      if (!(c.drive.omega->value > 0.0)) throw ConfigError("/drive/omega", "must be positive");
    }
    if (const json* v = dr.find("omega_grid")) c.drive.omega_grid = parse_grid(*v, "/drive/omega_grid", {"absolute", "omega_p"});
    if (const json* v = dr.find("tau_grid")) c.drive.tau_grid = parse_grid(*v, "/drive/tau_grid", {"absolute", "omega_p"});
    if (const json* v = dr.find("mode")) {
      if (!v->is_number_unsigned()) throw ConfigError("/drive/mode", "expected a nonnegative integer");
      c.drive.mode = v->get<std::size_t>();
    }
    if (const json* v = dr.find("speed")) c.drive.speed = positive(*v, "/drive/speed");
    dr.finish();
  }

  if (const json* h = top.find("heat")) {
    ObjectReader hr(*h, "/heat");
    Heat heat;
    heat.sigma_matrix = positive(hr.require("sigma_matrix"), "/heat/sigma_matrix");
    heat.sigma_np = positive(hr.require("sigma_np"), "/heat/sigma_np");
    if (const json* v = hr.find("q")) heat.q = nonnegative(*v, "/heat/q");
    if (const json* v = hr.find("r_grid")) heat.r_grid = parse_grid(*v, "/heat/r_grid", {"absolute", "r_np"});
    hr.finish();
    c.heat = heat;
  }

  top.finish();
  return c;
}

StructureConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

StructureConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const StructureConfig& c) {
  json out;
  out["kind"] = to_string(c.kind);
  out["geometry"] = {{"radii", c.geometry.radii}, {"units", c.geometry.units}};

  json mats = json::object();
  const auto put = [&](const char* key, const std::optional<Material>& m) {
    if (m) mats[key] = material_json(*m);
  };
  put("particle", c.materials.particle);
  put("host", c.materials.host);
  put("core", c.materials.core);
  put("shell", c.materials.shell);
  put("metal", c.materials.metal);
  if (c.kind == Kind::kLayered) {
    mats["regions"] = json::array();
    for (const auto& m : c.materials.regions) mats["regions"].push_back(material_json(m));
  }
  out["materials"] = mats;

  json drive{{"amplitude", c.drive.amplitude}, {"speed", c.drive.speed}};
  if (c.drive.omega) drive["omega"] = quantity_json(*c.drive.omega);
  if (c.drive.omega_grid) drive["omega_grid"] = grid_json(*c.drive.omega_grid);
  if (c.drive.tau_grid) drive["tau_grid"] = grid_json(*c.drive.tau_grid);
  if (c.drive.mode) drive["mode"] = *c.drive.mode;
  out["drive"] = drive;

  if (c.heat) {
    json heat{{"sigma_matrix", c.heat->sigma_matrix}, {"sigma_np", c.heat->sigma_np}};
    if (c.heat->q) heat["q"] = *c.heat->q;
    if (c.heat->r_grid) heat["r_grid"] = grid_json(*c.heat->r_grid);
    out["heat"] = heat;
  }
  return out;
}

}  // namespace plasmod::cli
