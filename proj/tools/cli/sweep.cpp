#include "sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace plasmod::cli {

void SweepResult::add_meta(std::string key, double value) { add_meta(std::move(key), format_number(value)); }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const SweepResult& r) {
  std::string out;
  for (const auto& [key, value] : r.metadata) out += "# " + key + ": " + value + "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell_text(row[i]);
    out += "\n";
  }
  return out;
}

std::string to_json_text(const SweepResult& r) {
  using nlohmann::json;
  json meta = json::object();
  for (const auto& [key, value] : r.metadata) meta[key] = value;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = json::array();
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        jr.push_back(std::isfinite(*d) ? json(*d) : json(nullptr));
      } else {
        jr.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(jr);
  }
  return json{{"metadata", meta}, {"columns", r.columns}, {"rows", rows}}.dump(2) + "\n";
}

std::string csv_body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    out += line + "\n";
  }
  return out;
}

std::size_t thread_count() {
  if (const char* env = std::getenv("PLASMOD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace plasmod::cli
