#pragma once

// Tabular results and their CSV / JSON encodings.

#include <cstddef>
#include <exception>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace plasmod::cli {

using Cell = std::variant<double, std::string>;

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;  // emission order

  void add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value);
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

std::string to_csv(const SweepResult& r);
std::string to_json_text(const SweepResult& r);

/// Lines of a CSV document that are not '#' metadata.
std::string csv_body(const std::string& csv);

/// Worker count from PLASMOD_THREADS, defaulting to the hardware concurrency.
std::size_t thread_count();

/// Evaluates fn(0..n-1) on up to thread_count() threads; results keep index
/// order. The first exception by index is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t n, F fn);

}  // namespace plasmod::cli

#include "parallel_impl.hpp"
