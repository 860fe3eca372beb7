#pragma once

#include <ostream>
#include <string>

#include "plasmod/error.hpp"

namespace plasmod::cli {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitSingular = 3, kExitHypothesis = 4 };

struct RunOptions {
  std::string command;
  std::string config_path;
  std::string out_path;  // empty writes to `out`
  std::string format = "csv";
};

int exit_code_for(ErrorCode code);

/// Loads the config, runs the command and writes the result. Failures are
/// reported on `err` as one JSON record and mapped to an exit code.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace plasmod::cli
