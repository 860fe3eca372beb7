#include "run.hpp"

#include <fstream>
#include <map>

#include "commands.hpp"

namespace plasmod::cli {
namespace {

using Command = SweepResult (*)(const StructureConfig&);

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{{"sphere-resonance", cmd_sphere_resonance},
                                                    {"shell-modes", cmd_shell_modes},
                                                    {"heat-profile", cmd_heat_profile},
                                                    {"blowup-scan", cmd_blowup_scan}};
  return table;
}

void report(std::ostream& err, const std::string& kind, const std::string& message, const std::string& pointer = {}) {
  nlohmann::json rec{{"error", kind}, {"message", message}};
  if (!pointer.empty()) rec["pointer"] = pointer;
  err << rec.dump() << "\n";
}

}  // namespace

int exit_code_for(ErrorCode code) {
  if (is_singularity(code)) return kExitSingular;
  if (code == ErrorCode::kHypothesisViolated || code == ErrorCode::kNoRealFrequency) return kExitHypothesis;
  return kExitConfig;
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  const auto it = commands().find(options.command);
  if (it == commands().end()) {
    report(err, "UsageError", "unknown command " + options.command);
    return kExitConfig;
  }
  try {
    const StructureConfig config = load_config(options.config_path);
    SweepResult result = it->second(config);
    stamp(result, config, options.command);
    const std::string text = options.format == "json" ? to_json_text(result) : to_csv(result);
    if (options.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(options.out_path, std::ios::binary);
      file << text;
      if (!file) {
        report(err, "IoError", "cannot write " + options.out_path);
        return kExitConfig;
      }
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    report(err, "ConfigError", e.what(), e.pointer());
    return kExitConfig;
  } catch (const Error& e) {
    report(err, std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  }
}

}  // namespace plasmod::cli
