#pragma once

#include "config.hpp"
#include "sweep.hpp"

namespace plasmod::cli {

inline constexpr const char* kVersion = "0.1.0";

SweepResult cmd_sphere_resonance(const StructureConfig& c);
SweepResult cmd_shell_modes(const StructureConfig& c);
SweepResult cmd_heat_profile(const StructureConfig& c);
SweepResult cmd_blowup_scan(const StructureConfig& c);

/// Version, timestamp and the canonical config, placed ahead of any
/// command-specific metadata.
void stamp(SweepResult& r, const StructureConfig& c, const std::string& command);

}  // namespace plasmod::cli
