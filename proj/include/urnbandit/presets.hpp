#pragma once

#include <string>
#include <vector>

#include "urnbandit/config.hpp"

namespace urnbandit {

// One labeled (instance, policy) pair; presets that sweep a parameter grid
// expand into several entries sharing a horizon and trial count.
struct PresetEntry {
  std::string label;  // CSV policy column value
  InstanceSpec instance;
  PolicySpec policy;
};

struct PresetDefinition {
  std::string name;
  long horizon = 10000;
  long trials = 200;
  std::uint64_t seed = 42;
  std::vector<PresetEntry> entries;
};

std::vector<std::string> preset_names();

// Throws ConfigError for unknown names.
PresetDefinition get_preset(const std::string& name);

}  // namespace urnbandit
