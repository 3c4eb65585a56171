#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace urnbandit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct CliOptions {
  std::string output_path;
  std::optional<long> trials_override;
  std::optional<std::uint64_t> seed_override;
  int workers = 0;  // 0 = hardware concurrency
  std::string format = "csv";
};

// Seed precedence: URNBANDIT_SEED environment variable, then --seed, then the
// config file, then the built-in default.
std::uint64_t resolve_seed(std::uint64_t config_seed, const CliOptions& options);

int cmd_simulate(const std::string& config_path, const CliOptions& options);
int cmd_preset(const std::string& preset_name, const CliOptions& options);
int cmd_bounds(const std::string& config_path, const CliOptions& options);
int cmd_embed(const std::string& config_path, const CliOptions& options);

}  // namespace urnbandit
