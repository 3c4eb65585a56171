#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "urnbandit/dynamics.hpp"
#include "urnbandit/harness.hpp"
#include "urnbandit/policies.hpp"

namespace urnbandit {

// Configuration problem tied to a field path such as "policy.b"; the CLI
// maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field_path, const std::string& message)
      : std::runtime_error(field_path.empty() ? message
                                              : field_path + ": " + message),
        field_path_(std::move(field_path)) {}

  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

// Declarative mirror of the instance part of a config file; kept separate
// from BanditInstance so runs can be echoed exactly into sidecars.
struct InstanceSpec {
  std::vector<ArmSpec> arms;
  double feedback_alpha = 1.5;
  double feedback_coefficient = 1.0;
  bool impact_constant = false;   // false = payment-linear
  double impact_value = 0.0;      // used when impact_constant

  BanditInstance build(bool allow_tied_best = false) const;
  // The constant G in effect for a given per-step payment.
  double impact_for(double payment) const;
  nlohmann::json to_json() const;
};

struct RunSpec {
  long horizon = 0;
  long trials = 200;
  std::uint64_t seed = 42;
  std::optional<std::vector<long>> checkpoints;  // default: log-spaced

  std::vector<long> resolved_checkpoints() const;
  nlohmann::json to_json() const;
};

struct SimulationSetup {
  InstanceSpec instance;
  PolicySpec policy;
  std::string policy_label;
  RunSpec run;

  ExperimentConfig build_experiment() const;
  nlohmann::json to_json() const;
};

// Optional sections driving the bounds and embedding commands.
struct BoundsSpec {
  std::vector<double> t_grid;  // default: quarter-decades from 1e2 to 1e6
};

struct EmbedSpec {
  long prefix_length = 3;
  long samples = 100000;
  long streak = 50;
  long event_cap = 10000;
  long attraction_runs = 1000;
};

nlohmann::json load_config_file(const std::string& path);

InstanceSpec parse_instance(const nlohmann::json& config,
                            bool require_unique_best = true);
PolicySpec parse_policy(const nlohmann::json& config,
                        std::string* label = nullptr);
RunSpec parse_run(const nlohmann::json& config);
BoundsSpec parse_bounds(const nlohmann::json& config);
EmbedSpec parse_embed(const nlohmann::json& config);

SimulationSetup parse_simulation_config(const nlohmann::json& config);

}  // namespace urnbandit
