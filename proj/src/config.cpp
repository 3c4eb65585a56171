#include "urnbandit/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace urnbandit {
namespace {

using nlohmann::json;

const json& require(const json& parent, const std::string& key,
                    const std::string& path) {
  if (!parent.is_object() || !parent.contains(key)) {
    throw ConfigError(path, "missing required field");
  }
  return parent.at(key);
}

double require_number(const json& parent, const std::string& key,
                      const std::string& path) {
  const json& value = require(parent, key, path);
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  return value.get<double>();
}

double number_or(const json& parent, const std::string& key,
                 const std::string& path, double fallback) {
  if (!parent.is_object() || !parent.contains(key)) return fallback;
  const json& value = parent.at(key);
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  return value.get<double>();
}

long integer_or(const json& parent, const std::string& key,
                const std::string& path, long fallback) {
  if (!parent.is_object() || !parent.contains(key)) return fallback;
  const json& value = parent.at(key);
  if (!value.is_number_integer()) throw ConfigError(path, "expected an integer");
  return value.get<long>();
}

}  // namespace

BanditInstance InstanceSpec::build(bool allow_tied_best) const {
  ImpactFunction impact = impact_constant
                              ? ImpactFunction::constant(impact_value)
                              : ImpactFunction::payment_linear();
  FeedbackFunction feedback =
      FeedbackFunction::polynomial(feedback_coefficient, feedback_alpha);
  if (allow_tied_best) {
    return BanditInstance::allow_tied_best(arms, std::move(feedback),
                                           std::move(impact));
  }
  return BanditInstance(arms, std::move(feedback), std::move(impact));
}

double InstanceSpec::impact_for(double payment) const {
  return impact_constant ? impact_value : payment;
}

json InstanceSpec::to_json() const {
  json arms_json = json::array();
  for (const ArmSpec& arm : arms) {
    arms_json.push_back({{"mean", arm.mean}, {"bias", arm.bias}});
  }
  json impact_json;
  if (impact_constant) {
    impact_json = {{"kind", "constant"}, {"value", impact_value}};
  } else {
    impact_json = {{"kind", "payment_linear"}};
  }
  return json{{"arms", arms_json},
              {"feedback",
               {{"kind", "polynomial"},
                {"alpha", feedback_alpha},
                {"coefficient", feedback_coefficient}}},
              {"impact", impact_json}};
}

std::vector<long> RunSpec::resolved_checkpoints() const {
  if (checkpoints) return *checkpoints;
  return default_checkpoints(horizon);
}

json RunSpec::to_json() const {
  return json{{"T", horizon},
              {"trials", trials},
              {"seed", seed},
              {"checkpoints", resolved_checkpoints()}};
}

ExperimentConfig SimulationSetup::build_experiment() const {
  return ExperimentConfig(instance.build(), policy, run.horizon, run.trials,
                          run.resolved_checkpoints(), run.seed);
}

json SimulationSetup::to_json() const {
  json out = instance.to_json();
  json policy_json{{"name", to_string(policy.kind)}};
  if (policy.kind == PolicyKind::kAlnEtc ||
      policy.kind == PolicyKind::kExploreOnly) {
    policy_json["b"] = policy.payment;
    policy_json["q"] = policy.q;
  } else if (policy.kind == PolicyKind::kUcbList) {
    policy_json["b"] = policy.payment;
  }
  out["policy"] = policy_json;
  out["run"] = run.to_json();
  return out;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file: " + path);
  json config;
  try {
    in >> config;
  } catch (const json::parse_error& err) {
    throw ConfigError("", std::string("config is not valid JSON: ") + err.what());
  }
  if (!config.is_object()) throw ConfigError("", "config root must be an object");
  return config;
}

InstanceSpec parse_instance(const json& config, bool require_unique_best) {
  InstanceSpec spec;
  const json& arms = require(config, "arms", "arms");
  if (!arms.is_array() || arms.size() < 2) {
    throw ConfigError("arms", "expected an array of at least two arms");
  }
  for (size_t i = 0; i < arms.size(); ++i) {
    const std::string path = "arms[" + std::to_string(i) + "]";
    const json& arm = arms.at(i);
    ArmSpec parsed;
    parsed.mean = require_number(arm, "mean", path + ".mean");
    parsed.bias = require_number(arm, "bias", path + ".bias");
    if (!(parsed.mean > 0.0) || parsed.mean > 1.0) {
      throw ConfigError(path + ".mean", "must lie in (0, 1]");
    }
    if (!(parsed.bias > 0.0)) {
      throw ConfigError(path + ".bias", "must be positive");
    }
    spec.arms.push_back(parsed);
  }
  if (require_unique_best) {
    double top = 0.0;
    int ties = 0;
    for (const ArmSpec& arm : spec.arms) top = std::max(top, arm.mean);
    for (const ArmSpec& arm : spec.arms) ties += arm.mean == top ? 1 : 0;
    if (ties != 1) {
      throw ConfigError("arms", "the largest mean must be unique");
    }
  }

  const json& feedback = require(config, "feedback", "feedback");
  const json& kind = require(feedback, "kind", "feedback.kind");
  if (!kind.is_string() || kind.get<std::string>() != "polynomial") {
    throw ConfigError("feedback.kind", "only \"polynomial\" is supported here");
  }
  spec.feedback_alpha = require_number(feedback, "alpha", "feedback.alpha");
  spec.feedback_coefficient =
      number_or(feedback, "coefficient", "feedback.coefficient", 1.0);
  if (!(spec.feedback_alpha > 0.0)) {
    throw ConfigError("feedback.alpha", "must be positive");
  }
  if (!(spec.feedback_coefficient > 0.0)) {
    throw ConfigError("feedback.coefficient", "must be positive");
  }

  if (config.contains("impact")) {
    const json& impact = config.at("impact");
    const json& impact_kind = require(impact, "kind", "impact.kind");
    const std::string impact_name =
        impact_kind.is_string() ? impact_kind.get<std::string>() : "";
    if (impact_name == "payment_linear") {
      spec.impact_constant = false;
    } else if (impact_name == "constant") {
      spec.impact_constant = true;
      spec.impact_value = require_number(impact, "value", "impact.value");
      if (spec.impact_value < 0.0) {
        throw ConfigError("impact.value", "must be nonnegative");
      }
    } else {
      throw ConfigError("impact.kind",
                        "expected \"payment_linear\" or \"constant\"");
    }
  }
  return spec;
}

PolicySpec parse_policy(const json& config, std::string* label) {
  const json& policy = require(config, "policy", "policy");
  const json& name = require(policy, "name", "policy.name");
  if (!name.is_string()) throw ConfigError("policy.name", "expected a string");
  const std::string kind = name.get<std::string>();
  PolicySpec spec;
  if (kind == "alnetc") {
    spec.kind = PolicyKind::kAlnEtc;
  } else if (kind == "ucb_list") {
    spec.kind = PolicyKind::kUcbList;
  } else if (kind == "none") {
    spec.kind = PolicyKind::kNone;
  } else if (kind == "explore_only") {
    spec.kind = PolicyKind::kExploreOnly;
  } else if (kind == "oracle") {
    spec.kind = PolicyKind::kOracle;
  } else {
    throw ConfigError("policy.name", "unknown policy: " + kind);
  }
  if (spec.kind == PolicyKind::kAlnEtc || spec.kind == PolicyKind::kUcbList ||
      spec.kind == PolicyKind::kExploreOnly) {
    spec.payment = require_number(policy, "b", "policy.b");
    if (!(spec.payment > 0.0)) throw ConfigError("policy.b", "must be positive");
  }
  if (spec.kind == PolicyKind::kAlnEtc ||
      spec.kind == PolicyKind::kExploreOnly) {
    spec.q = require_number(policy, "q", "policy.q");
    if (!(spec.q > 0.0)) throw ConfigError("policy.q", "must be positive");
  }
  if (label) *label = kind;
  return spec;
}

RunSpec parse_run(const json& config) {
  const json& run = require(config, "run", "run");
  RunSpec spec;
  const json& horizon = require(run, "T", "run.T");
  if (!horizon.is_number_integer()) {
    throw ConfigError("run.T", "expected an integer");
  }
  spec.horizon = horizon.get<long>();
  if (spec.horizon < 2) throw ConfigError("run.T", "must be at least 2");
  spec.trials = integer_or(run, "trials", "run.trials", 200);
  if (spec.trials < 1) throw ConfigError("run.trials", "must be at least 1");
  if (run.contains("seed")) {
    const json& seed = run.at("seed");
    if (!seed.is_number_integer()) {
      throw ConfigError("run.seed", "expected an integer");
    }
    spec.seed = seed.get<std::uint64_t>();
  }
  if (run.contains("checkpoints")) {
    const json& checkpoints = run.at("checkpoints");
    if (!checkpoints.is_array() || checkpoints.empty()) {
      throw ConfigError("run.checkpoints", "expected a non-empty array");
    }
    std::vector<long> schedule;
    long prev = 0;
    for (size_t i = 0; i < checkpoints.size(); ++i) {
      const json& entry = checkpoints.at(i);
      if (!entry.is_number_integer()) {
        throw ConfigError("run.checkpoints[" + std::to_string(i) + "]",
                          "expected an integer");
      }
      const long t = entry.get<long>();
      if (t <= prev) {
        throw ConfigError("run.checkpoints", "must be strictly increasing");
      }
      schedule.push_back(t);
      prev = t;
    }
    if (schedule.back() != spec.horizon) {
      throw ConfigError("run.checkpoints", "the last checkpoint must equal run.T");
    }
    spec.checkpoints = std::move(schedule);
  }
  return spec;
}

BoundsSpec parse_bounds(const json& config) {
  BoundsSpec spec;
  if (config.contains("bounds") && config.at("bounds").contains("t_grid")) {
    const json& grid = config.at("bounds").at("t_grid");
    if (!grid.is_array() || grid.empty()) {
      throw ConfigError("bounds.t_grid", "expected a non-empty array");
    }
    double prev = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const json& entry = grid.at(i);
      if (!entry.is_number()) {
        throw ConfigError("bounds.t_grid[" + std::to_string(i) + "]",
                          "expected a number");
      }
      const double t = entry.get<double>();
      if (t < 2.0 || t <= prev) {
        throw ConfigError("bounds.t_grid",
                          "must be strictly increasing and at least 2");
      }
      spec.t_grid.push_back(t);
      prev = t;
    }
  } else {
    // quarter-decade grid from 1e2 to 1e6
    for (int i = 8; i <= 24; ++i) {
      spec.t_grid.push_back(std::pow(10.0, 0.25 * i));
    }
  }
  return spec;
}

EmbedSpec parse_embed(const json& config) {
  EmbedSpec spec;
  if (!config.contains("embed")) return spec;
  const json& embed = config.at("embed");
  spec.prefix_length =
      integer_or(embed, "prefix_length", "embed.prefix_length", spec.prefix_length);
  spec.samples = integer_or(embed, "samples", "embed.samples", spec.samples);
  spec.streak = integer_or(embed, "streak", "embed.streak", spec.streak);
  spec.event_cap =
      integer_or(embed, "event_cap", "embed.event_cap", spec.event_cap);
  spec.attraction_runs = integer_or(embed, "attraction_runs",
                                    "embed.attraction_runs", spec.attraction_runs);
  if (spec.prefix_length < 1 || spec.prefix_length > 20) {
    throw ConfigError("embed.prefix_length", "must lie in 1..20");
  }
  if (spec.samples < 1) throw ConfigError("embed.samples", "must be positive");
  if (spec.streak < 1) throw ConfigError("embed.streak", "must be positive");
  if (spec.event_cap < spec.streak) {
    throw ConfigError("embed.event_cap", "must be at least embed.streak");
  }
  if (spec.attraction_runs < 1) {
    throw ConfigError("embed.attraction_runs", "must be positive");
  }
  return spec;
}

SimulationSetup parse_simulation_config(const json& config) {
  SimulationSetup setup;
  setup.instance = parse_instance(config);
  setup.policy = parse_policy(config, &setup.policy_label);
  setup.run = parse_run(config);
  return setup;
}

}  // namespace urnbandit
