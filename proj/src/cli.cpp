#include "urnbandit/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <unordered_map>

#include "urnbandit/bounds.hpp"
#include "urnbandit/config.hpp"
#include "urnbandit/embedding.hpp"
#include "urnbandit/output.hpp"
#include "urnbandit/presets.hpp"

namespace urnbandit {
namespace {

using nlohmann::json;

int report_config_error(const std::exception& err) {
  std::cerr << "configuration error: " << err.what() << '\n';
  return kExitConfigError;
}

int report_runtime_error(const std::exception& err) {
  std::cerr << "runtime error: " << err.what() << '\n';
  return kExitRuntimeError;
}

void check_format(const CliOptions& options) {
  if (options.format != "csv" && options.format != "json") {
    throw ConfigError("--format", "expected csv or json");
  }
}

void apply_overrides(RunSpec& run, const CliOptions& options) {
  if (options.trials_override) {
    if (*options.trials_override < 1) {
      throw ConfigError("--trials", "must be at least 1");
    }
    run.trials = *options.trials_override;
  }
  run.seed = resolve_seed(run.seed, options);
}

// Encodes a reward-order prefix as a base-m integer key.
std::uint64_t encode_prefix(const std::vector<int>& prefix, int num_arms) {
  std::uint64_t key = 0;
  for (int arm : prefix) {
    key = key * static_cast<std::uint64_t>(num_arms) +
          static_cast<std::uint64_t>(arm);
  }
  return key;
}

struct PrefixStudy {
  double tv_embedded_vs_exact;
  double tv_direct_vs_exact;
  double tv_embedded_vs_direct;
  std::vector<double> exact_first_event;
};

// Total variation between an empirical prefix distribution and the exact
// one; probability mass on unobserved prefixes enters through the residual
// 1 - sum of exact probabilities over the observed support.
double tv_empirical_vs_exact(
    const std::unordered_map<std::uint64_t, long>& counts, long samples,
    const std::unordered_map<std::uint64_t, double>& exact_cache) {
  double overlap_abs = 0.0;
  double exact_seen = 0.0;
  for (const auto& [key, count] : counts) {
    const double empirical = static_cast<double>(count) / samples;
    const double exact = exact_cache.at(key);
    overlap_abs += std::abs(empirical - exact);
    exact_seen += exact;
  }
  return 0.5 * (overlap_abs + (1.0 - exact_seen));
}

double tv_empirical_pair(const std::unordered_map<std::uint64_t, long>& a,
                         const std::unordered_map<std::uint64_t, long>& b,
                         long samples) {
  double total = 0.0;
  for (const auto& [key, count] : a) {
    const auto it = b.find(key);
    const double qb = it == b.end() ? 0.0
                                    : static_cast<double>(it->second) / samples;
    total += std::abs(static_cast<double>(count) / samples - qb);
  }
  for (const auto& [key, count] : b) {
    if (a.find(key) == a.end()) {
      total += static_cast<double>(count) / samples;
    }
  }
  return 0.5 * total;
}

// Requires num_arms^prefix_length to fit the 64-bit prefix key; guaranteed
// by the prefix-length cap for any realistic arm count and checked upstream.
PrefixStudy run_prefix_study(const BanditInstance& instance,
                             const EmbedSpec& spec, std::uint64_t seed) {
  std::vector<int> prefix(static_cast<size_t>(spec.prefix_length));
  std::unordered_map<std::uint64_t, long> embedded_counts;
  std::unordered_map<std::uint64_t, long> direct_counts;

  RandomStream embedded_rng(RandomStream::for_trial(seed, 1));
  RandomStream direct_rng(RandomStream::for_trial(seed, 2));
  for (long s = 0; s < spec.samples; ++s) {
    const EmbeddedSequence emb =
        embedded_sequence(instance, spec.prefix_length, embedded_rng);
    ++embedded_counts[encode_prefix(emb.indices, instance.num_arms())];
    const EmbeddedSequence dir =
        direct_reward_sequence(instance, spec.prefix_length, direct_rng);
    ++direct_counts[encode_prefix(dir.indices, instance.num_arms())];
  }

  std::unordered_map<std::uint64_t, double> exact_cache;
  auto cache_exact = [&](const std::unordered_map<std::uint64_t, long>& counts) {
    for (const auto& [key, count] : counts) {
      (void)count;
      if (exact_cache.count(key)) continue;
      std::uint64_t rest = key;
      for (long j = spec.prefix_length - 1; j >= 0; --j) {
        prefix[static_cast<size_t>(j)] =
            static_cast<int>(rest % static_cast<std::uint64_t>(instance.num_arms()));
        rest /= static_cast<std::uint64_t>(instance.num_arms());
      }
      exact_cache[key] = exact_sequence_probability(instance, prefix);
    }
  };
  cache_exact(embedded_counts);
  cache_exact(direct_counts);

  PrefixStudy study;
  study.tv_embedded_vs_exact =
      tv_empirical_vs_exact(embedded_counts, spec.samples, exact_cache);
  study.tv_direct_vs_exact =
      tv_empirical_vs_exact(direct_counts, spec.samples, exact_cache);
  study.tv_embedded_vs_direct =
      tv_empirical_pair(embedded_counts, direct_counts, spec.samples);
  for (int a = 0; a < instance.num_arms(); ++a) {
    const int first[] = {a};
    study.exact_first_event.push_back(
        exact_sequence_probability(instance, first));
  }
  return study;
}

}  // namespace

std::uint64_t resolve_seed(std::uint64_t config_seed, const CliOptions& options) {
  if (const char* env = std::getenv("URNBANDIT_SEED")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ConfigError("URNBANDIT_SEED", "expected an unsigned integer");
    }
    return static_cast<std::uint64_t>(value);
  }
  if (options.seed_override) return *options.seed_override;
  return config_seed;
}

int cmd_simulate(const std::string& config_path, const CliOptions& options) {
  SimulationSetup setup;
  try {
    check_format(options);
    const json config = load_config_file(config_path);
    setup = parse_simulation_config(config);
    apply_overrides(setup.run, options);
  } catch (const std::exception& err) {
    return report_config_error(err);
  }
  try {
    const AggregateResult result =
        run_experiment(setup.build_experiment(), options.workers);
    const std::vector<LabeledAggregate> rows = {{setup.policy_label, result}};
    if (options.format == "json") {
      write_simulation_json(options.output_path, rows);
    } else {
      write_simulation_csv(options.output_path, rows);
    }
    json sidecar{{"command", "simulate"},
                 {"config", setup.to_json()},
                 {"policies", {{setup.policy_label, aggregate_summary(result)}}}};
    write_json_file(sidecar_path(options.output_path), sidecar);
    return kExitOk;
  } catch (const std::exception& err) {
    return report_runtime_error(err);
  }
}

int cmd_preset(const std::string& preset_name, const CliOptions& options) {
  PresetDefinition preset;
  std::vector<SimulationSetup> setups;
  try {
    check_format(options);
    preset = get_preset(preset_name);
    for (const PresetEntry& entry : preset.entries) {
      SimulationSetup setup;
      setup.instance = entry.instance;
      setup.policy = entry.policy;
      setup.policy_label = entry.label;
      setup.run.horizon = preset.horizon;
      setup.run.trials = preset.trials;
      setup.run.seed = preset.seed;
      apply_overrides(setup.run, options);
      setups.push_back(std::move(setup));
    }
  } catch (const std::exception& err) {
    return report_config_error(err);
  }
  try {
    std::vector<LabeledAggregate> rows;
    json runs = json::array();
    for (const SimulationSetup& setup : setups) {
      const AggregateResult result =
          run_experiment(setup.build_experiment(), options.workers);
      runs.push_back({{"label", setup.policy_label},
                      {"config", setup.to_json()},
                      {"summary", aggregate_summary(result)}});
      rows.push_back({setup.policy_label, result});
    }
    if (options.format == "json") {
      write_simulation_json(options.output_path, rows);
    } else {
      write_simulation_csv(options.output_path, rows);
    }
    json sidecar{{"command", "preset"},
                 {"preset", preset.name},
                 {"runs", runs}};
    write_json_file(sidecar_path(options.output_path), sidecar);
    return kExitOk;
  } catch (const std::exception& err) {
    return report_runtime_error(err);
  }
}

int cmd_bounds(const std::string& config_path, const CliOptions& options) {
  InstanceSpec instance_spec;
  BoundsSpec grid;
  double payment = 0.0;
  double q = 0.0;
  double impact = 0.0;
  try {
    check_format(options);
    const json config = load_config_file(config_path);
    instance_spec = parse_instance(config);
    if (!config.contains("policy")) {
      throw ConfigError("policy", "missing required field");
    }
    const json& policy = config.at("policy");
    if (!policy.contains("b") || !policy.at("b").is_number()) {
      throw ConfigError("policy.b", "a positive payment is required");
    }
    payment = policy.at("b").get<double>();
    if (!(payment > 0.0)) throw ConfigError("policy.b", "must be positive");
    if (!policy.contains("q") || !policy.at("q").is_number()) {
      throw ConfigError("policy.q", "q is required by the bound evaluators");
    }
    q = policy.at("q").get<double>();
    if (!(q > 0.0)) throw ConfigError("policy.q", "must be positive");
    impact = instance_spec.impact_for(payment);
    if (!(impact > 1.0)) {
      throw ConfigError("impact",
                        "the bound evaluators require G > 1 (configured G = " +
                            format_double(impact) + ")");
    }
    grid = parse_bounds(config);
  } catch (const std::exception& err) {
    return report_config_error(err);
  }
  try {
    const BanditInstance instance = instance_spec.build();
    std::vector<BoundsRow> rows;
    bool q_condition_met = true;
    for (double horizon : grid.t_grid) {
      const BoundInputs inputs(instance, horizon, payment, impact, q);
      const Thm1Regret regret = thm1_regret_main(inputs);
      q_condition_met = q_condition_met && regret.q_condition_met;
      const TauBounds tau = tau_bounds(inputs);
      rows.push_back({horizon, regret.value, thm1_payment(inputs),
                      thm2_regret(inputs), thm2_payment(inputs),
                      tau.tau_n_bound, tau.tau_gap_bound});
    }
    if (!q_condition_met) {
      std::cerr << "warning: q is below 2 max_{a != a*} mu_a / min_gap^2; "
                   "identification is not guaranteed\n";
    }
    if (options.format == "json") {
      write_bounds_json(options.output_path, rows);
    } else {
      write_bounds_csv(options.output_path, rows);
    }
    json sidecar{{"command", "bounds"},
                 {"config", instance_spec.to_json()},
                 {"b", payment},
                 {"q", q},
                 {"G", impact},
                 {"t_grid", grid.t_grid},
                 {"q_condition_met", q_condition_met}};
    write_json_file(sidecar_path(options.output_path), sidecar);
    return kExitOk;
  } catch (const std::exception& err) {
    return report_runtime_error(err);
  }
}

int cmd_embed(const std::string& config_path, const CliOptions& options) {
  InstanceSpec instance_spec;
  EmbedSpec embed_spec;
  std::uint64_t seed = 42;
  try {
    const json config = load_config_file(config_path);
    instance_spec = parse_instance(config, /*require_unique_best=*/false);
    embed_spec = parse_embed(config);
    std::uint64_t outcome_space = 1;
    for (long j = 0; j < embed_spec.prefix_length; ++j) {
      outcome_space *= static_cast<std::uint64_t>(instance_spec.arms.size());
      if (outcome_space > (std::uint64_t{1} << 62)) {
        throw ConfigError("embed.prefix_length",
                          "prefix space is too large to enumerate");
      }
    }
    if (config.contains("run")) {
      const RunSpec run = parse_run(config);
      seed = run.seed;
    }
    seed = resolve_seed(seed, options);
  } catch (const std::exception& err) {
    return report_config_error(err);
  }
  try {
    const BanditInstance instance = instance_spec.build(/*allow_tied_best=*/true);
    const PrefixStudy prefixes = run_prefix_study(instance, embed_spec, seed);

    std::vector<long> wins(static_cast<size_t>(instance.num_arms()), 0);
    long censored = 0;
    RandomStream attraction_rng(RandomStream::for_trial(seed, 3));
    for (long r = 0; r < embed_spec.attraction_runs; ++r) {
      const AttractionOutcome outcome = estimate_attraction(
          instance, embed_spec.streak, embed_spec.event_cap, attraction_rng);
      if (outcome.censored()) {
        ++censored;
      } else {
        ++wins[static_cast<size_t>(*outcome.winner)];
      }
    }
    std::vector<double> winner_frequency;
    for (long w : wins) {
      winner_frequency.push_back(static_cast<double>(w) /
                                 static_cast<double>(embed_spec.attraction_runs));
    }

    json out{
        {"command", "embed"},
        {"config", instance_spec.to_json()},
        {"seed", seed},
        {"sequence_comparison",
         {{"prefix_length", embed_spec.prefix_length},
          {"samples", embed_spec.samples},
          {"tv_embedded_vs_exact", prefixes.tv_embedded_vs_exact},
          {"tv_direct_vs_exact", prefixes.tv_direct_vs_exact},
          {"tv_embedded_vs_direct", prefixes.tv_embedded_vs_direct},
          {"exact_first_event_probabilities", prefixes.exact_first_event}}},
        {"attraction",
         {{"streak", embed_spec.streak},
          {"event_cap", embed_spec.event_cap},
          {"runs", embed_spec.attraction_runs},
          {"winner_frequency", winner_frequency},
          {"censored_fraction",
           static_cast<double>(censored) /
               static_cast<double>(embed_spec.attraction_runs)},
          {"regime",
           to_string(classify_regime(instance_spec.feedback_alpha))}}}};
    write_json_file(options.output_path, out);
    json sidecar{{"command", "embed"},
                 {"config", instance_spec.to_json()},
                 {"seed", seed},
                 {"embed",
                  {{"prefix_length", embed_spec.prefix_length},
                   {"samples", embed_spec.samples},
                   {"streak", embed_spec.streak},
                   {"event_cap", embed_spec.event_cap},
                   {"attraction_runs", embed_spec.attraction_runs}}}};
    write_json_file(sidecar_path(options.output_path), sidecar);
    return kExitOk;
  } catch (const std::exception& err) {
    return report_runtime_error(err);
  }
}

}  // namespace urnbandit
