#include <cstdint>
#include <string>

#include "CLI11.hpp"
#include "urnbandit/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "urnbandit - incentivized bandit simulation with self-reinforcing "
      "user preferences"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  urnbandit::CliOptions options;
  long trials = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_overrides) {
    cmd->add_option("--output", options.output_path, "Output file path")
        ->required();
    cmd->add_option("--format", options.format, "Output format: csv or json")
        ->default_val("csv");
    if (with_overrides) {
      cmd->add_option("--trials", trials, "Override the trial count");
      cmd->add_option("--seed", seed, "Override the base seed");
      cmd->add_option("--workers", options.workers,
                      "Parallel trial workers (0 = all cores)");
    }
  };

  CLI::App* simulate =
      app.add_subcommand("simulate", "Run the experiment from a config file");
  simulate->add_option("config", config_path, "JSON config file")->required();
  add_common(simulate, true);

  CLI::App* preset = app.add_subcommand(
      "preset", "Run a named replication preset "
                "(fig1, fig2, fig3, fig4, fig5, imperfect)");
  preset->add_option("name", preset_name, "Preset name")->required();
  add_common(preset, true);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Evaluate the regret/payment upper bounds on a horizon grid");
  bounds->add_option("config", config_path, "JSON config file")->required();
  add_common(bounds, false);

  CLI::App* embed = app.add_subcommand(
      "embed", "Distribution equivalence and attraction-time study");
  embed->add_option("config", config_path, "JSON config file")->required();
  embed->add_option("--output", options.output_path, "Output file path")
      ->required();
  embed->add_option("--seed", seed, "Override the base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : urnbandit::kExitConfigError;
  }

  for (CLI::App* cmd : {simulate, preset, bounds, embed}) {
    if (!cmd->parsed()) continue;
    const CLI::Option* trials_opt = cmd->get_option_no_throw("--trials");
    if (trials_opt && trials_opt->count() > 0) options.trials_override = trials;
    const CLI::Option* seed_opt = cmd->get_option_no_throw("--seed");
    if (seed_opt && seed_opt->count() > 0) options.seed_override = seed;
  }

  if (simulate->parsed()) return urnbandit::cmd_simulate(config_path, options);
  if (preset->parsed()) return urnbandit::cmd_preset(preset_name, options);
  if (bounds->parsed()) return urnbandit::cmd_bounds(config_path, options);
  return urnbandit::cmd_embed(config_path, options);
}
