#include "urnbandit/presets.hpp"

#include <cstdio>

namespace urnbandit {
namespace {

PolicySpec alnetc_spec(double payment, double q) {
  return PolicySpec{PolicyKind::kAlnEtc, payment, q};
}

PolicySpec ucblist_spec(double payment) {
  return PolicySpec{PolicyKind::kUcbList, payment, 0.0};
}

InstanceSpec two_armed_biased(double alpha) {
  InstanceSpec spec;
  spec.arms = {{0.3, 100.0}, {0.5, 1.0}};
  spec.feedback_alpha = alpha;
  return spec;
}

InstanceSpec three_armed(double alpha, double high_bias) {
  InstanceSpec spec;
  spec.arms = {{0.2, high_bias}, {0.4, high_bias}, {0.6, 1.0}};
  spec.feedback_alpha = alpha;
  return spec;
}

// Benchmark three-armed comparison; fig3/fig4/fig5 change one parameter each.
PresetDefinition three_armed_pair(const std::string& name, double alpha,
                                  double high_bias, double payment) {
  PresetDefinition preset;
  preset.name = name;
  const InstanceSpec instance = three_armed(alpha, high_bias);
  preset.entries.push_back({"alnetc", instance, alnetc_spec(payment, 20.0)});
  preset.entries.push_back({"ucb_list", instance, ucblist_spec(payment)});
  return preset;
}

std::string grid_label(const char* policy, double impact, double alpha) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%s_G%.1f_alpha%.1f", policy, impact,
                alpha);
  return buffer;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "imperfect"};
}

PresetDefinition get_preset(const std::string& name) {
  if (name == "fig1") {
    PresetDefinition preset;
    preset.name = name;
    const InstanceSpec instance = two_armed_biased(1.5);
    preset.entries.push_back({"alnetc", instance, alnetc_spec(1.5, 15.0)});
    preset.entries.push_back({"none", instance, PolicySpec{PolicyKind::kNone}});
    preset.entries.push_back(
        {"explore_only", instance,
         PolicySpec{PolicyKind::kExploreOnly, 1.5, 15.0}});
    return preset;
  }
  if (name == "fig2") return three_armed_pair(name, 1.5, 10.0, 1.2);
  if (name == "fig3") return three_armed_pair(name, 2.0, 10.0, 1.2);
  if (name == "fig4") return three_armed_pair(name, 1.5, 50.0, 1.2);
  if (name == "fig5") return three_armed_pair(name, 1.5, 10.0, 1.8);
  if (name == "imperfect") {
    PresetDefinition preset;
    preset.name = name;
    for (double impact : {0.5, 0.2}) {
      for (double alpha : {1.0, 0.2}) {
        InstanceSpec instance = two_armed_biased(alpha);
        instance.impact_constant = true;
        instance.impact_value = impact;
        preset.entries.push_back({grid_label("alnetc", impact, alpha), instance,
                                  alnetc_spec(1.5, 15.0)});
        preset.entries.push_back({grid_label("ucb_list", impact, alpha),
                                  instance, ucblist_spec(1.5)});
      }
    }
    return preset;
  }
  throw ConfigError("preset", "unknown preset: " + name);
}

}  // namespace urnbandit
