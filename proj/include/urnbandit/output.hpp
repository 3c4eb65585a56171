#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "urnbandit/harness.hpp"

namespace urnbandit {

// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double value);

struct LabeledAggregate {
  std::string label;
  AggregateResult result;
};

// RFC 4180 CSV with header
// t,policy,mean_regret,std_regret,mean_payment,std_payment,n_trials
// and one row per (checkpoint x policy).
void write_simulation_csv(const std::string& path,
                          const std::vector<LabeledAggregate>& results);

// The same rows as a JSON array.
void write_simulation_json(const std::string& path,
                           const std::vector<LabeledAggregate>& results);

struct BoundsRow {
  double horizon;
  double thm1_regret_main;
  double thm1_payment;
  double thm2_regret;
  double thm2_payment;
  double tau_n_bound;
  double tau_gap_bound;
};

void write_bounds_csv(const std::string& path,
                      const std::vector<BoundsRow>& rows);

void write_bounds_json(const std::string& path,
                       const std::vector<BoundsRow>& rows);

void write_json_file(const std::string& path, const nlohmann::json& payload);

// results.csv -> results.meta.json (the final extension is replaced).
std::string sidecar_path(const std::string& output_path);

// Per-policy summary block used in sidecars.
nlohmann::json aggregate_summary(const AggregateResult& result);

}  // namespace urnbandit
