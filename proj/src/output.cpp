#include "urnbandit/output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace urnbandit {
namespace {

constexpr const char* kCsvEol = "\r\n";

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("failed to format a number");
  }
  return std::string(buffer, result.ptr);
}

void write_simulation_csv(const std::string& path,
                          const std::vector<LabeledAggregate>& results) {
  std::ofstream out = open_output(path);
  out << "t,policy,mean_regret,std_regret,mean_payment,std_payment,n_trials"
      << kCsvEol;
  for (const LabeledAggregate& labeled : results) {
    const AggregateResult& agg = labeled.result;
    for (size_t i = 0; i < agg.checkpoints.size(); ++i) {
      out << agg.checkpoints[i] << ',' << labeled.label << ','
          << format_double(agg.mean_regret(i)) << ','
          << format_double(agg.std_regret(i)) << ','
          << format_double(agg.mean_payment(i)) << ','
          << format_double(agg.std_payment(i)) << ',' << agg.trial_count
          << kCsvEol;
    }
  }
  if (!out) throw std::runtime_error("failed to write " + path);
}

void write_simulation_json(const std::string& path,
                           const std::vector<LabeledAggregate>& results) {
  nlohmann::json rows = nlohmann::json::array();
  for (const LabeledAggregate& labeled : results) {
    const AggregateResult& agg = labeled.result;
    for (size_t i = 0; i < agg.checkpoints.size(); ++i) {
      rows.push_back({{"t", agg.checkpoints[i]},
                      {"policy", labeled.label},
                      {"mean_regret", agg.mean_regret(i)},
                      {"std_regret", agg.std_regret(i)},
                      {"mean_payment", agg.mean_payment(i)},
                      {"std_payment", agg.std_payment(i)},
                      {"n_trials", agg.trial_count}});
    }
  }
  write_json_file(path, rows);
}

void write_bounds_csv(const std::string& path,
                      const std::vector<BoundsRow>& rows) {
  std::ofstream out = open_output(path);
  out << "T,thm1_regret_main,thm1_payment,thm2_regret,thm2_payment,"
         "tau_n_bound,tau_gap_bound"
      << kCsvEol;
  for (const BoundsRow& row : rows) {
    out << format_double(row.horizon) << ','
        << format_double(row.thm1_regret_main) << ','
        << format_double(row.thm1_payment) << ','
        << format_double(row.thm2_regret) << ','
        << format_double(row.thm2_payment) << ','
        << format_double(row.tau_n_bound) << ','
        << format_double(row.tau_gap_bound) << kCsvEol;
  }
  if (!out) throw std::runtime_error("failed to write " + path);
}

void write_bounds_json(const std::string& path,
                       const std::vector<BoundsRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const BoundsRow& row : rows) {
    out.push_back({{"T", row.horizon},
                   {"thm1_regret_main", row.thm1_regret_main},
                   {"thm1_payment", row.thm1_payment},
                   {"thm2_regret", row.thm2_regret},
                   {"thm2_payment", row.thm2_payment},
                   {"tau_n_bound", row.tau_n_bound},
                   {"tau_gap_bound", row.tau_gap_bound}});
  }
  write_json_file(path, out);
}

void write_json_file(const std::string& path, const nlohmann::json& payload) {
  std::ofstream out = open_output(path);
  out << payload.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed to write " + path);
}

std::string sidecar_path(const std::string& output_path) {
  const size_t slash = output_path.find_last_of("/\\");
  const size_t dot = output_path.find_last_of('.');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return output_path + ".meta.json";
  }
  return output_path.substr(0, dot) + ".meta.json";
}

nlohmann::json aggregate_summary(const AggregateResult& result) {
  nlohmann::json summary{{"n_trials", result.trial_count},
                         {"misidentification_rate",
                          result.misidentification_rate()},
                         {"censored_fraction", result.censored_fraction()}};
  if (const auto mean = result.dominance_mean()) {
    summary["dominance_time_mean"] = *mean;
  }
  if (const auto median = result.dominance_median()) {
    summary["dominance_time_median"] = *median;
  }
  return summary;
}

}  // namespace urnbandit
