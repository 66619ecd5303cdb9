#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace wigner::cli {

inline constexpr const char* kArtifactVersion = "wignerlab 1.0.0";

struct ExperimentConfig {
  std::string subcommand;

  // Ensemble.
  std::size_t n = 200;
  std::string law = "gaussian";
  double t = 0.0;
  std::uint64_t seed = 1;

  std::size_t reps = 1;
  int workers = 1;
  std::string out;

  // dos / stieltjes / spacing / kernel
  std::vector<double> energies{0.0};
  std::string window_kind = "K";
  std::vector<double> scales{40.0};
  std::vector<double> deltas;
  std::vector<double> etas{0.01};

  // deloc
  std::string p = "inf";
  double bulk_kappa = 0.2;
  double window_k = 0.0;
  std::vector<double> m_grid;

  // spacing
  double half_width = 100.0;
  double bin_width = 0.1;
  double r_max = 3.0;

  // dbm
  std::vector<double> times{0.0, 0.1, 0.2};

  // flow
  unsigned order = 1;
  std::vector<double> t_values{0.05, 0.1, 0.2};
  double sigma = 1.0;
  std::string grid_file;
  double grid_half_width = 16.0;
  std::size_t grid_points = 4096;

  // kernel
  std::string y_source = "semicircle-quantiles";
  double x1 = 0.0;
  std::vector<double> x2{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::optional<double> kdelta, kkappa, kr, ks, ktolerance;
  std::optional<std::size_t> knodes;

  // sample
  bool write_matrix = false;

  // Throws ConfigError on invalid or inconsistent fields.
  void validate() const;
  // Echo of the fields relevant to the subcommand.
  nlohmann::json to_json() const;
};

struct CsvFile {
  std::string suffix;  // empty for the main table, else written to <out>_<suffix>.csv
  std::string content;
};

struct ResultManifest {
  nlohmann::json config;
  std::string version = kArtifactVersion;
  // Execution details that may differ between otherwise identical runs.
  double wall_time_seconds = 0.0;
  int workers = 1;
  nlohmann::json statistics = nlohmann::json::object();
  nlohmann::json criteria = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct RunResult {
  ResultManifest manifest;
  std::vector<CsvFile> tables;
};

// Dispatches to the module behind config.subcommand. Deterministic in
// (config minus workers).
RunResult run(const ExperimentConfig& config);

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool all_pass() const;
  std::string text() const;
};

struct SelftestOptions {
  // Replaces the semicircle density inside the normalization and boundary-value
  // checks. Used by the mutation test.
  std::function<double(double)> rho_override;
};

SelftestReport selftest(const SelftestOptions& options = {});

// Writes <out>.csv, <out>_<suffix>.csv and <out>.json.
void write_result(const RunResult& result, const std::string& out);

// Merges a key=value config file into argv: keys from the top level, the
// [ensemble] section and the section named after the subcommand become flags,
// unless the command line already sets them.
std::vector<std::string> merge_config_file(const std::vector<std::string>& args,
                                           const std::vector<std::string>& subcommands);
std::map<std::string, std::map<std::string, std::string>> parse_config_text(const std::string& text);

// Full command line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

// CSV helpers.
std::string format_double(double x);
std::string csv_field(const std::string& s);

}  // namespace wigner::cli
