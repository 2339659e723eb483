#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace physnn {

/// Resolved run configuration. The text form is a flat INI document with one
/// section per module; parse_config fails on unknown sections or keys, and
/// echo_config writes every field back so a run can be reproduced from its
/// echoed file alone.
struct ExperimentConfig {
  // [data]
  double omega = 0.51;
  double phi = 0.50001;
  std::int64_t n_points = 11;
  double noise_frac = 0.2;
  double lo = 0.0;
  double hi = 4.0 * std::numbers::pi;

  // [model]
  double nu = 0.51;
  std::int64_t n_hidden = 50;

  // [train]
  double lambda = 0.1;
  std::int64_t iterations = 2000;
  std::string optimizer = "adam";
  double lr = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::int64_t n_pivots = 100;

  // [gp]
  bool gp_enabled = true;
  double gp_noise_variance = 0.04;

  // [correspondence]
  bool corr_enabled = true;
  std::int64_t mc_samples = 100000;
  std::int64_t corr_grid_side = 5;

  // [output]
  std::string out_dir = "out";
  std::int64_t grid_points = 400;

  // [run]
  std::uint64_t seed = 0;
  std::string variant = "all";
};

/// Parse an INI document on top of `base` (defaults when omitted).
ExperimentConfig parse_config(const std::string& text,
                              const ExperimentConfig& base = ExperimentConfig{});

/// Canonical INI form of a resolved configuration; numbers round-trip
/// bitwise through parse_config.
std::string echo_config(const ExperimentConfig& config);

struct VariantOutcome {
  std::string name;
  bool diverged = false;
  int divergence_iteration = -1;
  double final_data_loss = 0.0;
  double final_physics_loss = 0.0;
  double final_total_loss = 0.0;
  std::string trace_path;
  std::string solution_path;
};

struct ExperimentReport {
  std::string out_dir;
  std::string config_path;
  std::string dataset_path;
  std::string summary_path;
  std::vector<VariantOutcome> variants;
  std::string gp_path;
  std::string correspondence_path;
  std::vector<std::string> svg_paths;
  std::vector<std::string> warnings;
};

/// Full pipeline: generate data, train the selected variants from one shared
/// derived seed, evaluate each survivor on a dense grid against the clean
/// truth, optionally condition a GP on the same data and check the
/// kernel/network covariance match, and write every artifact (CSV, SVG,
/// config echo, JSON summary) under config.out_dir. Byte-identical outputs
/// for identical configurations. A diverging variant is recorded in its
/// summary entry and does not abort the others.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace physnn
