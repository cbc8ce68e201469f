#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cfgbounds/bounds.hpp"
#include "cfgbounds/configspace.hpp"

namespace cfgbounds::pipeline {

struct PipelineConfig {
  std::uint64_t seed = 1;
  int instances = 50;
  configspace::WdpGenConfig generator;
  configspace::RulePair rules;
  /// Empty means auto: select_kappa over the instances.
  std::optional<std::int64_t> kappa;
  std::int64_t hard_cap = 2000;
  int r_grid_points = 101;
  double grid_eps = 1e-4;
  solver::NodePolicy node_policy = solver::NodePolicy::best_bound;
  int j_lo = 1;
  int j_hi = 64;
  std::uint64_t n_lo = 100;
  std::uint64_t n_hi = 100000000;
  int n_points = 25;
  double delta = 0.01;
  bool paper_mode = false;
  std::filesystem::path out = "out";

  void validate() const;
};

/// Layout under `out`: manifest.json, instances/<id>.json, kappa.json,
/// duals/<id>.json, profile.csv, bounds.csv, reported.csv, counterexample.json.
std::string instance_id(int index);
std::filesystem::path manifest_path(const PipelineConfig& cfg);
std::filesystem::path instance_path(const PipelineConfig& cfg, const std::string& id);
std::filesystem::path dual_path(const PipelineConfig& cfg, const std::string& id);

struct GenSummary {
  std::vector<std::string> ids;
};

/// Writes `instances` instance files plus a manifest with per-instance seeds.
GenSummary cmd_gen(const PipelineConfig& cfg);

struct DualsSummary {
  std::int64_t kappa = 0;
  bool kappa_saturated = false;
  std::size_t extracted = 0;
  std::size_t skipped = 0;
};

/// Extracts one dual per manifest instance. Existing dual files whose
/// kappa, grid_eps and rules match are kept (resumable). Throws IoError
/// listing any instance files that are missing.
DualsSummary cmd_duals(const PipelineConfig& cfg);

struct BoundsSummary {
  bounds::ApproxProfile profile;
  bounds::BoundCurve curve;
  std::int64_t kappa = 0;
  int n_vars = 0;
};

/// Profile and bound curve from the extracted duals; writes profile.csv,
/// bounds.csv and reported.csv.
BoundsSummary cmd_bounds(const PipelineConfig& cfg);

/// The bound computation of cmd_bounds without any file access.
BoundsSummary compute_bounds(const std::vector<configspace::DualExtraction>& duals,
                             const PipelineConfig& cfg);

struct CounterexampleConfig {
  std::vector<double> gammas{0.05, 0.1, 0.2};
  std::vector<double> ps{1.0, 2.0, 3.0};
  std::vector<int> ns{4, 8, 12};
  std::vector<double> cs{0.4, 0.45};

  void validate() const;
};

struct CounterexampleReport {
  std::string json;
  bool all_pass = false;
};

/// Runs the approximation-error sweep, the knife-edge sup check and the
/// exhaustive lower-bound demo for every parameter combination.
CounterexampleReport cmd_counterexample(const CounterexampleConfig& cfg);

/// JSON of the k-piece fit of the dual stored at `dual_file`.
std::string cmd_fit(const std::filesystem::path& dual_file, int k, bool sum_recurrence = false);

struct RadOptions {
  /// 0 selects exact enumeration (N <= 20); otherwise Monte-Carlo draws.
  std::uint64_t mc_draws = 0;
  std::uint64_t seed = 1;
};

/// JSON with |A|, the empirical Rademacher complexity and its two upper
/// bounds for the dual files given.
std::string cmd_rad(const std::vector<std::filesystem::path>& dual_files, const RadOptions& options);

/// Loads the duals of every manifest instance (IoError if any is missing).
std::vector<configspace::DualExtraction> load_duals(const PipelineConfig& cfg);

}  // namespace cfgbounds::pipeline
