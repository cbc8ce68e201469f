#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfgbounds/bounds.hpp"
#include "cfgbounds/piecewise.hpp"
#include "cfgbounds/solver.hpp"

namespace cfgbounds::configspace {

/// Synthetic winner-determination (set packing) generator. Each bid asks for
/// a bundle of distinct goods, size uniform in [bundle_min, bundle_max]
/// (clamped to the number of goods), at a price of
/// bundle size * U[price_noise_lo, price_noise_hi], quantised to 1/1024 so
/// that objective sums are exact in double precision.
struct WdpGenConfig {
  int goods = 10;
  int bids = 20;
  int bundle_min = 2;
  int bundle_max = 5;
  double price_noise_lo = 0.8;
  double price_noise_hi = 1.25;
  std::uint64_t seed = 0;

  void validate() const;
};

solver::IntegerProgram generate_instance(const WdpGenConfig& cfg);

/// Per-instance seed derived from a root seed and an index (std::seed_seq).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

struct RulePair {
  solver::ScoreRule first = solver::ScoreRule::L;
  solver::ScoreRule second = solver::ScoreRule::S;

  /// "L-S" style label.
  std::string label() const;
  friend bool operator==(const RulePair&, const RulePair&) = default;
  /// Parses "L,S" or "L-S".
  static RulePair parse(const std::string& text);
};

struct ExtractOptions {
  double grid_eps = 1e-4;
  /// Base grid spacing is 2^-base_grid_log2.
  int base_grid_log2 = 7;
  solver::NodePolicy node_policy = solver::NodePolicy::best_bound;
};

/// Normalised tree size as a function of the mixing weight r in [0, 1).
struct DualExtraction {
  std::string instance;
  PiecewiseConstant dual = PiecewiseConstant::constant(0.0, 1.0, 1.0);
  double grid_eps = 0.0;
  std::int64_t kappa = 1;
  RulePair rules;
  solver::NodePolicy node_policy = solver::NodePolicy::best_bound;
  int n_vars = 0;
  /// Number of branch-and-bound runs spent on the extraction.
  std::size_t evaluations = 0;
};

/// Adaptive-grid extraction: evaluate the base grid, then bisect every
/// interval whose endpoints disagree until it is narrower than grid_eps and
/// put the breakpoint at its midpoint. Plateaus hidden strictly between two
/// equal grid values are not detected.
DualExtraction extract_dual(const solver::IntegerProgram& ip, RulePair rules, std::int64_t kappa,
                            const ExtractOptions& options = {}, std::string instance = {});

/// extract_dual over many instances; instances are processed in parallel.
std::vector<DualExtraction> extract_duals(const std::vector<solver::IntegerProgram>& instances,
                                          const std::vector<std::string>& ids, RulePair rules,
                                          std::int64_t kappa, const ExtractOptions& options = {});
std::vector<DualExtraction> extract_duals_serial(const std::vector<solver::IntegerProgram>& instances,
                                                 const std::vector<std::string>& ids, RulePair rules,
                                                 std::int64_t kappa,
                                                 const ExtractOptions& options = {});

/// `points` evenly spaced values covering [0, 1].
std::vector<double> uniform_r_grid(int points = 101);

struct KappaSelection {
  std::int64_t kappa = 1;
  /// Some run hit hard_cap; kappa is then hard_cap.
  bool saturated = false;
};

/// Largest tree size observed over instances x r_grid, each run capped at hard_cap.
KappaSelection select_kappa(const std::vector<solver::IntegerProgram>& instances, RulePair rules,
                            const std::vector<double>& r_grid, std::int64_t hard_cap,
                            solver::NodePolicy policy = solver::NodePolicy::best_bound);

/// e_hat_j = mean over duals of the optimal j-piece sup-norm error, for
/// j in [j_lo, j_hi]; also records j* (largest canonical piece count).
bounds::ApproxProfile approx_profile(const std::vector<PiecewiseConstant>& duals, int j_lo, int j_hi);

}  // namespace cfgbounds::configspace
