#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfgbounds/piecewise.hpp"

namespace cfgbounds::dpfit {

/// Running max/min over every contiguous range of segment values.
/// Indices are 0-based; `upper(i, j)` is max(c_i..c_j) for i <= j.
class RangeTables {
 public:
  explicit RangeTables(std::size_t t) : t_(t), upper_(t * t), lower_(t * t) {}

  std::size_t size() const { return t_; }
  double upper(std::size_t i, std::size_t j) const { return upper_[i * t_ + j]; }
  double lower(std::size_t i, std::size_t j) const { return lower_[i * t_ + j]; }

 private:
  friend RangeTables range_tables(std::span<const double> values);
  std::size_t t_;
  std::vector<double> upper_;
  std::vector<double> lower_;
};

/// O(t^2) incremental tables. Throws ArgumentError on empty input.
RangeTables range_tables(std::span<const double> values);

/// Sup-norm error attained by the midpoint constant on a block whose values
/// span [lower, upper]. Mathematically (upper - lower) / 2; evaluated as the
/// distance actually realised by the floating-point midpoint so that a fit's
/// reported error matches linf_distance bit for bit.
double block_error(double upper, double lower);

/// How per-block errors are combined across blocks. `max` is the sup-norm
/// objective; `sum` reproduces the additive recurrence line literally and is
/// kept for comparison runs only.
enum class Combine { max, sum };

struct FitOptions {
  Combine combine = Combine::max;
};

struct FitResult {
  /// Optimal C(t, k).
  double error = 0.0;
  /// Midpoint value per block, canonicalised (so possibly fewer than k pieces).
  PiecewiseConstant approximant;
  /// Input-segment counts at which a new block starts, ascending; e.g. {3}
  /// means blocks [1..3] and [4..t] (1-based segment numbering).
  std::vector<std::size_t> splits;
};

/// Best approximation of `f` by a step function with at most k pieces.
/// k > t is treated as k = t. Rows of the DP are filled in parallel.
FitResult fit(const PiecewiseConstant& f, int k, FitOptions options = {});

/// Serial reference for `fit`; identical output.
FitResult fit_serial(const PiecewiseConstant& f, int k, FitOptions options = {});

/// C(t, j) for j = 1..k_max from a single DP pass (entries beyond t are 0).
std::vector<double> fit_errors(const PiecewiseConstant& f, int k_max, FitOptions options = {});

/// Exhaustive enumeration of split placements (t <= 20). Independent of the
/// DP; used as its oracle.
double brute_force_fit(const PiecewiseConstant& f, int k);

inline constexpr std::size_t kBruteForceMaxSegments = 20;

}  // namespace cfgbounds::dpfit
