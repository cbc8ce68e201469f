#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cfgbounds/piecewise.hpp"

namespace cfgbounds::rademacher {

/// Duals of one function family evaluated on a sample of N instances; all on
/// a common parameter domain.
class DualSample {
 public:
  explicit DualSample(std::vector<PiecewiseConstant> duals);

  std::size_t size() const { return duals_.size(); }
  const std::vector<PiecewiseConstant>& duals() const { return duals_; }
  const PiecewiseConstant& operator[](std::size_t i) const { return duals_[i]; }
  /// Largest canonical segment count among the duals.
  std::size_t max_segments() const;

 private:
  std::vector<PiecewiseConstant> duals_;
};

/// The finite set A of value vectors (f_1(r), ..., f_N(r)) as r ranges over
/// the domain, deduplicated and sorted lexicographically.
std::vector<std::vector<double>> distinct_vectors(const DualSample& sample);

inline constexpr std::size_t kExactMaxN = 20;

/// (1/N) E_sigma[max_{a in A} sigma . a] by enumerating all 2^N sign vectors.
/// Throws ResourceError when N > 20.
double empirical_rad_exact(const DualSample& sample);
double empirical_rad_exact_serial(const DualSample& sample);

/// Same expectation over explicit vectors (used by the counterexample module
/// and tests that build A directly).
double rad_of_vectors(const std::vector<std::vector<double>>& vectors);

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t draws = 0;
};

/// Monte-Carlo estimate over `draws` uniform sign vectors. Sign vectors are
/// drawn in fixed blocks, each from its own generator seeded from
/// (seed, block index), so the output is bit-identical for any worker count.
McEstimate empirical_rad_mc(const DualSample& sample, std::uint64_t draws, std::uint64_t seed);
McEstimate empirical_rad_mc_serial(const DualSample& sample, std::uint64_t draws,
                                   std::uint64_t seed);

}  // namespace cfgbounds::rademacher
