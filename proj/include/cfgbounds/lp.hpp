#pragma once

#include <cstddef>
#include <vector>

namespace cfgbounds::lp {

/// maximize c.x  subject to  A x <= b,  0 <= x_j <= upper_j.
/// `a` is dense row-major, rows x cols.
struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
  std::vector<double> upper;
};

enum class Status { optimal, infeasible };

struct Solution {
  Status status = Status::infeasible;
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

struct Options {
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
  int degenerate_limit = 50;
};

/// Two-phase bounded-variable primal simplex on a dense tableau. Dantzig
/// pricing with a permanent fallback to Bland's rule once degeneracy
/// persists, so the method always terminates. Deterministic.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace cfgbounds::lp
