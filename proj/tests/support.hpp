#include <algorithm>
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cfgbounds/piecewise.hpp"
#include "cfgbounds/solver.hpp"

namespace testing_support {

using cfgbounds::PiecewiseConstant;

/// Step function on [0, 1) with `t` segments at random sorted breakpoints and
/// values drawn from `levels` (0 means continuous uniform values).
inline PiecewiseConstant random_pwc(std::mt19937_64& gen, int t, int levels = 0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> cuts;
  while (static_cast<int>(cuts.size()) < t - 1) {
    const double c = u(gen);
    if (c > 0.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> breaks{0.0};
  breaks.insert(breaks.end(), cuts.begin(), cuts.end());
  breaks.push_back(1.0);
  std::vector<double> values;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (levels > 0) {
      std::uniform_int_distribution<int> pick(0, levels);
      values.push_back(static_cast<double>(pick(gen)) / levels);
    } else {
      values.push_back(u(gen));
    }
  }
  return PiecewiseConstant(std::move(breaks), std::move(values));
}

/// Values of a random function with exactly `t` canonical segments
/// (adjacent values forced to differ).
inline std::vector<double> distinct_neighbour_values(std::mt19937_64& gen, int t) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v;
  while (static_cast<int>(v.size()) < t) {
    const double x = u(gen);
    if (v.empty() || x != v.back()) v.push_back(x);
  }
  return v;
}

/// max c.z over all 0/1 points satisfying the rows (pure binary programs).
inline double enumerate_optimum(const cfgbounds::solver::IntegerProgram& ip) {
  double best = -INFINITY;
  std::vector<double> z(static_cast<std::size_t>(ip.n));
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << ip.n); ++code) {
    for (int j = 0; j < ip.n; ++j) z[static_cast<std::size_t>(j)] = (code >> j) & 1U ? 1.0 : 0.0;
    if (ip.feasible(z)) best = std::max(best, ip.objective(z));
  }
  return best;
}

}  // namespace testing_support
