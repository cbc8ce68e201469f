#include "cfgbounds/dpfit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "cfgbounds/error.hpp"
#include "cfgbounds/parallel.hpp"

namespace cfgbounds::dpfit {

RangeTables range_tables(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("range_tables: empty value sequence");
  const std::size_t t = values.size();
  RangeTables tables(t);
  for (std::size_t i = 0; i < t; ++i) {
    double hi = values[i];
    double lo = values[i];
    tables.upper_[i * t + i] = hi;
    tables.lower_[i * t + i] = lo;
    for (std::size_t j = i + 1; j < t; ++j) {
      if (values[j] < lo) {
        lo = values[j];
      } else if (values[j] > hi) {
        hi = values[j];
      }
      tables.upper_[i * t + j] = hi;
      tables.lower_[i * t + j] = lo;
    }
  }
  return tables;
}

double block_error(double upper, double lower) {
  const double mid = (upper + lower) * 0.5;
  return std::max(upper - mid, mid - lower);
}

namespace {

inline double combine(Combine how, double prefix, double block) {
  return how == Combine::max ? std::max(prefix, block) : prefix + block;
}

constexpr std::int32_t kNoSplit = -1;

struct DpTables {
  std::size_t t = 0;
  std::size_t k = 0;
  // errors[j-1] = C(t-1, j) in 0-based segment indexing.
  std::vector<double> errors;
  // arg[(j-1) * t + i]: last index of the preceding prefix, or kNoSplit.
  std::vector<std::int32_t> arg;
};

// One DP row: cur[i] = C(i, j) given prev[i] = C(i, j-1).
inline void fill_cell(std::span<const double> c, const std::vector<double>& first,
                      const std::vector<double>& prev, Combine how, std::size_t i, double& out,
                      std::int32_t& out_arg) {
  double best = first[i];
  std::int32_t best_arg = kNoSplit;
  double hi = c[i];
  double lo = c[i];
  // s is the last segment of the prefix; the trailing block is s+1..i.
  for (std::size_t step = 0; step < i; ++step) {
    const std::size_t s = i - 1 - step;
    if (c[s + 1] > hi) hi = c[s + 1];
    if (c[s + 1] < lo) lo = c[s + 1];
    const double cand = combine(how, prev[s], block_error(hi, lo));
    // Descending s: on ties the later (smaller) split index wins, but never
    // displaces the single-block option.
    if (cand < best || (cand == best && best_arg != kNoSplit)) {
      best = cand;
      best_arg = static_cast<std::int32_t>(s);
    }
  }
  out = best;
  out_arg = best_arg;
}

DpTables run_dp(const PiecewiseConstant& f, std::size_t k, Combine how, bool parallel) {
  const auto& c = f.values();
  const std::size_t t = c.size();
  DpTables dp;
  dp.t = t;
  dp.k = k;
  dp.errors.assign(k, 0.0);
  dp.arg.assign(k * t, kNoSplit);

  std::vector<double> first(t);
  {
    double hi = c[0];
    double lo = c[0];
    for (std::size_t i = 0; i < t; ++i) {
      hi = std::max(hi, c[i]);
      lo = std::min(lo, c[i]);
      first[i] = block_error(hi, lo);
    }
  }
  dp.errors[0] = first[t - 1];

  std::vector<double> prev = first;
  std::vector<double> cur(t);
  const std::span<const double> cs(c);
  for (std::size_t j = 2; j <= k; ++j) {
    std::int32_t* arg_row = dp.arg.data() + (j - 1) * t;
    const auto n = static_cast<std::int64_t>(t);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 32) num_threads(parallel::thread_count())
      for (std::int64_t i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        fill_cell(cs, first, prev, how, ii, cur[ii], arg_row[ii]);
      }
    } else {
      for (std::int64_t i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        fill_cell(cs, first, prev, how, ii, cur[ii], arg_row[ii]);
      }
    }
    dp.errors[j - 1] = cur[t - 1];
    std::swap(prev, cur);
  }
  return dp;
}

FitResult recover(const PiecewiseConstant& f, const DpTables& dp) {
  const auto& c = f.values();
  const auto& b = f.breaks();
  // Walk back from the full prefix, collecting block start indices.
  std::vector<std::size_t> starts;
  std::int64_t i = static_cast<std::int64_t>(dp.t) - 1;
  std::size_t j = dp.k;
  while (true) {
    const std::int32_t s = j >= 2 ? dp.arg[(j - 1) * dp.t + static_cast<std::size_t>(i)] : kNoSplit;
    if (s == kNoSplit) {
      starts.push_back(0);
      break;
    }
    starts.push_back(static_cast<std::size_t>(s) + 1);
    i = s;
    --j;
  }
  std::reverse(starts.begin(), starts.end());

  std::vector<double> breaks;
  std::vector<double> values;
  breaks.push_back(b.front());
  for (std::size_t blk = 0; blk < starts.size(); ++blk) {
    const std::size_t begin = starts[blk];
    const std::size_t end = blk + 1 < starts.size() ? starts[blk + 1] : dp.t;  // exclusive
    const auto [lo_it, hi_it] = std::minmax_element(c.begin() + begin, c.begin() + end);
    values.push_back((*hi_it + *lo_it) * 0.5);
    breaks.push_back(b[end]);
  }

  FitResult out{dp.errors[dp.k - 1], PiecewiseConstant(std::move(breaks), std::move(values)), {}};
  out.splits.assign(starts.begin() + 1, starts.end());
  return out;
}

std::size_t effective_k(const PiecewiseConstant& f, int k) {
  if (k < 1) throw ArgumentError("fit: k must be >= 1, got " + std::to_string(k));
  return std::min<std::size_t>(static_cast<std::size_t>(k), f.segments());
}

}  // namespace

FitResult fit(const PiecewiseConstant& f, int k, FitOptions options) {
  return recover(f, run_dp(f, effective_k(f, k), options.combine, true));
}

FitResult fit_serial(const PiecewiseConstant& f, int k, FitOptions options) {
  return recover(f, run_dp(f, effective_k(f, k), options.combine, false));
}

std::vector<double> fit_errors(const PiecewiseConstant& f, int k_max, FitOptions options) {
  const std::size_t k = effective_k(f, k_max);
  std::vector<double> errors = run_dp(f, k, options.combine, true).errors;
  errors.resize(static_cast<std::size_t>(k_max), 0.0);
  return errors;
}

double brute_force_fit(const PiecewiseConstant& f, int k) {
  if (k < 1) throw ArgumentError("brute_force_fit: k must be >= 1");
  const auto& c = f.values();
  const std::size_t t = c.size();
  if (t > kBruteForceMaxSegments) {
    throw ResourceError("brute_force_fit: t=" + std::to_string(t) + " exceeds the enumeration cap " +
                        std::to_string(kBruteForceMaxSegments));
  }
  const std::size_t blocks = std::min<std::size_t>(static_cast<std::size_t>(k), t);
  const std::size_t gaps = t - 1;

  // Error of the midpoint constant on c[begin, end), measured directly.
  auto block_cost = [&](std::size_t begin, std::size_t end) {
    double hi = c[begin];
    double lo = c[begin];
    for (std::size_t q = begin; q < end; ++q) {
      hi = std::max(hi, c[q]);
      lo = std::min(lo, c[q]);
    }
    const double mid = (hi + lo) * 0.5;
    double worst = 0.0;
    for (std::size_t q = begin; q < end; ++q) worst = std::max(worst, std::abs(c[q] - mid));
    return worst;
  };

  double best = std::numeric_limits<double>::infinity();
  // Bit g of `mask` set = a block boundary after segment g.
  const std::uint32_t limit = std::uint32_t{1} << gaps;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != blocks - 1) continue;
    double worst = 0.0;
    std::size_t begin = 0;
    for (std::size_t g = 0; g < gaps; ++g) {
      if (mask & (std::uint32_t{1} << g)) {
        worst = std::max(worst, block_cost(begin, g + 1));
        begin = g + 1;
      }
    }
    worst = std::max(worst, block_cost(begin, t));
    best = std::min(best, worst);
  }
  return best;
}

}  // namespace cfgbounds::dpfit
