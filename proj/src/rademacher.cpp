#include "cfgbounds/rademacher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "cfgbounds/error.hpp"
#include "cfgbounds/parallel.hpp"

namespace cfgbounds::rademacher {

DualSample::DualSample(std::vector<PiecewiseConstant> duals) : duals_(std::move(duals)) {
  if (duals_.empty()) throw ArgumentError("DualSample: at least one dual is required");
  for (const auto& d : duals_) {
    if (!d.same_domain(duals_.front())) throw DomainError("DualSample: duals have different domains");
  }
}

std::size_t DualSample::max_segments() const {
  std::size_t best = 0;
  for (const auto& d : duals_) best = std::max(best, d.segments());
  return best;
}

std::vector<std::vector<double>> distinct_vectors(const DualSample& sample) {
  const std::size_t n = sample.size();
  std::vector<double> breaks;
  for (const auto& d : sample.duals()) breaks.insert(breaks.end(), d.breaks().begin(), d.breaks().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Sweep refined regions left to right, advancing one cursor per dual.
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::vector<double>> out;
  out.reserve(breaks.size());
  for (std::size_t r = 0; r + 1 < breaks.size(); ++r) {
    const double left = breaks[r];
    std::vector<double> vec(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = sample[i];
      while (d.breaks()[cursor[i] + 1] <= left) ++cursor[i];
      vec[i] = d.values()[cursor[i]];
    }
    out.push_back(std::move(vec));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

inline double best_correlation(const std::vector<std::vector<double>>& vectors,
                               std::uint64_t sign_bits) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& a : vectors) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dot += ((sign_bits >> i) & 1U) ? a[i] : -a[i];
    }
    best = std::max(best, dot);
  }
  return best;
}

void check_exact_size(std::size_t n) {
  if (n > kExactMaxN) {
    throw ResourceError("empirical_rad_exact: N=" + std::to_string(n) +
                        " exceeds the exact enumeration cap of " + std::to_string(kExactMaxN) +
                        "; use the Monte-Carlo estimator");
  }
}

double exact_impl(const std::vector<std::vector<double>>& vectors, bool parallel) {
  const std::size_t n = vectors.front().size();
  check_exact_size(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t blocks = (total + parallel::kReduceBlock - 1) / parallel::kReduceBlock;
  std::vector<double> partial(blocks, 0.0);
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = b * parallel::kReduceBlock;
    const std::uint64_t end = std::min(total, begin + parallel::kReduceBlock);
    double acc = 0.0;
    for (std::uint64_t s = begin; s < end; ++s) acc += best_correlation(vectors, s);
    partial[b] = acc;
  };
  if (parallel) {
    const auto nb = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(parallel::thread_count())
    for (std::int64_t b = 0; b < nb; ++b) run_block(static_cast<std::uint64_t>(b));
  } else {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  }
  return parallel::blocked_sum(partial) / static_cast<double>(total) / static_cast<double>(n);
}

// One 64-bit word per 64 coordinates; the generator for block b is seeded
// with (seed, b) through std::seed_seq.
void mc_block(const std::vector<std::vector<double>>& vectors, std::uint64_t seed, std::uint64_t b,
              std::uint64_t count, double& sum, double& sum_sq) {
  const std::size_t n = vectors.front().size();
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  std::mt19937_64 gen(seq);
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(words);
  sum = 0.0;
  sum_sq = 0.0;
  for (std::uint64_t d = 0; d < count; ++d) {
    for (auto& w : bits) w = gen();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : vectors) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += ((bits[i / 64] >> (i % 64)) & 1U) ? a[i] : -a[i];
      }
      best = std::max(best, dot);
    }
    const double v = best / static_cast<double>(n);
    sum += v;
    sum_sq += v * v;
  }
}

McEstimate mc_impl(const DualSample& sample, std::uint64_t draws, std::uint64_t seed,
                   bool parallel) {
  if (draws < 1) throw ArgumentError("empirical_rad_mc: draws must be >= 1");
  const auto vectors = distinct_vectors(sample);
  const std::uint64_t blocks = (draws + parallel::kReduceBlock - 1) / parallel::kReduceBlock;
  std::vector<double> sums(blocks);
  std::vector<double> squares(blocks);
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = b * parallel::kReduceBlock;
    const std::uint64_t count = std::min<std::uint64_t>(parallel::kReduceBlock, draws - begin);
    mc_block(vectors, seed, b, count, sums[b], squares[b]);
  };
  if (parallel) {
    const auto nb = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(parallel::thread_count())
    for (std::int64_t b = 0; b < nb; ++b) run_block(static_cast<std::uint64_t>(b));
  } else {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  }
  const double n = static_cast<double>(draws);
  const double mean = parallel::blocked_sum(sums) / n;
  const double second = parallel::blocked_sum(squares) / n;
  double var = draws > 1 ? (second - mean * mean) * n / (n - 1.0) : 0.0;
  if (var < 0.0) var = 0.0;
  return {mean, std::sqrt(var / n), draws};
}

}  // namespace

double rad_of_vectors(const std::vector<std::vector<double>>& vectors) {
  if (vectors.empty()) throw ArgumentError("rad_of_vectors: empty vector set");
  return exact_impl(vectors, true);
}

double empirical_rad_exact(const DualSample& sample) {
  check_exact_size(sample.size());
  return exact_impl(distinct_vectors(sample), true);
}

double empirical_rad_exact_serial(const DualSample& sample) {
  check_exact_size(sample.size());
  return exact_impl(distinct_vectors(sample), false);
}

McEstimate empirical_rad_mc(const DualSample& sample, std::uint64_t draws, std::uint64_t seed) {
  return mc_impl(sample, draws, seed, true);
}

McEstimate empirical_rad_mc_serial(const DualSample& sample, std::uint64_t draws,
                                   std::uint64_t seed) {
  return mc_impl(sample, draws, seed, false);
}

}  // namespace cfgbounds::rademacher
