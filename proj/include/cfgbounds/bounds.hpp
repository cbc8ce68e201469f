#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cfgbounds::bounds {

/// Constants of the published integer-programming experiment, used when
/// `paper_mode` is requested.
inline constexpr double kPaperDelta = 0.01;
inline constexpr double kPaperHalfDelta = 0.005;
inline constexpr double kPaperEstimateSlack = 1.0 / 40.0;
inline constexpr double kPaperBaselineEstimate = 0.023;

/// sqrt(2 ln|A| / N).
double massart_bound(std::uint64_t set_size, std::uint64_t n);

/// Rademacher bound for duals with at most j pieces: sqrt(2 ln(N(j-1)+1) / N).
double pwc_rad_bound(std::uint64_t n, std::uint64_t pieces);

/// Hoeffding deviation sqrt(ln(1/delta) / (2M)); delta in (0, 1].
double hoeffding_slack(std::uint64_t m, double delta);

enum class LogPath { automatic, exact, asymptotic };

/// ln(N (n^{2(kappa+1)} - 1) + 1). `automatic` switches to ln N + 2(kappa+1) ln n
/// once the exponent exceeds 40 (the two agree to machine precision there).
double worst_case_log_term(std::uint64_t n, int n_vars, int kappa, LogPath path = LogPath::automatic);

/// 2 sqrt(2L/N) + 3 sqrt(ln(2/delta) / (2N)) with L from worst_case_log_term.
double worst_case_bound(std::uint64_t n, int n_vars, int kappa, double delta);

/// Empirical approximation errors e_hat_j = mean_i ||f_i - g_{j,i}||_inf for
/// j in [j_lo, j_lo + e_hat.size()), estimated from `m` instances.
struct ApproxProfile {
  int j_lo = 1;
  std::vector<double> e_hat;
  std::uint64_t m = 0;
  /// Largest canonical piece count over the duals the profile came from.
  std::size_t j_star = 1;

  int j_hi() const { return j_lo + static_cast<int>(e_hat.size()) - 1; }
  bool covers(int j) const { return j >= j_lo && j <= j_hi(); }
  double at(int j) const;
};

struct BoundInputs {
  std::uint64_t n = 1;
  double delta = kPaperDelta;
  int n_vars = 2;
  int kappa = 1;
  ApproxProfile profile;
};

struct SrmOptions {
  /// Reproduce the published constants: total delta 0.01 split 0.005/0.005,
  /// estimation slack 1/40 and last logarithm (20 pi j)^2 / 3.
  bool paper_mode = false;
};

struct SrmResult {
  double value = 0.0;
  int best_j = 1;
};

/// Checks the profile: values in [0, 1], nonincreasing in j, M >= 1.
void validate_profile(const ApproxProfile& profile);

/// The SRM objective for one level j.
double srm_term(const BoundInputs& inputs, int j, SrmOptions options = {});

/// min_j srm_term over [j_lo, j_hi]; ties resolve to the smallest j.
SrmResult srm_bound(const BoundInputs& inputs, int j_lo, int j_hi, SrmOptions options = {});

/// Non-SRM baseline at the observed maximum piece count j*:
/// 2(estimate + sqrt(2 ln(N(j*-1)+1)/N)) + 3 sqrt(ln(2/delta_fixed)/(2N)).
double baseline_bound(std::uint64_t n, std::uint64_t j_star, double delta_fixed = kPaperHalfDelta,
                      double estimate = kPaperBaselineEstimate);

struct BoundRow {
  std::uint64_t n = 0;
  double worst_case = 0.0;
  double srm = 0.0;
  int srm_best_j = 1;
  double baseline = 0.0;

  /// The reported guarantee: the better of the two bounds.
  double reported() const { return srm < worst_case ? srm : worst_case; }
};

struct BoundCurve {
  std::vector<BoundRow> rows;
};

/// Evaluates all three bounds over a schedule of training-set sizes. The
/// `n` field of `inputs` is ignored. Outside paper mode the baseline uses
/// delta/2 and the recomputed Hoeffding slack for the profile's M.
BoundCurve bound_curve(const std::vector<std::uint64_t>& schedule, const BoundInputs& inputs,
                       int j_lo, int j_hi, SrmOptions options = {});

/// `points` log-spaced integers in [lo, hi], rounded and deduplicated.
std::vector<std::uint64_t> log_spaced_schedule(std::uint64_t lo, std::uint64_t hi, int points);

}  // namespace cfgbounds::bounds
