#include "cfgbounds/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cfgbounds/error.hpp"

namespace cfgbounds::bounds {

namespace {

constexpr double kLogSwitch = 40.0;

void require_n(std::uint64_t n, const char* what) {
  if (n < 1) throw ArgumentError(std::string(what) + ": N must be >= 1");
}

double complexity_term(std::uint64_t n, std::uint64_t pieces) {
  const double nd = static_cast<double>(n);
  return std::sqrt(2.0 * std::log(nd * static_cast<double>(pieces - 1) + 1.0) / nd);
}

}  // namespace

double massart_bound(std::uint64_t set_size, std::uint64_t n) {
  if (set_size < 1) throw ArgumentError("massart_bound: set size must be >= 1");
  require_n(n, "massart_bound");
  return std::sqrt(2.0 * std::log(static_cast<double>(set_size)) / static_cast<double>(n));
}

double pwc_rad_bound(std::uint64_t n, std::uint64_t pieces) {
  require_n(n, "pwc_rad_bound");
  if (pieces < 1) throw ArgumentError("pwc_rad_bound: piece count must be >= 1");
  return complexity_term(n, pieces);
}

double hoeffding_slack(std::uint64_t m, double delta) {
  if (m < 1) throw ArgumentError("hoeffding_slack: M must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw ArgumentError("hoeffding_slack: delta must be in (0, 1]");
  return std::sqrt(std::log(1.0 / delta) / (2.0 * static_cast<double>(m)));
}

double worst_case_log_term(std::uint64_t n, int n_vars, int kappa, LogPath path) {
  require_n(n, "worst_case_bound");
  if (n_vars < 2) throw ArgumentError("worst_case_bound: n_vars must be >= 2");
  if (kappa < 1) throw ArgumentError("worst_case_bound: kappa must be >= 1");
  const double nd = static_cast<double>(n);
  // ln of n^{2(kappa+1)}
  const double exponent = 2.0 * (static_cast<double>(kappa) + 1.0) * std::log(static_cast<double>(n_vars));
  if (path == LogPath::automatic) path = exponent > kLogSwitch ? LogPath::asymptotic : LogPath::exact;
  if (path == LogPath::asymptotic) return std::log(nd) + exponent;
  if (exponent > 700.0) throw NumericalError("worst_case_log_term: exact path overflows; use asymptotic");
  return std::log(nd * std::expm1(exponent) + 1.0);
}

double worst_case_bound(std::uint64_t n, int n_vars, int kappa, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("worst_case_bound: delta must be in (0, 1)");
  const double log_term = worst_case_log_term(n, n_vars, kappa);
  const double nd = static_cast<double>(n);
  return 2.0 * std::sqrt(2.0 * log_term / nd) + 3.0 * std::sqrt(std::log(2.0 / delta) / (2.0 * nd));
}

double ApproxProfile::at(int j) const {
  if (!covers(j)) {
    throw ArgumentError("approximation profile does not cover j=" + std::to_string(j));
  }
  return e_hat[static_cast<std::size_t>(j - j_lo)];
}

void validate_profile(const ApproxProfile& profile) {
  if (profile.e_hat.empty()) throw ArgumentError("approximation profile is empty");
  if (profile.j_lo < 1) throw ArgumentError("approximation profile must start at j >= 1");
  if (profile.m < 1) throw ArgumentError("approximation profile needs M >= 1");
  for (std::size_t i = 0; i < profile.e_hat.size(); ++i) {
    const double e = profile.e_hat[i];
    if (!(e >= 0.0 && e <= 1.0)) throw ArgumentError("approximation errors must lie in [0, 1]");
    if (i > 0 && e > profile.e_hat[i - 1]) {
      throw ArgumentError("approximation errors must be nonincreasing in j (violated at j=" +
                          std::to_string(profile.j_lo + static_cast<int>(i)) + ")");
    }
  }
}

double srm_term(const BoundInputs& inputs, int j, SrmOptions options) {
  require_n(inputs.n, "srm_bound");
  if (j < 1) throw ArgumentError("srm_bound: j must be >= 1");
  const double nd = static_cast<double>(inputs.n);
  const double jd = static_cast<double>(j);
  double slack = 0.0;
  double union_log = 0.0;
  if (options.paper_mode) {
    slack = kPaperEstimateSlack;
    const double base = 20.0 * std::numbers::pi * jd;
    union_log = std::log(base * base / 3.0);
  } else {
    if (!(inputs.delta > 0.0 && inputs.delta < 1.0)) {
      throw ArgumentError("srm_bound: delta must be in (0, 1)");
    }
    const double half = inputs.delta / 2.0;
    slack = hoeffding_slack(inputs.profile.m, half);
    const double pj = std::numbers::pi * jd;
    union_log = std::log(2.0 * pj * pj / (3.0 * half));
  }
  return 2.0 * (inputs.profile.at(j) + slack) + 2.0 * complexity_term(inputs.n, static_cast<std::uint64_t>(j)) +
         std::sqrt(2.0 / nd * union_log);
}

SrmResult srm_bound(const BoundInputs& inputs, int j_lo, int j_hi, SrmOptions options) {
  if (j_lo < 1 || j_hi < j_lo) throw ArgumentError("srm_bound: empty j range");
  validate_profile(inputs.profile);
  SrmResult best{srm_term(inputs, j_lo, options), j_lo};
  for (int j = j_lo + 1; j <= j_hi; ++j) {
    const double v = srm_term(inputs, j, options);
    if (v < best.value) best = {v, j};
  }
  return best;
}

double baseline_bound(std::uint64_t n, std::uint64_t j_star, double delta_fixed, double estimate) {
  require_n(n, "baseline_bound");
  if (j_star < 1) throw ArgumentError("baseline_bound: j* must be >= 1");
  if (!(delta_fixed > 0.0 && delta_fixed < 1.0)) throw ArgumentError("baseline_bound: delta must be in (0, 1)");
  const double nd = static_cast<double>(n);
  return 2.0 * (estimate + complexity_term(n, j_star)) +
         3.0 * std::sqrt(std::log(2.0 / delta_fixed) / (2.0 * nd));
}

BoundCurve bound_curve(const std::vector<std::uint64_t>& schedule, const BoundInputs& inputs,
                       int j_lo, int j_hi, SrmOptions options) {
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) throw ArgumentError("N schedule must be strictly increasing");
  }
  const double delta = options.paper_mode ? kPaperDelta : inputs.delta;
  const double half = delta / 2.0;
  const double estimate = options.paper_mode ? kPaperBaselineEstimate
                                             : hoeffding_slack(inputs.profile.m, half);
  BoundCurve curve;
  curve.rows.reserve(schedule.size());
  for (std::uint64_t n : schedule) {
    BoundInputs at = inputs;
    at.n = n;
    const SrmResult srm = srm_bound(at, j_lo, j_hi, options);
    BoundRow row;
    row.n = n;
    row.worst_case = worst_case_bound(n, inputs.n_vars, inputs.kappa, delta);
    row.srm = srm.value;
    row.srm_best_j = srm.best_j;
    row.baseline = baseline_bound(n, inputs.profile.j_star, half, estimate);
    curve.rows.push_back(row);
  }
  return curve;
}

std::vector<std::uint64_t> log_spaced_schedule(std::uint64_t lo, std::uint64_t hi, int points) {
  if (lo < 1 || hi < lo) throw ArgumentError("schedule: need 1 <= lo <= hi");
  if (points < 1) throw ArgumentError("schedule: need at least one point");
  std::vector<std::uint64_t> out;
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  for (int i = 0; i < points; ++i) {
    const double e = points == 1 ? a : a + (b - a) * i / (points - 1);
    const auto v = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

}  // namespace cfgbounds::bounds
