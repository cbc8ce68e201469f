#include "cfgbounds/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cfgbounds/error.hpp"
#include "cfgbounds/parallel.hpp"
#include "cfgbounds/piecewise.hpp"
#include "cfgbounds/rademacher.hpp"

namespace cfgbounds::counterexample {

using std::numbers::pi;

CosineFamily::CosineFamily(double gamma, double p) : gamma_(gamma), p_(p) {
  if (!(gamma > 0.0 && gamma < 0.25)) {
    throw ArgumentError("cosine family: gamma must lie in (0, 1/4), got " + std::to_string(gamma));
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ArgumentError("cosine family: p must be finite and >= 1, got " + std::to_string(p));
  }
  t_ = std::pow(gamma, p);
}

double family_eval(const CosineFamily& fam, double r, double x) {
  if (!(r > 0.0 && r <= fam.t())) throw DomainError("family_eval: r outside (0, gamma^p]");
  if (!(x >= fam.a())) throw DomainError("family_eval: x below 1/(2 gamma^p)");
  return 0.5 * (1.0 + std::cos(r * x));
}

namespace {

constexpr double kRelTol = 1e-8;
constexpr int kMaxDepth = 50;

struct Simpson {
  double p;
  double eps_scale;

  double h(double u) const { return std::pow(0.5 * std::abs(std::cos(u)), p); }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps,
                 int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = h(lm);
    const double frm = h(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
    if (depth >= kMaxDepth) {
      throw NumericalError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] (p = " + std::to_string(p) +
                           ", residual " + std::to_string(diff) + ")");
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }

  double integrate(double a, double b) const {
    const double fa = h(a);
    const double fb = h(b);
    const double fm = h(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, eps_scale * (b - a), 0);
  }

  // Integral over [0, s], s <= pi, in quarter-period pieces so the zero of
  // cos at pi/2 is always a piece boundary.
  double partial_period(double s) const {
    double total = 0.0;
    double lo = 0.0;
    for (int q = 1; q <= 4 && lo < s; ++q) {
      const double hi = std::min(s, q * pi / 4.0);
      total += integrate(lo, hi);
      lo = hi;
    }
    return total;
  }
};

}  // namespace

double lp_approx_error_quadrature(const CosineFamily& fam, double x) {
  if (!(x >= fam.a())) throw DomainError("lp_approx_error: x below 1/(2 gamma^p)");
  const double p = fam.p();
  const Simpson simpson{p, 0.1 * kRelTol * std::pow(0.5, p)};
  const double span = fam.t() * x;
  const double periods = std::floor(span / pi);
  const double rest = span - periods * pi;
  const double one_period = simpson.partial_period(pi);
  const double remainder = rest > 0.0 ? simpson.partial_period(rest) : 0.0;
  const double integral = (periods * one_period + remainder) / x;
  return std::pow(integral, 1.0 / p);
}

double lp_approx_error(const CosineFamily& fam, double x) {
  if (!(x >= fam.a())) throw DomainError("lp_approx_error: x below 1/(2 gamma^p)");
  if (fam.p() == 2.0) {
    const double t = fam.t();
    return 0.25 * std::sqrt(2.0 * t + std::sin(2.0 * t * x) / x);
  }
  return lp_approx_error_quadrature(fam, x);
}

double sup_deviation(const CosineFamily& fam, double x) {
  if (!(x >= fam.a())) throw DomainError("sup_deviation: x below 1/(2 gamma^p)");
  const double t = fam.t();
  const double span = t * x;
  double best = 0.0;
  const double critical = std::floor(span / pi);
  const auto k_max = static_cast<long long>(std::min(critical, 1024.0));
  for (long long k = 1; k <= k_max; ++k) {
    best = std::max(best, 0.5 * std::abs(std::cos(static_cast<double>(k) * pi / x * x)));
  }
  const double cells = std::min(65536.0, 64.0 * (std::ceil(span / pi) + 1.0));
  const auto n = static_cast<long long>(cells);
  for (long long m = 1; m <= n; ++m) {
    const double r = t * static_cast<double>(m) / cells;
    best = std::max(best, 0.5 * std::abs(std::cos(r * x)));
  }
  return best;
}

namespace {

void check_c(double c) {
  if (!(c > 0.0 && c < 0.5)) throw ArgumentError("c must lie in (0, 1/2), got " + std::to_string(c));
}

}  // namespace

double choose_alpha(double c) {
  check_c(c);
  const double ac = std::acos(2.0 * c);
  const double bound = std::min(1.0 / (2.0 * pi + 1.0), ac / (pi + ac));
  double alpha = 0.5;
  while (alpha >= bound) alpha *= 0.5;
  return alpha;
}

AdversarialSample make_sample(const CosineFamily& fam, int n, double c) {
  if (n < 1) throw ArgumentError("adversarial sample: N must be >= 1");
  AdversarialSample s;
  s.n = n;
  s.c = c;
  s.alpha = choose_alpha(c);
  s.x.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) s.x.push_back(std::pow(s.alpha, -i) * fam.a());
  if (!std::isfinite(s.x.back())) throw ResourceError("adversarial sample: x_N overflows");
  return s;
}

namespace {

void check_sigma(const AdversarialSample& sample, const std::vector<int>& sigma) {
  if (sigma.size() != static_cast<std::size_t>(sample.n)) {
    throw ArgumentError("sigma length must equal N");
  }
  for (int s : sigma) {
    if (s != 1 && s != -1) throw ArgumentError("sigma entries must be +1 or -1");
  }
}

// sum_j alpha^j b_j + alpha^{N+1}, smallest terms first.
double r0_series(const AdversarialSample& sample, const std::vector<int>& sigma) {
  double sum = std::pow(sample.alpha, sample.n + 1);
  for (int j = sample.n; j >= 1; --j) {
    if (sigma[static_cast<std::size_t>(j - 1)] == -1) sum += std::pow(sample.alpha, j);
  }
  return sum;
}

double value_unchecked(const AdversarialSample& sample, const std::vector<int>& sigma, int i) {
  const int n = sample.n;
  double tail = std::pow(sample.alpha, n + 1 - i);
  for (int j = n - i; j >= 1; --j) {
    if (sigma[static_cast<std::size_t>(i + j - 1)] == -1) tail += std::pow(sample.alpha, j);
  }
  const double b_i = sigma[static_cast<std::size_t>(i - 1)] == -1 ? 1.0 : 0.0;
  return 0.5 * (1.0 + std::cos(pi * (b_i + tail)));
}

bool inequality_holds(double c, int sigma_i, double f) {
  return static_cast<double>(sigma_i) * f >= c + 0.5 * static_cast<double>(sigma_i);
}

}  // namespace

double adversarial_value(const AdversarialSample& sample, const std::vector<int>& sigma, int i) {
  check_sigma(sample, sigma);
  if (i < 1 || i > sample.n) throw ArgumentError("adversarial_value: index out of range");
  return value_unchecked(sample, sigma, i);
}

double adversarial_r0(const CosineFamily& fam, const AdversarialSample& sample,
                      const std::vector<int>& sigma) {
  check_sigma(sample, sigma);
  const double r0 = 2.0 * pi * fam.t() * r0_series(sample, sigma);
  if (!(r0 > 0.0 && r0 <= fam.t())) {
    throw ConstructionError("r0 = " + std::to_string(r0) + " outside (0, gamma^p]");
  }
  for (int i = 1; i <= sample.n; ++i) {
    const int s = sigma[static_cast<std::size_t>(i - 1)];
    const double f = value_unchecked(sample, sigma, i);
    if (!inequality_holds(sample.c, s, f)) {
      throw ConstructionError("sigma_" + std::to_string(i) + " f(x_" + std::to_string(i) +
                              ") = " + std::to_string(s * f) + " below c + sigma_i/2");
    }
  }
  return r0;
}

namespace {

struct BlockTally {
  double sum = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t out_of_range = 0;
};

BlockTally tally_block(const CosineFamily& fam, const AdversarialSample& sample, std::uint64_t begin,
                       std::uint64_t end) {
  BlockTally tally;
  std::vector<int> sigma(static_cast<std::size_t>(sample.n));
  for (std::uint64_t code = begin; code < end; ++code) {
    for (int i = 0; i < sample.n; ++i) sigma[static_cast<std::size_t>(i)] = (code >> i) & 1U ? -1 : 1;
    const double r0 = 2.0 * pi * fam.t() * r0_series(sample, sigma);
    if (!(r0 > 0.0 && r0 <= fam.t())) ++tally.out_of_range;
    double inner = 0.0;
    for (int i = 1; i <= sample.n; ++i) {
      const int s = sigma[static_cast<std::size_t>(i - 1)];
      const double f = value_unchecked(sample, sigma, i);
      if (!inequality_holds(sample.c, s, f)) ++tally.violations;
      inner += static_cast<double>(s) * f;
    }
    tally.sum += inner;
  }
  return tally;
}

RadLowerDemo run_demo(const CosineFamily& fam, int n, double c, bool parallel) {
  if (n < 1 || n > kDemoMaxN) {
    throw ArgumentError("rad_lower_demo: N must lie in [1, " + std::to_string(kDemoMaxN) + "]");
  }
  const AdversarialSample sample = make_sample(fam, n, c);
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t block = parallel::kReduceBlock;
  const std::uint64_t blocks = (total + block - 1) / block;
  std::vector<BlockTally> tallies(blocks);
  const auto nb = static_cast<std::int64_t>(blocks);
  auto one = [&](std::int64_t b) {
    const auto ub = static_cast<std::uint64_t>(b);
    tallies[ub] = tally_block(fam, sample, ub * block, std::min(total, (ub + 1) * block));
  };
  if (parallel) {
#pragma omp parallel for schedule(static) num_threads(parallel::thread_count())
    for (std::int64_t b = 0; b < nb; ++b) one(b);
  } else {
    for (std::int64_t b = 0; b < nb; ++b) one(b);
  }
  RadLowerDemo out;
  out.alpha = sample.alpha;
  out.sign_vectors = total;
  std::vector<double> partials;
  partials.reserve(tallies.size());
  for (const auto& t : tallies) {
    partials.push_back(t.sum);
    out.violations += t.violations;
    out.r0_out_of_range += t.out_of_range;
  }
  out.value = parallel::blocked_sum(partials) / (static_cast<double>(n) * static_cast<double>(total));
  return out;
}

}  // namespace

RadLowerDemo rad_lower_demo(const CosineFamily& fam, int n, double c) { return run_demo(fam, n, c, true); }

RadLowerDemo rad_lower_demo_serial(const CosineFamily& fam, int n, double c) {
  return run_demo(fam, n, c, false);
}

double constant_class_rad(int n) {
  if (n < 1) throw ArgumentError("constant_class_rad: N must be >= 1");
  std::vector<PiecewiseConstant> duals(static_cast<std::size_t>(n), PiecewiseConstant::constant(0.0, 1.0, 0.5));
  return rademacher::empirical_rad_exact(rademacher::DualSample(std::move(duals)));
}

}  // namespace cfgbounds::counterexample
