#pragma once

#include <cstdint>
#include <vector>

namespace cfgbounds::counterexample {

/// f_r(x) = (1 + cos(r x)) / 2 for r in (0, t], x >= 1 / (2t), where t = gamma^p.
/// Every dual is within gamma of the constant 1/2 in L^p, yet the family
/// shatters suitably spread samples.
class CosineFamily {
 public:
  /// Requires 0 < gamma < 1/4 and finite p >= 1 (ArgumentError otherwise).
  CosineFamily(double gamma, double p);

  double gamma() const { return gamma_; }
  double p() const { return p_; }
  /// Right end of the parameter space (0, t].
  double t() const { return t_; }
  /// Left end of the example space [a, inf).
  double a() const { return 0.5 / t_; }

 private:
  double gamma_;
  double p_;
  double t_;
};

/// (1 + cos(r x)) / 2; DomainError unless r in (0, t] and x >= a.
double family_eval(const CosineFamily& fam, double r, double x);

/// ||f*_x - 1/2||_p over (0, t]. p = 2 uses the closed form
/// (1/4) sqrt(2t + sin(2tx)/x); other p use quadrature.
double lp_approx_error(const CosineFamily& fam, double x);

/// Quadrature for any p: the integrand has period pi in u = r x, so the
/// integral is (K * one_period + remainder) / x, each piece by adaptive
/// Simpson split at the zeros of cos. Relative tolerance 1e-8; throws
/// NumericalError if a subinterval fails to converge.
double lp_approx_error_quadrature(const CosineFamily& fam, double x);

/// max |f*_x(r) - 1/2| over a fine grid of (0, t] plus the maximisers
/// r = k pi / x that lie in (0, t]. Equals 1/2 up to rounding once t x >= pi.
double sup_deviation(const CosineFamily& fam, double x);

/// Largest power of 1/2 strictly below min{1/(2 pi + 1), acos(2c) / (pi + acos(2c))}.
double choose_alpha(double c);

/// x_i = alpha^{-i} / (2 t), i = 1..N.
struct AdversarialSample {
  int n = 0;
  double c = 0.0;
  double alpha = 0.0;
  std::vector<double> x;
};

AdversarialSample make_sample(const CosineFamily& fam, int n, double c);

/// r0 = 2 pi t (sum_j alpha^j b_j + alpha^{N+1}), b_j = 1 where sigma_j = -1.
/// Checks r0 in (0, t] and sigma_i f_{r0}(x_i) >= c + sigma_i / 2 for every
/// i; throws ConstructionError when either fails.
double adversarial_r0(const CosineFamily& fam, const AdversarialSample& sample,
                      const std::vector<int>& sigma);

/// f_{r0(sigma)}(x_i) with the phase reduced modulo 2 pi before taking the
/// cosine (the terms j < i contribute even multiples of pi). Matches
/// family_eval(r0, x_i) wherever the latter is accurate and stays exact for
/// large N.
double adversarial_value(const AdversarialSample& sample, const std::vector<int>& sigma, int i);

struct RadLowerDemo {
  double value = 0.0;
  double alpha = 0.0;
  std::uint64_t sign_vectors = 0;
  /// (sigma, i) pairs where sigma_i f_{r0}(x_i) < c + sigma_i / 2.
  std::uint64_t violations = 0;
  /// sigma with r0 outside (0, t].
  std::uint64_t r0_out_of_range = 0;
};

inline constexpr int kDemoMaxN = 16;

/// (1/N) 2^{-N} sum_sigma sum_i sigma_i f_{r0(sigma)}(x_i) over all 2^N
/// sign vectors, with every per-sigma inequality counted. N in [1, 16],
/// c in (0, 1/2).
RadLowerDemo rad_lower_demo(const CosineFamily& fam, int n, double c);
RadLowerDemo rad_lower_demo_serial(const CosineFamily& fam, int n, double c);

/// Exact empirical Rademacher complexity of the constant class {1/2} on N points.
double constant_class_rad(int n);

}  // namespace cfgbounds::counterexample
