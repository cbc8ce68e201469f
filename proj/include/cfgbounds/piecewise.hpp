#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cfgbounds {

/// A step function on the half-open interval [lo, hi) with values in [0, 1].
///
/// Stored as breakpoints a_1 < ... < a_{t+1} (both endpoints included) and
/// values c_1..c_t, with c_i taken on [a_i, a_{i+1}). Construction validates
/// the input and merges adjacent segments carrying the same value, so two
/// functions that agree pointwise have identical representations.
///
/// Immutable after construction.
class PiecewiseConstant {
 public:
  PiecewiseConstant(std::vector<double> breaks, std::vector<double> values);

  /// The constant function `value` on [lo, hi).
  static PiecewiseConstant constant(double lo, double hi, double value);

  /// Equal-width segments on [lo, hi) carrying `values` in order.
  static PiecewiseConstant equal_width(double lo, double hi, std::span<const double> values);

  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  double length() const { return hi() - lo(); }

  /// Number of canonical segments t.
  std::size_t segments() const { return values_.size(); }

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

  /// Value at r; throws DomainError unless lo <= r < hi.
  double operator()(double r) const;
  double eval(double r) const { return (*this)(r); }

  bool same_domain(const PiecewiseConstant& other) const {
    return lo() == other.lo() && hi() == other.hi();
  }

  double min_value() const;
  double max_value() const;
  /// Sum of |c_{i+1} - c_i| over adjacent segments.
  double total_variation() const;

  friend bool operator==(const PiecewiseConstant&, const PiecewiseConstant&) = default;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

/// Union of two partitions; on every refined segment both functions are
/// constant. `breaks` includes both endpoints.
struct Refinement {
  std::vector<double> breaks;
  std::vector<double> f_values;
  std::vector<double> g_values;

  std::size_t segments() const { return f_values.size(); }
  double width(std::size_t i) const { return breaks[i + 1] - breaks[i]; }
};

Refinement common_refinement(const PiecewiseConstant& f, const PiecewiseConstant& g);

/// sup |f - g|, exact (max over refined segments).
double linf_distance(const PiecewiseConstant& f, const PiecewiseConstant& g);

/// (integral |f - g|^p)^(1/p) in closed form over refined segments. p >= 1, finite.
double lp_distance(const PiecewiseConstant& f, const PiecewiseConstant& g, double p);

/// Lebesgue measure of {r : f(r) == g(r)}.
double agreement_measure(const PiecewiseConstant& f, const PiecewiseConstant& g);

}  // namespace cfgbounds
