#include "cfgbounds/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cfgbounds/error.hpp"

namespace cfgbounds {

PiecewiseConstant::PiecewiseConstant(std::vector<double> breaks, std::vector<double> values) {
  if (values.empty()) throw ArgumentError("piecewise: at least one segment is required");
  if (breaks.size() != values.size() + 1) {
    throw ArgumentError("piecewise: expected " + std::to_string(values.size() + 1) +
                        " breakpoints, got " + std::to_string(breaks.size()));
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      throw ArgumentError("piecewise: breakpoints must be strictly increasing (index " +
                          std::to_string(i) + ")");
    }
  }
  if (!std::isfinite(breaks.front()) || !std::isfinite(breaks.back())) {
    throw ArgumentError("piecewise: domain endpoints must be finite");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("piecewise: values must lie in [0, 1]");
  }

  breaks_.reserve(breaks.size());
  values_.reserve(values.size());
  breaks_.push_back(breaks.front());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values_.back() == values[i]) {
      breaks_.back() = breaks[i + 1];
    } else {
      values_.push_back(values[i]);
      breaks_.push_back(breaks[i + 1]);
    }
  }
}

PiecewiseConstant PiecewiseConstant::constant(double lo, double hi, double value) {
  return PiecewiseConstant({lo, hi}, {value});
}

PiecewiseConstant PiecewiseConstant::equal_width(double lo, double hi,
                                                 std::span<const double> values) {
  const std::size_t t = values.size();
  std::vector<double> breaks(t + 1);
  for (std::size_t i = 0; i <= t; ++i) {
    breaks[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(t);
  }
  breaks[t] = hi;
  return PiecewiseConstant(std::move(breaks), std::vector<double>(values.begin(), values.end()));
}

double PiecewiseConstant::operator()(double r) const {
  if (!(r >= lo() && r < hi())) {
    throw DomainError("piecewise: r=" + std::to_string(r) + " outside [" + std::to_string(lo()) +
                      ", " + std::to_string(hi()) + ")");
  }
  // First breakpoint strictly greater than r closes the containing segment.
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), r);
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double PiecewiseConstant::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double PiecewiseConstant::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double PiecewiseConstant::total_variation() const {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) tv += std::abs(values_[i + 1] - values_[i]);
  return tv;
}

Refinement common_refinement(const PiecewiseConstant& f, const PiecewiseConstant& g) {
  if (!f.same_domain(g)) throw DomainError("common_refinement: functions have different domains");
  const auto& fb = f.breaks();
  const auto& gb = g.breaks();
  Refinement out;
  out.breaks.reserve(fb.size() + gb.size());
  out.breaks.push_back(f.lo());
  std::size_t i = 0;  // current segment of f
  std::size_t j = 0;  // current segment of g
  while (i < f.segments() && j < g.segments()) {
    out.f_values.push_back(f.values()[i]);
    out.g_values.push_back(g.values()[j]);
    const double fe = fb[i + 1];
    const double ge = gb[j + 1];
    out.breaks.push_back(std::min(fe, ge));
    if (fe <= ge) ++i;
    if (ge <= fe) ++j;
  }
  return out;
}

double linf_distance(const PiecewiseConstant& f, const PiecewiseConstant& g) {
  const Refinement ref = common_refinement(f, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.segments(); ++i) {
    worst = std::max(worst, std::abs(ref.f_values[i] - ref.g_values[i]));
  }
  return worst;
}

double lp_distance(const PiecewiseConstant& f, const PiecewiseConstant& g, double p) {
  if (!(p >= 1.0)) throw ArgumentError("lp_distance: p must be >= 1");
  if (!std::isfinite(p)) throw ArgumentError("lp_distance: p must be finite (use linf_distance)");
  const Refinement ref = common_refinement(f, g);
  double acc = 0.0;
  for (std::size_t i = 0; i < ref.segments(); ++i) {
    const double diff = std::abs(ref.f_values[i] - ref.g_values[i]);
    if (diff > 0.0) acc += std::pow(diff, p) * ref.width(i);
  }
  return std::pow(acc, 1.0 / p);
}

double agreement_measure(const PiecewiseConstant& f, const PiecewiseConstant& g) {
  const Refinement ref = common_refinement(f, g);
  double measure = 0.0;
  for (std::size_t i = 0; i < ref.segments(); ++i) {
    if (ref.f_values[i] == ref.g_values[i]) measure += ref.width(i);
  }
  return measure;
}

}  // namespace cfgbounds
