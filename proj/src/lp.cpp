#include "cfgbounds/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cfgbounds/error.hpp"

namespace cfgbounds::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState { basic, at_lower, at_upper };

class Tableau {
 public:
  Tableau(const Problem& p, const Options& opt) : opt_(opt), m_(p.rows), structural_(p.cols) {
    std::size_t artificial = 0;
    for (double bi : p.b) artificial += bi < 0.0 ? 1 : 0;
    total_ = structural_ + m_ + artificial;
    t_.assign(m_ * total_, 0.0);
    upper_.assign(total_, kInf);
    value_.assign(total_, 0.0);
    state_.assign(total_, VarState::at_lower);
    basis_.assign(m_, 0);
    for (std::size_t j = 0; j < structural_; ++j) upper_[j] = p.upper[j];

    std::size_t next_art = structural_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = p.b[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < structural_; ++j) at(i, j) = sign * p.a[i * p.cols + j];
      at(i, structural_ + i) = sign;
      std::size_t basic = structural_ + i;
      if (sign < 0.0) {
        basic = next_art++;
        at(i, basic) = 1.0;
      }
      basis_[i] = basic;
      state_[basic] = VarState::basic;
      value_[basic] = sign * p.b[i];
    }
    artificial_begin_ = structural_ + m_;
  }

  bool has_artificials() const { return total_ > artificial_begin_; }

  // Maximises weights . x over the current feasible region.
  void optimise(const std::vector<double>& weights) {
    const int max_iter = 20000 + 200 * static_cast<int>(m_ + total_);
    int degenerate_run = 0;
    bool bland = false;
    std::vector<double> reduced(total_);
    for (;;) {
      if (iterations_ >= max_iter) {
        throw NumericalError("lp: iteration limit reached (" + std::to_string(max_iter) + ")");
      }
      // Reduced costs of nonbasic columns.
      std::size_t entering = total_;
      double best_score = 0.0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (state_[j] == VarState::basic || upper_[j] == 0.0) continue;
        double d = weights[j];
        for (std::size_t i = 0; i < m_; ++i) d -= weights[basis_[i]] * at(i, j);
        const bool improving = (state_[j] == VarState::at_lower && d > opt_.tolerance) ||
                               (state_[j] == VarState::at_upper && d < -opt_.tolerance);
        if (!improving) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (std::abs(d) > best_score) {
          best_score = std::abs(d);
          entering = j;
        }
      }
      if (entering == total_) return;

      const double dir = state_[entering] == VarState::at_lower ? 1.0 : -1.0;
      double theta = upper_[entering];  // bound flip distance
      std::size_t leave_row = m_;
      double leave_pivot = 0.0;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < m_; ++i) {
        const double delta = dir * at(i, entering);
        const std::size_t bv = basis_[i];
        double limit = kInf;
        bool to_upper = false;
        if (delta > opt_.tolerance) {
          limit = std::max(0.0, value_[bv]) / delta;
        } else if (delta < -opt_.tolerance && upper_[bv] < kInf) {
          limit = std::max(0.0, upper_[bv] - value_[bv]) / -delta;
          to_upper = true;
        } else {
          continue;
        }
        // Ties against a bound flip keep the flip; ties between rows go to
        // the larger pivot (Dantzig) or the lower variable index (Bland).
        bool take = limit < theta - 1e-12;
        if (!take && leave_row < m_ && limit <= theta + 1e-12) {
          take = bland ? bv < basis_[leave_row] : std::abs(delta) > std::abs(leave_pivot);
        }
        if (take) {
          theta = limit;
          leave_row = i;
          leave_pivot = delta;
          leave_to_upper = to_upper;
        }
      }
      if (theta == kInf) throw NumericalError("lp: unbounded direction in a box-bounded problem");

      ++iterations_;
      if (theta <= opt_.tolerance) {
        if (++degenerate_run > opt_.degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
      }

      value_[entering] += dir * theta;
      for (std::size_t i = 0; i < m_; ++i) value_[basis_[i]] -= theta * dir * at(i, entering);

      if (leave_row == m_) {
        state_[entering] = state_[entering] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
        value_[entering] = state_[entering] == VarState::at_upper ? upper_[entering] : 0.0;
        continue;
      }
      const std::size_t leaving = basis_[leave_row];
      state_[leaving] = leave_to_upper ? VarState::at_upper : VarState::at_lower;
      value_[leaving] = leave_to_upper ? upper_[leaving] : 0.0;
      pivot(leave_row, entering);
    }
  }

  double artificial_sum() const {
    double s = 0.0;
    for (std::size_t j = artificial_begin_; j < total_; ++j) s += value_[j];
    return s;
  }

  void freeze_artificials() {
    for (std::size_t j = artificial_begin_; j < total_; ++j) upper_[j] = 0.0;
  }

  std::size_t total() const { return total_; }
  std::size_t artificial_begin() const { return artificial_begin_; }
  double value(std::size_t j) const { return value_[j]; }
  int iterations() const { return iterations_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * total_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * total_ + j]; }

  void pivot(std::size_t r, std::size_t col) {
    const double p = at(r, col);
    for (std::size_t j = 0; j < total_; ++j) at(r, j) /= p;
    at(r, col) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < total_; ++j) at(i, j) -= f * at(r, j);
      at(i, col) = 0.0;
    }
    basis_[r] = col;
    state_[col] = VarState::basic;
  }

  Options opt_;
  std::size_t m_;
  std::size_t structural_;
  std::size_t total_ = 0;
  std::size_t artificial_begin_ = 0;
  std::vector<double> t_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<VarState> state_;
  std::vector<std::size_t> basis_;
  int iterations_ = 0;
};

}  // namespace

Solution solve(const Problem& p, const Options& options) {
  if (p.a.size() != p.rows * p.cols || p.b.size() != p.rows || p.c.size() != p.cols ||
      p.upper.size() != p.cols) {
    throw ArgumentError("lp: inconsistent problem dimensions");
  }
  Tableau tab(p, options);
  if (tab.has_artificials()) {
    std::vector<double> phase1(tab.total(), 0.0);
    for (std::size_t j = tab.artificial_begin(); j < tab.total(); ++j) phase1[j] = -1.0;
    tab.optimise(phase1);
    if (tab.artificial_sum() > 1e-7) {
      Solution out;
      out.iterations = tab.iterations();
      return out;
    }
    tab.freeze_artificials();
  }
  std::vector<double> phase2(tab.total(), 0.0);
  for (std::size_t j = 0; j < p.cols; ++j) phase2[j] = p.c[j];
  tab.optimise(phase2);

  Solution out;
  out.status = Status::optimal;
  out.iterations = tab.iterations();
  out.x.resize(p.cols);
  for (std::size_t j = 0; j < p.cols; ++j) {
    out.x[j] = std::clamp(tab.value(j), 0.0, p.upper[j]);
    out.value += p.c[j] * out.x[j];
  }
  return out;
}

}  // namespace cfgbounds::lp
