#include <cstdlib>
#include <random>

#include "cfgbounds/bounds.hpp"
#include "cfgbounds/error.hpp"
#include "cfgbounds/rademacher.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cfgbounds;
using rademacher::DualSample;

namespace {

// Reference: sup over r taken at the midpoint of every refined segment,
// sigma enumerated directly. Shares no code with distinct_vectors.
double reference_rad(const std::vector<PiecewiseConstant>& duals) {
  std::vector<double> cuts;
  for (const auto& d : duals) cuts.insert(cuts.end(), d.breaks().begin(), d.breaks().end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const std::size_t n = duals.size();
  double total = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    double best = -INFINITY;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double r = 0.5 * (cuts[s] + cuts[s + 1]);
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += ((code >> i) & 1U ? -1.0 : 1.0) * duals[i](r);
      best = std::max(best, dot);
    }
    total += best;
  }
  return total / static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(n));
}

}  // namespace

TEST_SUITE("rademacher") {

TEST_CASE("distinct vectors") {
  const auto half = PiecewiseConstant::constant(0.0, 1.0, 0.5);
  CHECK(rademacher::distinct_vectors(DualSample({half, half, half})).size() == 1);

  const auto alt = PiecewiseConstant::equal_width(0.0, 1.0, std::vector<double>{0, 1, 0, 1});
  CHECK(rademacher::distinct_vectors(DualSample({alt})).size() == 2);

  std::mt19937_64 gen(1);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 6;
    const int j = 1 + rep % 4;
    std::vector<PiecewiseConstant> duals;
    for (int i = 0; i < n; ++i) duals.push_back(testing_support::random_pwc(gen, j));
    const DualSample s(duals);
    CHECK(rademacher::distinct_vectors(s).size() <= static_cast<std::size_t>(n * (j - 1) + 1));
  }
}

TEST_CASE("sample construction") {
  CHECK_THROWS_AS(DualSample({}), ArgumentError);
  CHECK_THROWS_AS(DualSample({PiecewiseConstant::constant(0.0, 1.0, 0.1), PiecewiseConstant::constant(0.0, 2.0, 0.1)}),
                  DomainError);
}

TEST_CASE("a single function has zero complexity") {
  const auto half = PiecewiseConstant::constant(0.0, 1.0, 0.5);
  CHECK(rademacher::empirical_rad_exact(DualSample({half, half})) == 0.0);
}

TEST_CASE("two shattered points give one half") {
  const auto f1 = PiecewiseConstant::equal_width(0.0, 1.0, std::vector<double>{1, 1, 0, 0});
  const auto f2 = PiecewiseConstant::equal_width(0.0, 1.0, std::vector<double>{1, 0, 1, 0});
  CHECK(rademacher::empirical_rad_exact(DualSample({f1, f2})) == 0.5);
}

TEST_CASE("exact enumeration matches the reference and Massart") {
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + rep % 8;
    std::vector<PiecewiseConstant> duals;
    for (int i = 0; i < n; ++i) duals.push_back(testing_support::random_pwc(gen, 1 + rep % 4));
    const DualSample s(duals);
    const double value = rademacher::empirical_rad_exact(s);
    CHECK(value == doctest::Approx(reference_rad(duals)).epsilon(1e-12));
    CHECK(value == rademacher::empirical_rad_exact_serial(s));
    const auto a = rademacher::distinct_vectors(s).size();
    CHECK(value <= bounds::massart_bound(a, static_cast<std::uint64_t>(n)) + 1e-12);
  }
}

TEST_CASE("exact enumeration is capped") {
  std::vector<PiecewiseConstant> duals(21, PiecewiseConstant::constant(0.0, 1.0, 0.5));
  CHECK_THROWS_AS(rademacher::empirical_rad_exact(DualSample(duals)), ResourceError);
}

TEST_CASE("Monte Carlo converges and is reproducible") {
  std::mt19937_64 gen(4);
  std::vector<PiecewiseConstant> duals;
  for (int i = 0; i < 10; ++i) duals.push_back(testing_support::random_pwc(gen, 4));
  const DualSample s(duals);
  const double exact = rademacher::empirical_rad_exact(s);
  const auto est = rademacher::empirical_rad_mc(s, 200000, 9);
  CHECK(std::abs(est.estimate - exact) <= 5.0 * est.stderr_ + 1e-12);
  CHECK(est.draws == 200000);

  const auto serial = rademacher::empirical_rad_mc_serial(s, 200000, 9);
  CHECK(serial.estimate == est.estimate);
  CHECK(serial.stderr_ == est.stderr_);

  setenv("CONFIGBOUNDS_THREADS", "3", 1);
  const auto three = rademacher::empirical_rad_mc(s, 200000, 9);
  unsetenv("CONFIGBOUNDS_THREADS");
  CHECK(three.estimate == est.estimate);

  CHECK(rademacher::empirical_rad_mc(s, 200000, 10).estimate != est.estimate);
  CHECK_THROWS_AS(rademacher::empirical_rad_mc(s, 0, 1), ArgumentError);
}

}
