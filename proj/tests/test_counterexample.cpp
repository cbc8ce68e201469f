#include <cmath>
#include <cstdlib>
#include <random>

#include "cfgbounds/counterexample.hpp"
#include "cfgbounds/error.hpp"
#include "doctest.h"

using namespace cfgbounds;
using namespace cfgbounds::counterexample;

TEST_SUITE("counterexample") {

TEST_CASE("family parameters") {
  CHECK_THROWS_AS(CosineFamily(0.3, 1.0), ArgumentError);
  CHECK_THROWS_AS(CosineFamily(0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(CosineFamily(0.1, 0.5), ArgumentError);
  CHECK_THROWS_AS(CosineFamily(0.1, INFINITY), ArgumentError);
  const CosineFamily fam(0.1, 2.0);
  CHECK(fam.t() == doctest::Approx(0.01));
  CHECK(fam.a() == doctest::Approx(50.0));
}

TEST_CASE("family evaluation") {
  const CosineFamily fam(0.1, 1.0);
  CHECK(family_eval(fam, 0.05, 40.0) == doctest::Approx(0.291926581726429).epsilon(1e-13));
  const double x = 20.0 * M_PI;
  CHECK(family_eval(fam, 0.1, x) == doctest::Approx(1.0));    // r x = 2 pi
  CHECK(family_eval(fam, 0.05, x) == doctest::Approx(0.0));  // r x = pi
  CHECK_THROWS_AS(family_eval(fam, 0.0, 40.0), DomainError);
  CHECK_THROWS_AS(family_eval(fam, 0.11, 40.0), DomainError);
  CHECK_THROWS_AS(family_eval(fam, 0.05, 4.0), DomainError);
}

TEST_CASE("closed form at p = 2") {
  const CosineFamily fam(0.1, 2.0);
  CHECK(lp_approx_error(fam, 50.0) == doctest::Approx(0.0479774814992395).epsilon(1e-12));
  CHECK(lp_approx_error(fam, 1e9) == doctest::Approx(0.25 * std::sqrt(0.02)).epsilon(1e-9));
  CHECK(lp_approx_error(fam, 1e9) < 0.1);
}

TEST_CASE("quadrature matches independent values") {
  struct Case {
    double gamma, p, x, expected;
  };
  // Reference values from arbitrary-precision quadrature.
  const Case cases[] = {
      {0.1, 1.0, 5.0, 0.0479425538604203},
      {0.1, 1.0, 40.0, 0.0344600311913491},
      {0.1, 3.0, 500.0, 0.0480117786549217},
      {0.2, 3.0, 70.0, 0.0950722693692826},
      {0.05, 1.5, 200.0, 0.0147153087820394},
  };
  for (const auto& c : cases) {
    const CosineFamily fam(c.gamma, c.p);
    CHECK(lp_approx_error_quadrature(fam, c.x) == doctest::Approx(c.expected).epsilon(1e-8));
  }
}

TEST_CASE("closed form and quadrature agree") {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> g(0.01, 0.249);
  std::uniform_real_distribution<double> scale(1.0, 1000.0);
  for (int rep = 0; rep < 20; ++rep) {
    const CosineFamily fam(g(gen), 2.0);
    const double x = fam.a() * scale(gen);
    CHECK(std::abs(lp_approx_error(fam, x) - lp_approx_error_quadrature(fam, x)) < 1e-6);
  }
}

TEST_CASE("approximation error stays below gamma") {
  for (double gamma : {0.02, 0.05, 0.1, 0.2, 0.24}) {
    for (double p : {1.0, 1.5, 2.0, 3.0, 5.0}) {
      const CosineFamily fam(gamma, p);
      for (double mult : {1.0, 1.01, 1.7, 3.0, 10.0, 1e3, 1e6}) {
        CHECK(lp_approx_error(fam, mult * fam.a()) < gamma);
      }
    }
  }
}

TEST_CASE("alpha choice") {
  CHECK(choose_alpha(0.45) == 0.125);
  CHECK(choose_alpha(0.4) == 0.125);
  CHECK(choose_alpha(0.49) == 1.0 / 32.0);
  CHECK(choose_alpha(0.1) == 0.125);
  CHECK_THROWS_AS(choose_alpha(0.5), ArgumentError);
  CHECK_THROWS_AS(choose_alpha(0.0), ArgumentError);
}

TEST_CASE("construction of r0") {
  const CosineFamily fam(0.1, 1.0);
  const auto sample = make_sample(fam, 2, 0.45);
  CHECK(sample.alpha == 0.125);
  CHECK(sample.x[0] == doctest::Approx(40.0));
  CHECK(sample.x[1] == doctest::Approx(320.0));

  const std::vector<int> sigma{-1, 1};
  const double r0 = adversarial_r0(fam, sample, sigma);
  CHECK(r0 == doctest::Approx(0.0797670009700533).epsilon(1e-13));
  CHECK(family_eval(fam, r0, 40.0) == doctest::Approx(0.000602271897413804).epsilon(1e-9));
  CHECK(adversarial_value(sample, sigma, 1) == doctest::Approx(0.000602271897413804).epsilon(1e-9));
  CHECK(family_eval(fam, r0, 40.0) <= 0.5 - 0.45);

  const std::vector<int> plus{1, 1};
  const double r_plus = adversarial_r0(fam, sample, plus);
  CHECK(r_plus == doctest::Approx(2.0 * M_PI * 0.1 * std::pow(0.125, 3)));
  for (double x : sample.x) CHECK(family_eval(fam, r_plus, x) >= 0.95);

  CHECK_THROWS_AS(adversarial_r0(fam, sample, {1}), ArgumentError);
  CHECK_THROWS_AS(adversarial_r0(fam, sample, {1, 0}), ArgumentError);
}

TEST_CASE("every sign vector satisfies the construction") {
  for (double c : {0.3, 0.45, 0.49}) {
    const CosineFamily fam(0.1, 1.0);
    for (int n : {1, 5, 12}) {
      const auto sample = make_sample(fam, n, c);
      std::vector<int> sigma(static_cast<std::size_t>(n));
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = (code >> i) & 1U ? -1 : 1;
        const double r0 = adversarial_r0(fam, sample, sigma);
        CHECK(r0 > 0.0);
        CHECK(r0 <= fam.t());
        if (n <= 5) {
          for (int i = 1; i <= n; ++i) {
            CHECK(family_eval(fam, r0, sample.x[static_cast<std::size_t>(i - 1)]) ==
                  doctest::Approx(adversarial_value(sample, sigma, i)).epsilon(1e-9));
          }
        }
      }
    }
  }
}

TEST_CASE("lower-bound demo") {
  const CosineFamily fam(0.1, 1.0);
  const auto d8 = rad_lower_demo(fam, 8, 0.45);
  CHECK(d8.value >= 0.45);
  CHECK(d8.value <= 0.5);
  CHECK(d8.violations == 0);
  CHECK(d8.r0_out_of_range == 0);
  CHECK(d8.sign_vectors == 256);

  const auto d10 = rad_lower_demo(fam, 10, 0.49);
  CHECK(d10.alpha == 1.0 / 32.0);
  CHECK(d10.value >= 0.49);
  CHECK(d10.value <= 0.5);

  CHECK(rad_lower_demo_serial(fam, 13, 0.4).value == rad_lower_demo(fam, 13, 0.4).value);
  setenv("CONFIGBOUNDS_THREADS", "3", 1);
  CHECK(rad_lower_demo(fam, 13, 0.4).value == rad_lower_demo_serial(fam, 13, 0.4).value);
  unsetenv("CONFIGBOUNDS_THREADS");

  CHECK_THROWS_AS(rad_lower_demo(fam, 17, 0.4), ArgumentError);
  CHECK_THROWS_AS(rad_lower_demo(fam, 0, 0.4), ArgumentError);
}

TEST_CASE("constant class and sup deviation") {
  for (int n : {1, 4, 8, 12}) CHECK(constant_class_rad(n) == 0.0);
  const CosineFamily fam(0.1, 2.0);
  const auto sample = make_sample(fam, 12, 0.45);
  for (double x : sample.x) CHECK(sup_deviation(fam, x) >= 0.5 - 1e-6);
  // With t x < pi no maximiser lies inside (0, t]; only grid points count.
  const CosineFamily wide(0.2, 1.0);
  const double below = sup_deviation(wide, wide.a());
  CHECK(below < 0.5);
  CHECK(below > 0.49);
}

}
