#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "extinction_lab/special_functions.hpp"

using namespace extinction_lab;

namespace {

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return out;
}

struct Frozen {
  int k;
  double x;
  double scaled;  // e^-x I_k(x), 17 digits from a 40-digit evaluation
};

// Reference values from an independent arbitrary-precision evaluation.
const Frozen kFrozen[] = {
    {0, 1.0, 0.46575960759364044},
    {1, 2.0, 0.21526928924893766},
    {1, 10.0, 0.12126268138445552},
    {3, 50.0, 0.05164737175755633},
    {1, 700.0, 0.015070519444716847},
    {5, 700.0, 0.014814188973601688},
    {10, 1e4, 0.0039695741057832239},
    {100, 50.0, 5.2614134632253477e-38},
    {1000, 2000.0, 2.8944328744060879e-109},
    {10000, 1e5, 1.3583287046396479e-220},
    {2, 1e5, 0.0012615426067461743},
    {0, 1e5, 0.0012615678379767768},
    {50, 30.0, 1.3652871959938371e-17},
};

}  // namespace

TEST_CASE("values at zero") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i_scaled(0, 0.0) == 1.0);
  for (int k = 1; k <= 5; ++k) {
    CHECK(bessel_i(k, 0.0) == 0.0);
    CHECK(bessel_i_scaled(k, 0.0) == 0.0);
    CHECK(log_bessel_i_scaled(k, 0.0) == -std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("frozen high-precision values") {
  for (const auto& f : kFrozen) {
    CAPTURE(f.k);
    CAPTURE(f.x);
    const auto eval = evaluate_bessel_i(f.k, f.x);
    CHECK(rel_diff(eval.scaled_value, f.scaled) < 1e-11);
    CHECK(eval.est_rel_error <= 1e-12);
  }
}

TEST_CASE("agrees with Boost cyl_bessel_i") {
  for (int k = 0; k <= 10; ++k) {
    for (const double x : log_grid(1e-3, 700.0, 60)) {
      CAPTURE(k);
      CAPTURE(x);
      const double ref = boost::math::cyl_bessel_i(k, x);
      if (ref < std::numeric_limits<double>::min() * 1e20) continue;
      CHECK(rel_diff(bessel_i(k, x), ref) < 1e-11);
    }
  }
}

TEST_CASE("forty-term partial sum with geometric remainder bound") {
  // Terms ratio (x/2)^2 / ((l+1)(l+1+k)); at x = 2 the remainder after 40
  // terms is far below 1e-12 relative.
  const double partial = bessel_i_partial_sum(1, 2.0, 40);
  // With x/2 = 1 the l = 40 term is 1 / (41! 40!).
  const double next_term = std::exp(-std::lgamma(42.0) - std::lgamma(41.0));
  const double remainder_bound = next_term / (1.0 - 1.0 / (41.0 * 42.0));
  CHECK(remainder_bound / partial < 1e-12);
  CHECK(rel_diff(bessel_i(1, 2.0), partial) < 1e-14);
  CHECK(rel_diff(bessel_i_scaled(1, 10.0), std::exp(-10.0) * bessel_i(1, 10.0)) < 1e-13);
}

TEST_CASE("scaled and unscaled agree where both are representable") {
  for (int k : {0, 1, 4, 10, 40}) {
    for (const double x : log_grid(0.01, 700.0, 40)) {
      const auto e = evaluate_bessel_i(k, x);
      if (e.value == 0.0 || e.unscaled_overflow) continue;
      CHECK(rel_diff(e.value * std::exp(-x), e.scaled_value) < 1e-12);
    }
  }
}

TEST_CASE("overflow is reported, not returned as infinity") {
  CHECK_THROWS_AS(bessel_i(1, 800.0), std::overflow_error);
  const auto e = evaluate_bessel_i(1, 800.0);
  CHECK(e.unscaled_overflow);
  CHECK(std::isfinite(e.scaled_value));
  CHECK(e.scaled_value > 0.0);
}

TEST_CASE("scaled form finite up to 1e5 for every order up to 10") {
  for (int k = 0; k <= 10; ++k) {
    for (const double x : log_grid(1.0, 1e5, 30)) {
      const double v = bessel_i_scaled(k, x);
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
    }
  }
}

TEST_CASE("monotone in the argument") {
  for (int k : {0, 1, 3, 10}) {
    double prev = log_bessel_i_scaled(k, 1e-3);
    double prev_x = 1e-3;
    for (const double x : log_grid(2e-3, 5e4, 80)) {
      // log I_k = log scaled + x must increase strictly.
      const double cur = log_bessel_i_scaled(k, x);
      CHECK(cur + x > prev + prev_x);
      prev = cur;
      prev_x = x;
    }
  }
}

TEST_CASE("both summation methods agree in their overlap") {
  for (int k : {0, 1, 2, 7}) {
    for (const double x : {30.0, 60.0, 200.0, 1000.0}) {
      const auto series = evaluate_bessel_i(k, x, 1e-13, BesselMethod::kPowerSeries);
      const auto hankel = evaluate_bessel_i(k, x, 1e-13, BesselMethod::kLargeArgument);
      CHECK(rel_diff(series.scaled_value, hankel.scaled_value) < 1e-12);
    }
  }
  CHECK_THROWS_AS(evaluate_bessel_i(100, 30.0, 1e-12, BesselMethod::kLargeArgument),
                  std::domain_error);
}

TEST_CASE("doubling the retained terms moves the sum by less than the estimate") {
  for (const auto& f : kFrozen) {
    if (f.x > 200.0) continue;
    const auto e = evaluate_bessel_i(f.k, f.x, 1e-12, BesselMethod::kPowerSeries);
    const auto tight = evaluate_bessel_i(f.k, f.x, 1e-15, BesselMethod::kPowerSeries);
    CHECK(tight.terms_used >= e.terms_used);
    CHECK(rel_diff(e.scaled_value, tight.scaled_value) <= std::max(e.est_rel_error, 1e-15));
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(bessel_i(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i(kMaxBesselOrder + 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i(1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i(1, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i(1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_i(1, 1.0, 1e-2), std::invalid_argument);
  CHECK_NOTHROW(bessel_i(1, 1.0, 1e-3));
  CHECK_NOTHROW(bessel_i_scaled(kMaxBesselOrder, 10.0));
}

TEST_CASE("bound formula and validity threshold") {
  const auto [lo, hi] = bessel_bounds(2, 50.0);
  const double s = 1.0 / std::sqrt(2.0 * std::numbers::pi * 50.0);
  CHECK(hi == doctest::Approx(s).epsilon(1e-15));
  CHECK(lo == doctest::Approx(s * (1.0 - 15.0 / 400.0)).epsilon(1e-15));
  CHECK(lo < bessel_i_scaled(2, 50.0));
  CHECK(bessel_i_scaled(2, 50.0) < hi);
  CHECK_THROWS_AS(bessel_bounds(1, 3.0 / 8.0), std::domain_error);
  CHECK_THROWS_AS(bessel_bounds(1, 0.3), std::domain_error);
  CHECK_NOTHROW(bessel_bounds(1, 0.376));
}

TEST_CASE("bracket holds for orders 2..10 across the grid") {
  for (int k = 2; k <= 10; ++k) {
    const double x0 = (4.0 * k * k - 1.0) / 8.0 + 1.0;
    for (const double x : log_grid(x0 * (1 + 1e-9), 1e4, 60)) {
      const auto [lo, hi] = bessel_bounds(k, x);
      const double v = bessel_i_scaled(k, x);
      CAPTURE(k);
      CAPTURE(x);
      CHECK(lo < v);
      CHECK(v < hi);
    }
  }
}

TEST_CASE("order one sits below the two-term lower bound") {
  // The next expansion term for k = 1 is -15/(128 x^2), so the two-term
  // lower bound is not a bound. Frozen at x = 100 and x = 700.
  for (const double x : {100.0, 700.0}) {
    const auto [lo, hi] = bessel_bounds(1, x);
    const double v = bessel_i_scaled(1, x);
    CHECK(v < lo);
    CHECK(v < hi);
    const double gap = (lo - v) * std::sqrt(2.0 * std::numbers::pi * x);
    CHECK(gap == doctest::Approx(15.0 / (128.0 * x * x)).epsilon(0.02));
  }
}
