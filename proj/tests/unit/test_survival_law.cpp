#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "extinction_lab/survival_law.hpp"

using namespace extinction_lab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Laplace transform of the density by Boost's Gauss-Kronrod, independent of
// the library's own quadrature.
double boost_laplace(const SurvivalLaw& law, double s) {
  auto f = [&](double t) { return t > 0.0 ? std::exp(-s * t) * law.density(t) : 0.0; };
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, kInf, 20, 1e-13,
                                                                        &err);
}

struct FrozenTail {
  double lambda_f, mu;
  int k;
  double t, tail;
};

// P(tau > t) from a 40-digit quadrature of the Bessel integral.
const FrozenTail kTails[] = {
    {0.5, 1.0, 1, 5.0, 0.098332248981137141},
    {0.5, 1.0, 3, 2.0, 0.78782345829089601},
    {1.0, 1.0, 2, 10.0, 0.34582244591790051},
    {1.5, 1.0, 1, 1.0, 0.58361125659930673},
    {0.5, 1.0, 2, 3.0, 0.41342081922004621},
    {0.3, 2.0, 5, 0.1, 0.99999779571882053},
    {2.0, 1.0, 3, 4.0, 0.90383128272008567},
};

std::vector<SurvivalLaw> grid_laws() {
  std::vector<SurvivalLaw> out;
  for (const auto& [lf, mu] : std::vector<std::pair<double, double>>{
           {0.5, 1.0}, {1.0, 1.0}, {1.5, 1.0}, {0.3, 2.0}, {2.0, 1.0}}) {
    for (int k : {1, 2, 5}) out.emplace_back(lf, mu, k);
  }
  return out;
}

}  // namespace

TEST_CASE("derived rates") {
  const SurvivalLaw law(0.5, 1.0, 1);
  CHECK(law.c() == 1.5);
  CHECK(law.p() + law.q() == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(law.p() == doctest::Approx(1.0 / 3.0));
  CHECK(law.gamma() == doctest::Approx(std::pow(1.0 - std::sqrt(0.5), 2)).epsilon(1e-15));
  CHECK(SurvivalLaw(1.0, 1.0, 1).gamma() == 0.0);
  CHECK(law.regime() == Regime::kSubcritical);
  CHECK_THROWS_AS(SurvivalLaw(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(SurvivalLaw(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("defect") {
  CHECK(SurvivalLaw(0.5, 1.0, 3).defect() == 0.0);
  CHECK(SurvivalLaw(1.0, 1.0, 3).defect() == 0.0);
  CHECK(SurvivalLaw(2.0, 1.0, 1).defect() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(SurvivalLaw(2.0, 1.0, 3).defect() == doctest::Approx(7.0 / 8.0).epsilon(1e-15));
  CHECK(SurvivalLaw(1.5, 1.0, 1).defect() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("discrete hitting pmf") {
  const double p = 0.3, q = 0.7;
  CHECK(hitting_pmf_discrete(1, 1, p, q) == doctest::Approx(q).epsilon(1e-15));
  CHECK(hitting_pmf_discrete(1, 3, p, q) == doctest::Approx(p * q * q).epsilon(1e-14));
  CHECK(hitting_pmf_discrete(2, 2, p, q) == doctest::Approx(q * q).epsilon(1e-15));
  CHECK(hitting_pmf_discrete(2, 3, p, q) == 0.0);  // parity
  CHECK(hitting_pmf_discrete(3, 1, p, q) == 0.0);  // n < k
  // k = 2, n = 4: paths d u d d and u d d d.
  CHECK(hitting_pmf_discrete(2, 4, p, q) == doctest::Approx(2 * p * q * q * q).epsilon(1e-14));
}

TEST_CASE("pmf mass equals the gambler's ruin probability") {
  for (const auto& [p, k] : std::vector<std::pair<double, int>>{
           {0.3, 1}, {0.3, 4}, {0.6, 1}, {0.6, 3}, {0.45, 2}}) {
    const double q = 1.0 - p;
    double total = 0.0;
    for (long n = 1; n <= 200'000; ++n) total += hitting_pmf_discrete(k, n, p, q);
    CHECK(total == doctest::Approx(std::min(1.0, std::pow(q / p, k))).epsilon(1e-10));
  }
}

TEST_CASE("survival tail matches frozen high-precision values") {
  for (const auto& f : kTails) {
    CAPTURE(f.lambda_f);
    CAPTURE(f.k);
    CAPTURE(f.t);
    const SurvivalLaw law(f.lambda_f, f.mu, f.k);
    CHECK(std::abs(law.survival_tail(f.t) - f.tail) < 1e-9);
  }
}

TEST_CASE("tail boundary values") {
  for (const auto& law : grid_laws()) {
    CHECK(law.survival_tail(0.0) == 1.0);
  }
  const SurvivalLaw super(1.5, 1.0, 1);
  CHECK(super.survival_tail(1e6) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(super.survival_tail(-1.0), std::invalid_argument);
}

TEST_CASE("quadrature and Gamma-mixture series agree") {
  for (const auto& law : grid_laws()) {
    for (const double t : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
      CAPTURE(law.lambda_f());
      CAPTURE(law.mu());
      CAPTURE(law.k());
      CAPTURE(t);
      CHECK(std::abs((1.0 - law.survival_tail(t)) - law.cdf_series(t)) <= 1e-8);
    }
  }
}

TEST_CASE("series limits and truncation failure") {
  const SurvivalLaw law(2.0, 1.0, 1);
  CHECK(law.cdf_series(0.0) == 0.0);
  CHECK(law.cdf_series(kInf) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(SurvivalLaw(0.5, 1.0, 1).cdf_series(5.0, 3), ConvergenceError);
  try {
    (void)SurvivalLaw(0.5, 1.0, 1).cdf_series(5.0, 3);
  } catch (const ConvergenceError& e) {
    CHECK(e.achieved_error() > 0.0);
  }
}

TEST_CASE("tail is non-increasing and bounded below by the defect") {
  for (const auto& law : grid_laws()) {
    double prev = 1.0;
    for (double t = 0.05; t < 300.0; t *= 1.3) {
      const double v = law.survival_tail(t);
      CHECK(v <= prev + 1e-15);
      CHECK(v >= law.defect());
      prev = v;
    }
  }
}

TEST_CASE("density small-time limits and numerical derivative") {
  CHECK(SurvivalLaw(0.5, 1.0, 1).density(1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(SurvivalLaw(0.3, 2.0, 1).density(1e-12) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(SurvivalLaw(0.5, 1.0, 2).density(1e-12) < 1e-9);
  CHECK_THROWS_AS(SurvivalLaw(0.5, 1.0, 1).density(0.0), std::domain_error);

  const SurvivalLaw law(0.5, 1.0, 1);
  const double h = 1e-4;
  const double fd = (law.survival_tail(2.0 - h) - law.survival_tail(2.0 + h)) / (2.0 * h);
  CHECK(std::abs(fd - law.density(2.0)) < 1e-6);
  CHECK(law.density(2.0) == doctest::Approx(0.1192317192431485).epsilon(1e-12));
  CHECK(SurvivalLaw(0.5, 1.0, 3).density(1.5) ==
        doctest::Approx(0.15591903735940221).epsilon(1e-12));
  CHECK(SurvivalLaw(2.0, 1.0, 2).density(0.7) ==
        doctest::Approx(0.11738493122920668).epsilon(1e-12));
}

TEST_CASE("density normalization") {
  for (const auto& law : grid_laws()) {
    const double T = 40.0;
    const double mass = law.integrate_density(0.0, T) + law.survival_tail(T);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(law.integrate_density(0.0, T) + law.upper_tail_mass(T) ==
          doctest::Approx(law.finite_mass()).epsilon(1e-8));
  }
}

TEST_CASE("cdf on sorted points") {
  const SurvivalLaw law(0.5, 1.0, 2);
  const std::vector<double> ts{0.0, 0.3, 1.0, 4.0, 25.0};
  const auto cdf = law.cdf_at_sorted(ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(cdf[i] == doctest::Approx(1.0 - law.survival_tail(ts[i])).epsilon(1e-9));
  }
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(law.cdf_at_sorted(unsorted), std::invalid_argument);
}

TEST_CASE("transform") {
  CHECK(SurvivalLaw(0.5, 1.0, 1).mgf(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(SurvivalLaw(2.0, 1.0, 1).mgf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(SurvivalLaw(0.5, 1.0, 1).mgf(1.0) ==
        doctest::Approx(0.43844718719116973).epsilon(1e-14));
  CHECK_THROWS_AS(SurvivalLaw(0.5, 1.0, 2).mgf(1.0), std::invalid_argument);
  const SurvivalLaw law(0.5, 1.0, 1);
  for (const double s : {0.1, 1.0, 5.0}) {
    CHECK(std::abs(law.mgf(s) - boost_laplace(law, s)) < 1e-8);
  }
  const SurvivalLaw law3(0.5, 1.0, 3);
  CHECK(law3.mgf_k(1.0) == doctest::Approx(std::pow(law.mgf(1.0), 3)).epsilon(1e-14));
  CHECK(std::abs(law3.mgf_k(1.0) - boost_laplace(law3, 1.0)) < 1e-8);
}

TEST_CASE("mean survival follows the transform") {
  const SurvivalLaw law(0.5, 1.0, 1);
  REQUIRE(law.mean_survival().has_value());
  CHECK(*law.mean_survival() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(law.quoted_mean_claim() == doctest::Approx(4.0).epsilon(1e-15));
  const double h = 1e-6;
  const double fd = -(law.mgf(h) - 1.0) / h;
  CHECK(fd == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(-law.mgf_derivative(0.0) == doctest::Approx(2.0).epsilon(1e-14));
  // First moment from the density directly.
  const double m1 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [&](double t) { return t > 0.0 ? t * law.density(t) : 0.0; }, 0.0, kInf, 20, 1e-12);
  CHECK(m1 == doctest::Approx(2.0).epsilon(1e-8));

  CHECK_FALSE(SurvivalLaw(1.0, 1.0, 1).mean_survival().has_value());
  CHECK_FALSE(SurvivalLaw(1.5, 1.0, 1).mean_survival().has_value());
  CHECK(*SurvivalLaw(0.9, 1.0, 5).mean_survival() ==
        doctest::Approx(5.0 * *SurvivalLaw(0.9, 1.0, 1).mean_survival()).epsilon(1e-13));
}

TEST_CASE("asymptotic forms") {
  const SurvivalLaw crit(1.0, 1.0, 1);
  CHECK(crit.tail_asymptotic(100.0) ==
        doctest::Approx(1.0 / std::sqrt(100.0 * std::numbers::pi)).epsilon(1e-15));

  // Subcritical ratio at t = 200 (gamma t ~ 17.2) is still 8% below one;
  // frozen from a 40-digit evaluation.
  const SurvivalLaw sub(0.5, 1.0, 1);
  CHECK(sub.survival_tail(200.0) / sub.tail_asymptotic(200.0) ==
        doctest::Approx(0.9220698683624).epsilon(1e-8));

  const SurvivalLaw super(2.0, 1.0, 1);
  const double excess_ratio = (super.upper_tail_mass(200.0)) / super.asymptotic_excess(200.0);
  CHECK(std::abs(excess_ratio - 1.0) < 0.05);
  CHECK(super.tail_asymptotic(200.0) ==
        doctest::Approx(super.defect() + super.asymptotic_excess(200.0)).epsilon(1e-15));

  // Convergence towards one as gamma t grows.
  double prev_gap = 1.0;
  for (const double gt : {5.0, 10.0, 20.0, 40.0, 80.0, 160.0}) {
    const double t = gt / sub.gamma();
    const double gap = std::abs(sub.survival_tail(t) / sub.tail_asymptotic(t) - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.02);

  CHECK(crit.asymptotic_constant() == kInf);
  CHECK_THROWS_AS(sub.tail_asymptotic(0.0), std::domain_error);
}

TEST_CASE("small tails keep relative accuracy") {
  const SurvivalLaw sub(0.5, 1.0, 1);
  const double t = 100.0 / sub.gamma();
  const double tail = sub.survival_tail(t);
  CHECK(tail > 0.0);
  CHECK(tail < 1e-40);
  CHECK(tail == doctest::Approx(sub.upper_tail_mass(t)).epsilon(1e-9));
}
