#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "extinction_lab/fitness_model.hpp"
#include "extinction_lab/random.hpp"
#include "extinction_lab/statistics.hpp"

using namespace extinction_lab;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path;
}

std::vector<FitnessDistribution> builtins() {
  return {FitnessDistribution::uniform(0.0, 1.0), FitnessDistribution::uniform(-2.0, 3.0),
          FitnessDistribution::exponential(1.0), FitnessDistribution::exponential(0.25),
          FitnessDistribution::table({0.0, 0.5, 2.0, 3.0}, {0.0, 0.1, 0.8, 1.0})};
}

}  // namespace

TEST_CASE("effective birth rate") {
  const auto u = FitnessDistribution::uniform(0.0, 1.0);
  CHECK(effective_birth_rate(ModelParams::create(2.0, 1.0, u, 1, 0.25)) == 0.5);
  CHECK(effective_birth_rate(ModelParams::create(1.0, 1.0, u, 1, 1.0 - 1e-9)) ==
        doctest::Approx(1.0).epsilon(1e-8));
  const auto e = FitnessDistribution::exponential(1.0);
  CHECK(effective_birth_rate(ModelParams::create(3.0, 1.0, e, 1, std::log(2.0))) ==
        doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("fitness outside the support is rejected") {
  const auto u = FitnessDistribution::uniform(0.0, 1.0);
  CHECK_THROWS_AS(ModelParams::create(2.0, 1.0, u, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(2.0, 1.0, u, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(2.0, 1.0, u, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(2.0, 1.0, u, 1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(0.0, 1.0, u, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(2.0, -1.0, u, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::create(2.0, 1.0, u, 0, 0.5), std::invalid_argument);
}

TEST_CASE("critical fitness") {
  CHECK(*critical_fitness(2.0, 1.0, FitnessDistribution::uniform(0.0, 1.0)) == 0.5);
  CHECK_FALSE(critical_fitness(1.0, 2.0, FitnessDistribution::uniform(0.0, 1.0)).has_value());
  CHECK_FALSE(critical_fitness(1.0, 1.0, FitnessDistribution::uniform(0.0, 1.0)).has_value());
  CHECK(*critical_fitness(2.0, 1.0, FitnessDistribution::exponential(1.0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(0.5, 1.0) == Regime::kSubcritical);
  CHECK(classify_regime(1.0, 1.0) == Regime::kCritical);
  CHECK(classify_regime(1.5, 1.0) == Regime::kSupercritical);
  CHECK(classify_regime(1.0 + 1e-13, 1.0) == Regime::kCritical);
  CHECK(classify_regime(1.0 + 1e-10, 1.0) == Regime::kSupercritical);
  CHECK(to_string(Regime::kCritical) == "critical");
}

TEST_CASE("regime flips exactly at the critical fitness") {
  const auto u = FitnessDistribution::uniform(0.0, 1.0);
  for (double f = 0.05; f < 0.99; f += 0.05) {
    const auto params = ModelParams::create(2.0, 1.0, u, 1, f);
    const auto regime = classify_regime(params);
    if (f < 0.5 - 1e-9) CHECK(regime == Regime::kSubcritical);
    if (f > 0.5 + 1e-9) CHECK(regime == Regime::kSupercritical);
  }
  CHECK(classify_regime(ModelParams::create(2.0, 1.0, u, 1, 0.5)) == Regime::kCritical);
}

TEST_CASE("quantile and cdf round trip on a thousand points") {
  for (const auto& d : builtins()) {
    CAPTURE(d.describe());
    double prev = -INFINITY;
    for (int i = 1; i < 1000; ++i) {
      const double p = i / 1000.0;
      const double x = d.quantile(p);
      CHECK(std::abs(d.cdf(x) - p) <= 1e-12);
      CHECK(x > prev);
      prev = x;
    }
  }
}

TEST_CASE("cdf is non-decreasing and saturates outside the support") {
  for (const auto& d : builtins()) {
    const auto s = d.support();
    CHECK(d.cdf(s.lo - 1.0) == 0.0);
    if (std::isfinite(s.hi)) CHECK(d.cdf(s.hi + 1.0) == 1.0);
    double prev = 0.0;
    for (double x = s.lo - 1.0; x < s.lo + 10.0; x += 0.01) {
      const double v = d.cdf(x);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("sampler passes KS at alpha 0.01 with n = 1e5") {
  int i = 0;
  for (const auto& d : builtins()) {
    RandomStream rng(2024, i++);
    std::vector<double> sample(100'000);
    for (auto& x : sample) x = d.sample(rng);
    const double D = ks_distance(sample, [&](std::span<const double> xs) {
      std::vector<double> out;
      for (double x : xs) out.push_back(d.cdf(x));
      return out;
    });
    CAPTURE(d.describe());
    CHECK(D < ks_critical_value(sample.size(), 0.01));
  }
}

TEST_CASE("spec strings") {
  CHECK(FitnessDistribution::parse("uniform:0,1").cdf(0.3) == doctest::Approx(0.3));
  CHECK(FitnessDistribution::parse("exp:2").cdf(1.0) == doctest::Approx(1.0 - std::exp(-2.0)));
  CHECK_THROWS_AS(FitnessDistribution::parse("uniform:1,0"), std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::parse("uniform:0"), std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::parse("exp:-1"), std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::parse("gauss:0,1"), std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::parse("table:/nonexistent/file.csv"),
                  std::invalid_argument);

  const auto path = write_temp("el_table_ok.csv", "x,F\n0,0\n1,0.25\n# comment\n3,1\n");
  const auto t = FitnessDistribution::parse("table:" + path.string());
  CHECK(t.cdf(0.5) == doctest::Approx(0.125));
  CHECK(t.cdf(2.0) == doctest::Approx(0.625));
  CHECK(t.quantile(0.625) == doctest::Approx(2.0));
}

TEST_CASE("table validation") {
  CHECK_THROWS_AS(FitnessDistribution::table({0.0, 1.0, 1.0}, {0.0, 0.5, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::table({0.0, 1.0, 2.0}, {0.0, 0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::table({0.0, 1.0}, {0.1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(FitnessDistribution::table({0.0, 1.0}, {0.0, 0.9}), std::invalid_argument);
  const auto bad = write_temp("el_table_bad.csv", "x,F\n0,0\n1,abc\n");
  CHECK_THROWS_AS(FitnessDistribution::table_from_csv(bad), std::invalid_argument);
}
