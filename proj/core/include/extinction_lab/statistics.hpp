#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "extinction_lab/simulator.hpp"

namespace extinction_lab {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct ProportionEstimate {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
};

/// Wilson score interval for a binomial proportion.
ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials,
                                   double z = kZ95);

/// Fraction of samples still alive after t (censored samples count as alive
/// for every t up to their horizon) with its Wilson interval. Throws
/// std::invalid_argument when there are no samples or t exceeds the horizon
/// of a censored sample.
ProportionEstimate empirical_tail(std::span<const SurvivalSample> samples, double t);

/// sup |F_n - F| over an ascending sample with the model CDF evaluated at
/// the same points; checks both sides of every jump.
double ks_statistic(std::span<const double> sorted_sample,
                    std::span<const double> cdf_at_sample);

/// Sorts `sample`, evaluates `cdf_on_sorted` on it and returns the KS
/// distance. Throws std::invalid_argument for fewer than `min_samples`.
double ks_distance(std::vector<double> sample,
                   const std::function<std::vector<double>(std::span<const double>)>& cdf_on_sorted,
                   std::size_t min_samples = 100);

/// Asymptotic Kolmogorov critical value sqrt(-ln(alpha/2) / 2) / sqrt(n).
double ks_critical_value(std::size_t n, double alpha);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean and its standard error (Welford accumulation).
MeanEstimate sample_mean(std::span<const double> values);

/// Death times of the finite samples, in sample order.
std::vector<double> finite_times(std::span<const SurvivalSample> samples);

}  // namespace extinction_lab
