#include "extinction_lab/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extinction_lab {

ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("Wilson interval needs at least one trial");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {phat, std::max(0.0, centre - half), std::min(1.0, centre + half), successes,
          trials};
}

ProportionEstimate empirical_tail(std::span<const SurvivalSample> samples, double t) {
  if (samples.empty()) throw std::invalid_argument("empirical tail needs samples");
  std::size_t alive = 0;
  for (const auto& s : samples) {
    if (!s.finite()) {
      if (t > s.time) {
        throw std::invalid_argument("empirical tail queried beyond the censoring horizon");
      }
      ++alive;
    } else if (s.time > t) {
      ++alive;
    }
  }
  return wilson_interval(alive, samples.size());
}

double ks_statistic(std::span<const double> sorted_sample,
                    std::span<const double> cdf_at_sample) {
  if (sorted_sample.size() != cdf_at_sample.size()) {
    throw std::invalid_argument("sample and CDF values differ in length");
  }
  const double n = static_cast<double>(sorted_sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
    const double f = cdf_at_sample[i];
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_distance(
    std::vector<double> sample,
    const std::function<std::vector<double>(std::span<const double>)>& cdf_on_sorted,
    std::size_t min_samples) {
  if (sample.size() < min_samples || sample.empty()) {
    throw std::invalid_argument("too few finite samples for a KS distance");
  }
  std::sort(sample.begin(), sample.end());
  const auto cdf = cdf_on_sorted(sample);
  return ks_statistic(sample, cdf);
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("KS critical value needs n >= 1 and alpha in (0, 1)");
  }
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

MeanEstimate sample_mean(std::span<const double> values) {
  MeanEstimate out;
  double m2 = 0.0;
  for (const double x : values) {
    ++out.n;
    const double delta = x - out.mean;
    out.mean += delta / static_cast<double>(out.n);
    m2 += delta * (x - out.mean);
  }
  if (out.n > 1) {
    out.std_error = std::sqrt(m2 / static_cast<double>(out.n - 1) / static_cast<double>(out.n));
  }
  return out;
}

std::vector<double> finite_times(std::span<const SurvivalSample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.finite()) out.push_back(s.time);
  }
  return out;
}

}  // namespace extinction_lab
