#include "extinction_lab/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace extinction_lab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxHankelTerms = 400;
// Below this argument the dropped e^(-2x) branch of the large-argument
// expansion is no longer negligible at double precision.
constexpr double kMinHankelArgument = 25.0;

void check_arguments(int k, double x, double rel_tol) {
  if (k < 0 || k > kMaxBesselOrder) {
    throw std::invalid_argument("bessel order " + std::to_string(k) +
                                " outside [0, " +
                                std::to_string(kMaxBesselOrder) + "]");
  }
  if (!(x >= 0.0)) {
    throw std::invalid_argument("bessel argument must be non-negative");
  }
  if (!(rel_tol >= 1e-15 && rel_tol <= 1e-3)) {
    throw std::invalid_argument("bessel tolerance must lie in [1e-15, 1e-3]");
  }
}

BesselEval finish(int k, double x, double log_scaled, int terms,
                  double est_rel_error) {
  BesselEval out;
  out.order = k;
  out.argument = x;
  out.log_scaled_value = log_scaled;
  out.scaled_value = std::exp(log_scaled);
  out.terms_used = terms;
  out.est_rel_error = est_rel_error;
  const double log_value = log_scaled + x;
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    out.value = std::numeric_limits<double>::infinity();
    out.unscaled_overflow = true;
  } else {
    out.value = std::exp(log_value);
  }
  return out;
}

BesselEval at_zero(int k) {
  BesselEval out;
  out.order = k;
  out.argument = 0.0;
  out.terms_used = 1;
  if (k == 0) {
    out.value = out.scaled_value = 1.0;
    out.log_scaled_value = 0.0;
  } else {
    out.log_scaled_value = -std::numeric_limits<double>::infinity();
  }
  return out;
}

// Stirling remainder lgamma(n+1) - (n log n - n + log(2 pi n)/2), n >= 20.
double stirling_remainder(double n) {
  const double r = 1.0 / n;
  const double r2 = r * r;
  return r * (1.0 / 12.0 -
              r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))));
}

// (1 + d) log1p(d) - d without the cancellation near d = 0. The alternating
// series converges for |d| < 1; past 1/2 the direct form loses at most a
// factor of about six.
double entropy_gap(double d) {
  if (std::abs(d) >= 0.5) return (1.0 + d) * std::log1p(d) - d;
  double sum = 0.0;
  double power = d;
  for (int j = 2; j < 200; ++j) {
    power *= -d;
    const double term = -power / (j * (j - 1.0));
    sum += term;
    if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) break;
  }
  return sum;
}

struct LogPart {
  double value;
  double magnitude;  // scale of the rounding in `value`
};

// n log h - lgamma(n + 1) - h. For large n the Stirling form turns the
// n log(n/h) and n - h pieces into h * entropy_gap((n - h)/h), which stays
// the size of the result instead of the size of n log n.
LogPart log_factor(double n, double h) {
  constexpr double kStirlingFrom = 20.0;
  if (n < kStirlingFrom) {
    const double a = n * std::log(h);
    const double b = std::lgamma(n + 1.0);
    return {a - b - h, std::abs(a) + b + h};
  }
  const double d = (n - h) / h;
  const double gap = h * entropy_gap(d);
  const double spread = std::abs(d) >= 0.5 ? h * (std::abs((1.0 + d) * std::log1p(d)) + std::abs(d))
                                           : std::abs(gap);
  const double half_log = 0.5 * std::log(2.0 * std::numbers::pi * n);
  return {-gap - half_log - stirling_remainder(n), spread + half_log};
}

// Sums the power series outward from its largest term so that every partial
// term is <= 1 relative to the peak; the peak itself is carried as a log.
BesselEval power_series(int k, double x, double rel_tol) {
  const double half = 0.5 * x;
  const double half_sq = half * half;
  const double dk = k;
  auto up_ratio = [&](double l) { return half_sq / ((l + 1.0) * (l + 1.0 + dk)); };

  // (l+1)(l+1+k) = (x/2)^2 at the continuous peak.
  double peak = std::floor(0.5 * (std::sqrt(dk * dk + x * x) - dk));
  if (peak < 0.0) peak = 0.0;
  while (up_ratio(peak) > 1.0) peak += 1.0;
  while (peak > 0.0 && up_ratio(peak - 1.0) < 1.0) peak -= 1.0;

  // log of the peak term times e^(-x), split as one factor per factorial.
  const LogPart upper = log_factor(peak + dk, half);
  const LogPart lower = log_factor(peak, half);
  const double log_peak_scaled = upper.value + lower.value;

  const double target = 0.25 * rel_tol;
  double sum = 1.0;
  int terms = 1;
  double tail_bound = 0.0;

  double term = 1.0;
  for (double l = peak;; l += 1.0) {
    term *= up_ratio(l);
    sum += term;
    ++terms;
    const double next = up_ratio(l + 1.0);
    const double remainder = term * next / (1.0 - next);
    if (remainder <= target * sum) {
      tail_bound += remainder;
      break;
    }
  }

  term = 1.0;
  for (double l = peak; l > 0.0; l -= 1.0) {
    term *= l * (l + dk) / half_sq;
    sum += term;
    ++terms;
    if (l - 1.0 <= 0.0) break;
    const double next = (l - 1.0) * (l - 1.0 + dk) / half_sq;
    const double remainder = term * next / (1.0 - next);
    if (remainder <= target * sum) {
      tail_bound += remainder;
      break;
    }
  }

  // Rounding in the log-space prefactor is absolute in the exponent, i.e.
  // relative in the result, and scales with the pieces that were combined.
  // The ratio recurrence and summation add a random-walk eps sqrt(terms).
  const double rounding =
      kEps * (upper.magnitude + lower.magnitude + 4.0 * std::sqrt(static_cast<double>(terms)));
  return finish(k, x, log_peak_scaled + std::log(sum), terms, tail_bound / sum + rounding);
}

// e^(-x) I_k(x) ~ (2 pi x)^(-1/2) sum_j (-1)^j a_j(k) / x^j with
// a_j = prod_{i<=j} (4k^2 - (2i-1)^2) / (8i). Returns false when the terms
// stop shrinking before reaching the tolerance.
bool large_argument(int k, double x, double rel_tol, BesselEval& out) {
  if (x < kMinHankelArgument) return false;
  const double four_k_sq = 4.0 * static_cast<double>(k) * k;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j <= kMaxHankelTerms; ++j) {
    const double odd = 2.0 * j - 1.0;
    const double next = -term * (four_k_sq - odd * odd) / (8.0 * j * x);
    if (j > 1 && std::abs(next) > std::abs(term) && std::abs(next) > 0.1 * rel_tol * std::abs(sum)) {
      return false;
    }
    term = next;
    sum += term;
    if (std::abs(term) <= 0.1 * rel_tol * std::abs(sum)) {
      if (sum <= 0.0) return false;
      const double est = std::abs(term / sum) + std::exp(-2.0 * x) +
                         4.0 * kEps * (j + 1);
      out = finish(k, x, std::log(sum) - 0.5 * std::log(2.0 * std::numbers::pi * x),
                   j + 1, est);
      return true;
    }
  }
  return false;
}

}  // namespace

BesselEval evaluate_bessel_i(int k, double x, double rel_tol,
                             BesselMethod method) {
  check_arguments(k, x, rel_tol);
  if (x == 0.0) return at_zero(k);
  if (std::isinf(x)) {
    // e^(-x) I_k(x) ~ 1/sqrt(2 pi x) -> 0.
    BesselEval out;
    out.order = k;
    out.argument = x;
    out.value = x;
    out.log_scaled_value = -std::numeric_limits<double>::infinity();
    out.unscaled_overflow = true;
    return out;
  }
  if (method == BesselMethod::kPowerSeries) return power_series(k, x, rel_tol);
  BesselEval out;
  if (!large_argument(k, x, rel_tol, out)) {
    throw std::domain_error("large-argument expansion does not converge at order " +
                            std::to_string(k) + ", x = " + std::to_string(x));
  }
  return out;
}

BesselEval evaluate_bessel_i(int k, double x, double rel_tol) {
  check_arguments(k, x, rel_tol);
  if (x == 0.0 || std::isinf(x)) {
    return evaluate_bessel_i(k, x, rel_tol, BesselMethod::kPowerSeries);
  }
  BesselEval out;
  if (large_argument(k, x, rel_tol, out)) return out;
  return power_series(k, x, rel_tol);
}

double bessel_i(int k, double x, double rel_tol) {
  const BesselEval eval = evaluate_bessel_i(k, x, rel_tol);
  if (eval.unscaled_overflow) {
    throw std::overflow_error("I_" + std::to_string(k) + "(" + std::to_string(x) +
                              ") exceeds the double range; use bessel_i_scaled");
  }
  return eval.value;
}

double bessel_i_scaled(int k, double x, double rel_tol) {
  return evaluate_bessel_i(k, x, rel_tol).scaled_value;
}

double log_bessel_i_scaled(int k, double x, double rel_tol) {
  return evaluate_bessel_i(k, x, rel_tol).log_scaled_value;
}

std::pair<double, double> bessel_bounds(int k, double x) {
  if (k < 0 || k > kMaxBesselOrder) {
    throw std::invalid_argument("bessel order out of range");
  }
  const double threshold = (4.0 * static_cast<double>(k) * k - 1.0) / 8.0;
  if (!(x > threshold) || !(x > 0.0)) {
    throw std::domain_error("bessel_bounds requires x > (4k^2 - 1) / 8 = " +
                            std::to_string(threshold));
  }
  const double upper = 1.0 / std::sqrt(2.0 * std::numbers::pi * x);
  const double lower = upper * (1.0 - threshold / x);
  return {lower, upper};
}

double bessel_i_partial_sum(int k, double x, int n_terms) {
  if (k < 0 || k > kMaxBesselOrder || !(x >= 0.0) || n_terms < 0) {
    throw std::invalid_argument("invalid partial-sum request");
  }
  if (n_terms == 0) return 0.0;
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  double term = std::exp(k * std::log(half) - std::lgamma(k + 1.0));
  double sum = term;
  for (int l = 0; l + 1 < n_terms; ++l) {
    term *= half * half / ((l + 1.0) * (l + 1.0 + k));
    sum += term;
  }
  return sum;
}

}  // namespace extinction_lab
