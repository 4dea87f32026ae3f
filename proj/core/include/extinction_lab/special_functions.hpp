#pragma once

#include <utility>

namespace extinction_lab {

/// Largest Bessel order accepted by the evaluators.
inline constexpr int kMaxBesselOrder = 10000;

/// Default relative tolerance for Bessel evaluation.
inline constexpr double kDefaultBesselTolerance = 1e-12;

/// Result of evaluating the modified Bessel function of the first kind.
///
/// `scaled_value` is e^(-x) I_k(x) and is always representable. `value` is
/// the unscaled I_k(x); it is +inf when I_k(x) exceeds the double range, in
/// which case `unscaled_overflow` is set. `log_scaled_value` is
/// log(e^(-x) I_k(x)) and stays finite where `scaled_value` underflows.
struct BesselEval {
  int order = 0;
  double argument = 0.0;
  double value = 0.0;
  double scaled_value = 0.0;
  double log_scaled_value = 0.0;
  int terms_used = 0;
  double est_rel_error = 0.0;
  bool unscaled_overflow = false;
};

/// Which summation produced a BesselEval.
enum class BesselMethod {
  kPowerSeries,   // peak-centred power series, log-space prefactor
  kLargeArgument  // Hankel large-argument expansion
};

/// Full evaluation of I_k(x) with diagnostics. Picks the large-argument
/// expansion when it reaches the tolerance, the power series otherwise.
///
/// Throws std::invalid_argument for k outside [0, kMaxBesselOrder], x < 0 or
/// NaN, or rel_tol outside [1e-15, 1e-3].
BesselEval evaluate_bessel_i(int k, double x,
                             double rel_tol = kDefaultBesselTolerance);

/// Same as evaluate_bessel_i but forces one summation method. The power
/// series is valid for every argument; the large-argument expansion throws
/// std::domain_error when it cannot reach rel_tol at this (k, x).
BesselEval evaluate_bessel_i(int k, double x, double rel_tol,
                             BesselMethod method);

/// I_k(x). Throws std::overflow_error when the value is not representable;
/// use bessel_i_scaled in that regime.
double bessel_i(int k, double x, double rel_tol = kDefaultBesselTolerance);

/// e^(-x) I_k(x); finite for every finite x >= 0.
double bessel_i_scaled(int k, double x,
                       double rel_tol = kDefaultBesselTolerance);

/// log(e^(-x) I_k(x)); -inf only for x == 0 and k >= 1.
double log_bessel_i_scaled(int k, double x,
                           double rel_tol = kDefaultBesselTolerance);

/// Two-term large-argument bracket on the scaled function:
///   lower = (1 - (4k^2 - 1) / (8x)) / sqrt(2 pi x),  upper = 1 / sqrt(2 pi x).
/// Requires x > (4k^2 - 1) / 8 so the lower bound is positive; throws
/// std::domain_error otherwise.
///
/// The bracket is a statement about the sign of the expansion remainder. It
/// holds for k >= 2; for k = 1 the next term is negative and the scaled
/// function sits just below `lower`, for k = 0 just above `upper`.
std::pair<double, double> bessel_bounds(int k, double x);

/// Plain truncated power series sum_{l < n_terms} (x/2)^(2l+k) / ((l+k)! l!),
/// summed from l = 0 with no scaling. Intended for small arguments and for
/// checking remainder estimates.
double bessel_i_partial_sum(int k, double x, int n_terms);

}  // namespace extinction_lab
