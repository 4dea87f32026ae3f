#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "extinction_lab/fitness_model.hpp"

namespace extinction_lab {

/// Default relative tolerance of the survival-tail quadrature.
inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// Raised when a series or quadrature stops before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

/// P(H0 = n | X0 = k) for the discrete walk with up-probability p and
/// down-probability q: (k/n) C(n, (n+k)/2) q^((n+k)/2) p^((n-k)/2) when
/// n >= k and n + k is even, 0 otherwise. Evaluated in log space.
double hitting_pmf_discrete(int k, long n, double p, double q);

/// Law of the survival time of a species whose fitness sits at the top of k
/// competitors, equivalently the first-passage time to 0 of the
/// continuous-time walk with up-rate lambda_f and down-rate mu started at k.
///
/// The tail is
///   P(tau > t) = 1 - (mu/lambda_f)^(k/2) int_0^t e^{-c u} (k/u) I_k(beta u) du,
/// with c = lambda_f + mu and beta = 2 sqrt(mu lambda_f). Every integrand
/// evaluation goes through log(e^{-x} I_k(x)), using c - beta = gamma, so
/// none of the pieces overflow for large t or k.
class SurvivalLaw {
 public:
  SurvivalLaw(double lambda_f, double mu, int k);
  static SurvivalLaw from_params(const ModelParams& params);

  double lambda_f() const { return lambda_f_; }
  double mu() const { return mu_; }
  int k() const { return k_; }
  /// Total jump rate lambda_f + mu.
  double c() const { return lambda_f_ + mu_; }
  double p() const { return lambda_f_ / c(); }
  double q() const { return mu_ / c(); }
  /// Exponential decay rate (sqrt(mu) - sqrt(lambda_f))^2.
  double gamma() const { return gamma_; }
  /// Bessel argument rate 2 sqrt(mu lambda_f).
  double beta() const { return beta_; }
  Regime regime() const { return regime_; }

  /// P(tau = +inf) = max(0, 1 - (mu/lambda_f)^k).
  double defect() const;
  /// 1 - defect.
  double finite_mass() const;

  /// P(tau > t), clamped to [defect, 1]. For c t <= 2 the head integral
  /// over [0, t] is subtracted from 1; past that the tail is computed
  /// directly as defect + int_t^inf so small tails keep relative accuracy.
  /// Throws ConvergenceError when the quadrature misses rel_tol.
  double survival_tail(double t, double rel_tol = kDefaultQuadratureTolerance) const;

  /// Density of the finite part of tau at t > 0 (the tail integrand). Throws
  /// std::domain_error for t <= 0.
  double density(double t) const;
  double log_density(double t) const;

  /// int_a^b density, 0 <= a <= b. The piece inside [0, min(1/c, b)] is
  /// integrated termwise from the power series of the integrand.
  double integrate_density(double a, double b,
                           double rel_tol = kDefaultQuadratureTolerance) const;
  /// int_t^inf density, via u = t / v^2 on v in (0, 1].
  double upper_tail_mass(double t, double rel_tol = kDefaultQuadratureTolerance) const;

  /// P(tau <= t) at every point of an ascending sequence, by accumulating
  /// the density between consecutive points.
  std::vector<double> cdf_at_sorted(std::span<const double> sorted_times,
                                    double rel_tol = kDefaultQuadratureTolerance) const;

  /// P(tau <= t) as the Gamma mixture sum_n P(H0 = n) GammaCDF(n, c)(t).
  /// Summation stops once the undiscounted remaining walk mass times the
  /// next Gamma CDF is below rel_tol. `n_max` caps the walk length (default
  /// ten million); throws ConvergenceError when the cap is hit first.
  /// t may be +inf.
  double cdf_series(double t, std::optional<long> n_max = std::nullopt,
                    double rel_tol = 1e-12) const;

  /// C_k = k/(2 sqrt(pi)) (mu/lambda_f)^(k/2) (mu lambda_f)^(-1/4) / gamma.
  /// Infinite in the critical regime.
  double asymptotic_constant() const;
  /// C_k e^{-gamma t} t^{-3/2}: the large-t form of P(t < tau < inf).
  double asymptotic_excess(double t) const;
  /// Large-t approximation of P(tau > t): the excess above when
  /// subcritical, defect + excess when supercritical, k (pi mu t)^(-1/2)
  /// when critical.
  double tail_asymptotic(double t) const;

  /// E[e^{-s tau_1}] of the single-species (k = 1) law. Requires k == 1.
  double mgf(double s) const;
  /// M(s)^k, the transform of the k-species law.
  double mgf_k(double s) const;
  /// d/ds of the single-species transform; -inf at s = 0 in the critical
  /// regime.
  double mgf_derivative(double s) const;

  /// E[tau] = -k M'(0) = k / (mu - lambda_f) when subcritical; nullopt
  /// (infinite) otherwise.
  std::optional<double> mean_survival() const;
  /// k 2 mu / (mu - lambda_f): the alternative closed form quoted alongside
  /// the transform. Kept only so reports can show which value the
  /// simulation supports.
  double quoted_mean_claim() const;

 private:
  double head_mass(double t) const;

  double lambda_f_;
  double mu_;
  int k_;
  double gamma_;
  double beta_;
  double log_prefactor_;  // (k/2) log(mu / lambda_f)
  Regime regime_;
};

}  // namespace extinction_lab
