#include "extinction_lab/survival_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "extinction_lab/quadrature.hpp"
#include "extinction_lab/special_functions.hpp"

namespace extinction_lab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long kDefaultSeriesCap = 10'000'000;
constexpr int kMaxPanels = 4000;
// Below this c*t the tail is 1 minus the head integral; above it the tail
// integral is computed directly.
constexpr double kHeadRegion = 2.0;

// int_0^1 w^n e^{-a w} dw = e^{-a} sum_m a^m / ((n+1)(n+2)...(n+1+m)); all
// terms positive.
double weighted_exp_moment(int n, double a) {
  double term = 1.0 / (n + 1.0);
  double sum = term;
  for (int m = 0; m < 500; ++m) {
    term *= a / (n + m + 2.0);
    sum += term;
    if (term <= 1e-17 * sum) break;
  }
  return std::exp(-a) * sum;
}

void check_tolerance(double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("relative tolerance must lie in (0, 1)");
  }
}

}  // namespace

double hitting_pmf_discrete(int k, long n, double p, double q) {
  if (k < 1 || n < 1) throw std::invalid_argument("hitting pmf needs k, n >= 1");
  if (!(p >= 0.0 && q >= 0.0 && std::abs(p + q - 1.0) <= 1e-12)) {
    throw std::invalid_argument("hitting pmf needs p, q >= 0 with p + q = 1");
  }
  if (n < k || (n + k) % 2 != 0) return 0.0;
  const long down = (n + k) / 2;
  const long up = (n - k) / 2;
  if (q == 0.0) return 0.0;
  if (p == 0.0) return up == 0 ? std::pow(q, k) : 0.0;
  const double dn = static_cast<double>(n);
  const double log_pmf = std::log(static_cast<double>(k)) - std::log(dn) +
                         std::lgamma(dn + 1.0) - std::lgamma(down + 1.0) -
                         std::lgamma(up + 1.0) + down * std::log(q) + up * std::log(p);
  return std::exp(log_pmf);
}

SurvivalLaw::SurvivalLaw(double lambda_f, double mu, int k)
    : lambda_f_(lambda_f), mu_(mu), k_(k) {
  if (!(lambda_f > 0.0 && std::isfinite(lambda_f))) {
    throw std::invalid_argument("lambda_f must be positive and finite");
  }
  if (!(mu > 0.0 && std::isfinite(mu))) {
    throw std::invalid_argument("mu must be positive and finite");
  }
  if (k < 1 || k > kMaxBesselOrder) {
    throw std::invalid_argument(
        fmt::format("k must lie in [1, {}], got {}", kMaxBesselOrder, k));
  }
  const double root_sum = std::sqrt(mu) + std::sqrt(lambda_f);
  gamma_ = (mu - lambda_f) * (mu - lambda_f) / (root_sum * root_sum);
  beta_ = 2.0 * std::sqrt(mu * lambda_f);
  log_prefactor_ = 0.5 * k * std::log(mu / lambda_f);
  regime_ = classify_regime(lambda_f, mu);
}

SurvivalLaw SurvivalLaw::from_params(const ModelParams& params) {
  return SurvivalLaw(params.lambda_f(), params.mu, params.k);
}

double SurvivalLaw::defect() const {
  if (regime_ != Regime::kSupercritical) return 0.0;
  return -std::expm1(k_ * std::log(mu_ / lambda_f_));
}

double SurvivalLaw::finite_mass() const {
  if (regime_ != Regime::kSupercritical) return 1.0;
  return std::exp(k_ * std::log(mu_ / lambda_f_));
}

double SurvivalLaw::log_density(double t) const {
  if (!(t > 0.0)) throw std::domain_error("density is defined for t > 0");
  if (std::isinf(t)) return -kInf;
  return log_prefactor_ + std::log(static_cast<double>(k_) / t) - gamma_ * t +
         log_bessel_i_scaled(k_, beta_ * t);
}

double SurvivalLaw::density(double t) const { return std::exp(log_density(t)); }

double SurvivalLaw::head_mass(double t) const {
  // Termwise integral of the integrand's power series over [0, t], t <= 1/c:
  //   sum_l k mu^k (mu lambda_f)^l t^(2l+k) / ((l+k)! l!) * J(2l+k-1, c t).
  const double a = c() * t;
  const double log_mu_t = std::log(mu_ * t);
  const double log_ratio = std::log(mu_ * lambda_f_ * t * t);
  double sum = 0.0;
  for (int l = 0; l < 400; ++l) {
    const double log_term = std::log(static_cast<double>(k_)) + k_ * log_mu_t +
                            l * log_ratio - std::lgamma(l + k_ + 1.0) -
                            std::lgamma(l + 1.0);
    const double term = std::exp(log_term) * weighted_exp_moment(2 * l + k_ - 1, a);
    sum += term;
    if (term <= 1e-17 * sum || term == 0.0) break;
  }
  return sum;
}

double SurvivalLaw::integrate_density(double a, double b, double rel_tol) const {
  check_tolerance(rel_tol);
  if (!(a >= 0.0 && b >= a)) {
    throw std::invalid_argument("integrate_density needs 0 <= a <= b");
  }
  if (a == b) return 0.0;
  if (std::isinf(b)) return a == 0.0 ? finite_mass() : upper_tail_mass(a, rel_tol);

  const double split = 1.0 / c();
  double total = 0.0;
  if (a < split) {
    total += head_mass(std::min(b, split));
    if (a > 0.0) total -= head_mass(a);
  }
  const double lo = std::max(a, split);
  if (b > lo) {
    auto integrand = [this](double u) { return std::exp(log_density(u)); };
    const auto result =
        integrate_adaptive(integrand, lo, b, rel_tol, 1e-300, kMaxPanels);
    if (!result.converged) {
      throw ConvergenceError(
          fmt::format("density quadrature on [{}, {}] stopped at error {:.3g}", lo,
                      b, result.abs_error),
          result.abs_error);
    }
    total += result.value;
  }
  return total;
}

double SurvivalLaw::upper_tail_mass(double t, double rel_tol) const {
  check_tolerance(rel_tol);
  if (!(t >= 0.0)) throw std::invalid_argument("upper_tail_mass needs t >= 0");
  if (t == 0.0) return finite_mass();
  if (std::isinf(t)) return 0.0;
  // Limit of the mapped integrand at v -> 0: zero when gamma > 0, otherwise
  // 2k / sqrt(2 pi beta t) from the large-argument Bessel behaviour.
  const double limit_at_zero =
      gamma_ > 0.0 ? 0.0
                   : std::exp(log_prefactor_) * 2.0 * k_ /
                         std::sqrt(2.0 * std::numbers::pi * beta_ * t);
  auto integrand = [&](double v) {
    const double u = t / (v * v);
    if (!std::isfinite(u)) return limit_at_zero;
    return std::exp(log_density(u) + std::log(2.0 * t) - 3.0 * std::log(v));
  };
  const auto result = integrate_adaptive(integrand, 0.0, 1.0, rel_tol, 1e-300, kMaxPanels);
  if (!result.converged) {
    throw ConvergenceError(
        fmt::format("tail quadrature from t = {} stopped at error {:.3g}", t,
                    result.abs_error),
        result.abs_error);
  }
  return result.value;
}

double SurvivalLaw::survival_tail(double t, double rel_tol) const {
  check_tolerance(rel_tol);
  if (!(t >= 0.0)) throw std::invalid_argument("survival_tail needs t >= 0");
  if (t == 0.0) return 1.0;
  const double lo = defect();
  if (std::isinf(t)) return lo;
  const double tail = c() * t <= kHeadRegion
                          ? 1.0 - integrate_density(0.0, t, rel_tol)
                          : lo + upper_tail_mass(t, rel_tol);
  const double slack = 10.0 * rel_tol;
  if (tail < lo - slack || tail > 1.0 + slack) {
    throw ConvergenceError(
        fmt::format("survival tail {} at t = {} escaped [{}, 1] by more than {}", tail,
                    t, lo, slack),
        std::max(lo - tail, tail - 1.0));
  }
  return std::clamp(tail, lo, 1.0);
}

std::vector<double> SurvivalLaw::cdf_at_sorted(std::span<const double> sorted_times,
                                               double rel_tol) const {
  std::vector<double> out;
  out.reserve(sorted_times.size());
  double previous = 0.0;
  double cumulative = 0.0;
  const double top = finite_mass();
  for (const double t : sorted_times) {
    if (!(t >= previous)) {
      throw std::invalid_argument("cdf_at_sorted needs non-negative ascending times");
    }
    if (std::isinf(t)) {
      cumulative = top;
    } else {
      cumulative += integrate_density(previous, t, rel_tol);
    }
    out.push_back(std::clamp(cumulative, 0.0, top));
    previous = t;
  }
  return out;
}

double SurvivalLaw::cdf_series(double t, std::optional<long> n_max,
                               double rel_tol) const {
  check_tolerance(rel_tol);
  if (!(t >= 0.0)) throw std::invalid_argument("cdf_series needs t >= 0");
  if (t == 0.0) return 0.0;
  const long cap = n_max.value_or(kDefaultSeriesCap);
  const double total = finite_mass();
  const double ct = c() * t;
  auto gamma_cdf = [&](long shape) {
    if (std::isinf(t)) return 1.0;
    return boost::math::gamma_p(static_cast<double>(shape), ct);
  };

  double sum = 0.0;
  double walk_mass = 0.0;
  double gamma_here = gamma_cdf(k_);
  for (long n = k_; n <= cap; n += 2) {
    const double pmf = hitting_pmf_discrete(k_, n, p(), q());
    sum += pmf * gamma_here;
    walk_mass += pmf;
    const double gamma_next = gamma_cdf(n + 2);
    const double remaining = std::max(0.0, total - walk_mass);
    if (remaining * gamma_next <= 0.5 * rel_tol) return std::min(sum, total);
    gamma_here = gamma_next;
  }
  throw ConvergenceError(
      fmt::format("Gamma-mixture series not converged by n_max = {}", cap),
      std::max(0.0, total - walk_mass) * gamma_here);
}

double SurvivalLaw::asymptotic_constant() const {
  if (regime_ == Regime::kCritical) return kInf;
  return std::exp(std::log(k_ / (2.0 * std::sqrt(std::numbers::pi))) + log_prefactor_ -
                  0.25 * std::log(mu_ * lambda_f_) - std::log(gamma_));
}

double SurvivalLaw::asymptotic_excess(double t) const {
  if (!(t > 0.0)) throw std::domain_error("asymptotic forms need t > 0");
  if (regime_ == Regime::kCritical) return kInf;
  return std::exp(std::log(k_ / (2.0 * std::sqrt(std::numbers::pi))) + log_prefactor_ -
                  0.25 * std::log(mu_ * lambda_f_) - std::log(gamma_) - gamma_ * t -
                  1.5 * std::log(t));
}

double SurvivalLaw::tail_asymptotic(double t) const {
  if (!(t > 0.0)) throw std::domain_error("asymptotic forms need t > 0");
  switch (regime_) {
    case Regime::kCritical:
      return k_ / std::sqrt(std::numbers::pi * mu_ * t);
    case Regime::kSubcritical:
      return asymptotic_excess(t);
    case Regime::kSupercritical:
      return defect() + asymptotic_excess(t);
  }
  return kInf;
}

namespace {

double single_transform(double lambda_f, double mu, double s) {
  const double shifted = s + mu + lambda_f;
  const double root = std::sqrt(std::max(0.0, shifted * shifted - 4.0 * mu * lambda_f));
  return 2.0 * mu / (root + shifted);
}

}  // namespace

double SurvivalLaw::mgf(double s) const {
  if (k_ != 1) {
    throw std::invalid_argument("mgf is the single-species transform; use mgf_k for k > 1");
  }
  if (!(s >= 0.0)) throw std::invalid_argument("mgf needs s >= 0");
  return single_transform(lambda_f_, mu_, s);
}

double SurvivalLaw::mgf_k(double s) const {
  if (!(s >= 0.0)) throw std::invalid_argument("mgf needs s >= 0");
  return std::pow(single_transform(lambda_f_, mu_, s), k_);
}

double SurvivalLaw::mgf_derivative(double s) const {
  if (!(s >= 0.0)) throw std::invalid_argument("mgf needs s >= 0");
  const double shifted = s + c();
  const double root_sq = shifted * shifted - 4.0 * mu_ * lambda_f_;
  double root = std::sqrt(std::max(0.0, root_sq));
  if (s == 0.0 && regime_ != Regime::kCritical) root = std::abs(mu_ - lambda_f_);
  if (root == 0.0) return -kInf;
  const double denom = root + shifted;
  return -2.0 * mu_ * (1.0 + shifted / root) / (denom * denom);
}

std::optional<double> SurvivalLaw::mean_survival() const {
  if (regime_ != Regime::kSubcritical) return std::nullopt;
  return -k_ * mgf_derivative(0.0);
}

double SurvivalLaw::quoted_mean_claim() const {
  if (!(lambda_f_ < mu_)) return kInf;
  return k_ * 2.0 * mu_ / (mu_ - lambda_f_);
}

}  // namespace extinction_lab
