#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "extinction_lab/random.hpp"

namespace extinction_lab {

struct Interval {
  double lo;
  double hi;
};

/// Absolutely continuous fitness law F with a strictly increasing CDF on an
/// interval support. Immutable; safe to share between threads.
class FitnessDistribution {
 public:
  /// Uniform on (lo, hi).
  static FitnessDistribution uniform(double lo, double hi);
  /// Exponential with the given rate, support (0, inf).
  static FitnessDistribution exponential(double rate);
  /// Piecewise-linear CDF through the points (x[i], cdf[i]). Both columns
  /// must be strictly increasing, cdf must start at 0 and end at 1.
  static FitnessDistribution table(std::vector<double> x, std::vector<double> cdf);
  /// Reads a two-column CSV (x, F(x)); a non-numeric first line is treated
  /// as a header.
  static FitnessDistribution table_from_csv(const std::filesystem::path& path);
  /// Parses `uniform:a,b`, `exp:rate` or `table:<path>`.
  static FitnessDistribution parse(std::string_view spec);

  double cdf(double x) const;
  /// Inverse CDF for p in [0, 1]; the endpoints map to the support bounds.
  double quantile(double p) const;
  /// Inverse-transform draw.
  double sample(RandomStream& rng) const { return quantile(rng.uniform_open()); }

  Interval support() const;
  /// Canonical distribution string, e.g. `uniform:0,1`.
  std::string describe() const;

 private:
  struct Uniform {
    double lo, hi;
  };
  struct Exponential {
    double rate;
  };
  struct Table {
    std::vector<double> x, cdf;
    std::string source;
  };

  explicit FitnessDistribution(std::variant<Uniform, Exponential, Table> law)
      : law_(std::move(law)) {}

  std::variant<Uniform, Exponential, Table> law_;
};

enum class Regime { kSubcritical, kCritical, kSupercritical };

std::string_view to_string(Regime regime);

/// Model parameters for the tagged-species survival problem. Construct
/// through `create`, which enforces lambda, mu > 0, 1 <= k and that the
/// tagged fitness lies strictly inside the support.
struct ModelParams {
  double lambda = 0.0;
  double mu = 0.0;
  FitnessDistribution dist = FitnessDistribution::uniform(0.0, 1.0);
  int k = 1;
  double f = 0.5;

  static ModelParams create(double lambda, double mu, FitnessDistribution dist,
                            int k, double f);

  double lambda_f() const;
};

/// lambda * F(f). Throws std::invalid_argument when F(f) is within 1e-12 of
/// 0 or 1, where the tagged species either never competes or never dies.
double effective_birth_rate(const ModelParams& params);

/// F^(-1)(mu / lambda) when lambda > mu, nullopt otherwise.
std::optional<double> critical_fitness(double lambda, double mu,
                                       const FitnessDistribution& dist);

/// Relative tolerance used to call lambda_f and mu equal.
inline constexpr double kCriticalTolerance = 1e-12;

Regime classify_regime(double lambda_f, double mu);
Regime classify_regime(const ModelParams& params);

}  // namespace extinction_lab
