#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "extinction_lab/fitness_model.hpp"
#include "extinction_lab/statistics.hpp"

namespace extinction_lab {

/// Invalid experiment configuration (CLI exit code 3).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { kSurvivalCurve, kValidate, kPhaseSweep, kPopulationLln, kAsymptotics };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

inline constexpr int kExitOk = 0;
inline constexpr int kExitGateFailed = 2;
inline constexpr int kExitConfigError = 3;

struct ExperimentConfig {
  Command command = Command::kSurvivalCurve;
  double lambda = 2.0;
  double mu = 1.0;
  std::string dist_spec = "uniform:0,1";
  double fitness = 0.25;
  int k = 1;
  std::size_t samples = 10'000;
  std::optional<double> horizon;              // derived from the law when unset
  std::optional<std::vector<double>> t_grid;  // derived when unset
  std::optional<std::vector<double>> f_grid;  // phase-sweep only
  Interval window{0.6, 0.8};                  // population-lln only
  std::size_t runs = 20;                      // population-lln only
  std::uint64_t seed = 42;
  double alpha = 0.01;
  std::filesystem::path out_dir = "out";
  unsigned threads = 0;  // 0: EXTINCTION_LAB_THREADS or hardware concurrency
};

/// Parses `auto` (nullopt) or a comma-separated list of reals.
std::optional<std::vector<double>> parse_real_list(std::string_view text);

struct GateResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct TailRow {
  double t = 0.0;
  double analytic_tail = 0.0;
  std::optional<double> asymptotic_tail;
  std::optional<ProportionEstimate> empirical;
};

/// Monte Carlo mean against the two closed forms in circulation.
struct MeanDiscrepancy {
  double transform_mean = 0.0;   // -k M'(0) = k / (mu - lambda_f)
  double quoted_mean = 0.0;      // k 2 mu / (mu - lambda_f)
  MeanEstimate monte_carlo;
  bool transform_consistent = false;  // within 3 standard errors
  bool quoted_consistent = false;
  std::string verdict;
};

struct RunReport {
  ExperimentConfig config;
  std::string regime;
  double lambda_f = 0.0;
  std::optional<double> critical_fitness;
  double horizon = 0.0;
  double defect = 0.0;
  std::vector<TailRow> curve;
  std::optional<double> ks_statistic;
  std::optional<double> ks_critical;
  std::size_t finite_samples = 0;
  std::optional<ProportionEstimate> censored;
  std::optional<double> analytic_censored;  // P(tau > horizon)
  std::optional<MeanDiscrepancy> mean;
  std::vector<GateResult> gates;
  double elapsed_seconds = 0.0;
  unsigned workers = 1;
  std::vector<std::filesystem::path> files;
  std::string details_json;  // command-specific block, serialized JSON

  bool gates_passed() const;
  int exit_code() const { return gates_passed() ? kExitOk : kExitGateFailed; }
};

/// Executes the configured experiment deterministically from the seed,
/// writing `<command>.csv` (plus any auxiliary CSV) and `<command>.json`
/// into the output directory. Throws ConfigError for invalid settings and
/// std::runtime_error for I/O failures.
RunReport run_experiment(const ExperimentConfig& config);

/// Mean-discrepancy block from finite survival times.
MeanDiscrepancy compare_mean(double transform_mean, double quoted_mean,
                             std::span<const double> times);

}  // namespace extinction_lab
