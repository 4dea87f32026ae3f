#include "extinction_lab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>

#include <fmt/format.h>

#include "extinction_lab/parallel.hpp"
#include "extinction_lab/reporting.hpp"
#include "extinction_lab/simulator.hpp"
#include "extinction_lab/survival_law.hpp"
#include "json.hpp"

namespace extinction_lab {
namespace {

using json = nlohmann::json;

constexpr double kHorizonTailTarget = 1e-4;
constexpr double kCurveTailTarget = 1e-3;
constexpr double kMaxAutoHorizon = 1e4;
constexpr std::size_t kCurvePoints = 41;
constexpr double kSigmaGate = 3.0;

FitnessDistribution build_dist(const std::string& spec) {
  try {
    return FitnessDistribution::parse(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ModelParams build_params(const ExperimentConfig& c, const FitnessDistribution& dist,
                         double f) {
  try {
    return ModelParams::create(c.lambda, c.mu, dist, c.k, f);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void check_grid(const std::vector<double>& grid, std::string_view name) {
  require(!grid.empty(), fmt::format("{} must not be empty", name));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(std::isfinite(grid[i]), fmt::format("{} contains a non-finite value", name));
    if (i > 0) {
      require(grid[i] > grid[i - 1], fmt::format("{} must be strictly increasing", name));
    }
  }
}

// Smallest t (up to bisection precision) with decreasing(t) <= target, where
// decreasing is eventually monotone.
template <class F>
double solve_decreasing(F&& decreasing, double start, double target) {
  double hi = start;
  while (decreasing(hi) > target && hi < 1e12) hi *= 2.0;
  double lo = hi / 2.0;
  for (int i = 0; i < 80 && hi - lo > 1e-9 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (decreasing(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

double time_for_excess(const SurvivalLaw& law, double target) {
  if (law.regime() == Regime::kCritical) {
    return law.k() * law.k() / (std::numbers::pi * law.mu() * target * target);
  }
  return solve_decreasing([&](double t) { return law.asymptotic_excess(t); },
                          1.0 / law.c(), target);
}

double auto_horizon(const SurvivalLaw& law) {
  return std::min(kMaxAutoHorizon, time_for_excess(law, kHorizonTailTarget));
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

std::vector<double> curve_grid(const ExperimentConfig& c, const SurvivalLaw& law,
                               double horizon) {
  if (c.t_grid) {
    check_grid(*c.t_grid, "t-grid");
    require(c.t_grid->front() >= 0.0, "t-grid values must be non-negative");
    require(c.t_grid->back() <= horizon,
            fmt::format("t-grid extends past the horizon {}", horizon));
    return *c.t_grid;
  }
  const double t_hi = std::min(horizon, time_for_excess(law, kCurveTailTarget));
  return linspace(0.0, t_hi, kCurvePoints);
}

std::vector<TailRow> build_curve(const SurvivalLaw& law, const std::vector<double>& grid,
                                 std::span<const SurvivalSample> samples) {
  std::vector<TailRow> rows;
  rows.reserve(grid.size());
  for (const double t : grid) {
    TailRow row;
    row.t = t;
    row.analytic_tail = law.survival_tail(t);
    if (t > 0.0) row.asymptotic_tail = law.tail_asymptotic(t);
    if (!samples.empty()) row.empirical = empirical_tail(samples, t);
    rows.push_back(row);
  }
  return rows;
}

void write_curve_csv(const std::filesystem::path& path, const std::vector<TailRow>& rows) {
  CsvWriter csv(path, {"t", "analytic_tail", "asymptotic_tail", "empirical_tail", "ci_lo",
                       "ci_hi"});
  for (const auto& row : rows) {
    std::optional<double> est, lo, hi;
    if (row.empirical) {
      est = row.empirical->estimate;
      lo = row.empirical->lo;
      hi = row.empirical->hi;
    }
    csv.row({format_real(row.t), format_real(row.analytic_tail),
             format_real(row.asymptotic_tail), format_real(est), format_real(lo),
             format_real(hi)});
  }
  csv.close();
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json proportion_json(const ProportionEstimate& p) {
  return {{"estimate", p.estimate}, {"ci_lo", p.lo}, {"ci_hi", p.hi},
          {"successes", p.successes}, {"trials", p.trials}};
}

json config_json(const ExperimentConfig& c) {
  json j = {{"command", std::string(to_string(c.command))},
            {"lambda", c.lambda},
            {"mu", c.mu},
            {"dist", c.dist_spec},
            {"fitness", c.fitness},
            {"k", c.k},
            {"samples", c.samples},
            {"seed", c.seed},
            {"alpha", c.alpha},
            {"out", c.out_dir.string()}};
  j["horizon"] = optional_json(c.horizon);
  j["t_grid"] = c.t_grid ? json(*c.t_grid) : json("auto");
  if (c.command == Command::kPhaseSweep) {
    j["f_grid"] = c.f_grid ? json(*c.f_grid) : json("auto");
  }
  if (c.command == Command::kPopulationLln) {
    j["window"] = {c.window.lo, c.window.hi};
    j["runs"] = c.runs;
  }
  return j;
}

json report_json(const RunReport& r) {
  json j;
  j["config"] = config_json(r.config);
  j["regime"] = r.regime;
  j["lambda_f"] = r.lambda_f;
  j["critical_fitness"] = optional_json(r.critical_fitness);
  j["horizon"] = r.horizon;
  j["defect"] = r.defect;
  if (r.ks_statistic) {
    j["ks"] = {{"statistic", *r.ks_statistic},
               {"critical_value", optional_json(r.ks_critical)},
               {"alpha", r.config.alpha},
               {"finite_samples", r.finite_samples}};
  }
  if (r.censored) {
    j["censoring"] = proportion_json(*r.censored);
    j["censoring"]["analytic"] = optional_json(r.analytic_censored);
  }
  if (!r.curve.empty()) {
    json rows = json::array();
    for (const auto& row : r.curve) {
      json jr = {{"t", row.t}, {"analytic_tail", row.analytic_tail},
                 {"asymptotic_tail", optional_json(row.asymptotic_tail)}};
      if (row.empirical) jr["empirical"] = proportion_json(*row.empirical);
      rows.push_back(jr);
    }
    j["curve"] = rows;
  }
  if (r.mean) {
    j["mean_survival"] = {
        {"transform_mean", r.mean->transform_mean},
        {"quoted_mean", r.mean->quoted_mean},
        {"monte_carlo_mean", r.mean->monte_carlo.mean},
        {"monte_carlo_std_error", r.mean->monte_carlo.std_error},
        {"monte_carlo_n", r.mean->monte_carlo.n},
        {"ci_lo", r.mean->monte_carlo.mean - kSigmaGate * r.mean->monte_carlo.std_error},
        {"ci_hi", r.mean->monte_carlo.mean + kSigmaGate * r.mean->monte_carlo.std_error},
        {"transform_consistent", r.mean->transform_consistent},
        {"quoted_consistent", r.mean->quoted_consistent},
        {"verdict", r.mean->verdict}};
  }
  json gates = json::array();
  for (const auto& g : r.gates) {
    gates.push_back({{"name", g.name},
                     {"passed", g.passed},
                     {"statistic", g.statistic},
                     {"threshold", g.threshold},
                     {"detail", g.detail}});
  }
  j["gates"] = gates;
  j["gates_passed"] = r.gates_passed();
  if (!r.details_json.empty()) j["details"] = json::parse(r.details_json);
  json files = json::array();
  for (const auto& f : r.files) files.push_back(f.string());
  j["files"] = files;
  j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}, {"workers", r.workers}};
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

GateResult ks_gate(const SurvivalLaw& law, std::span<const SurvivalSample> samples,
                   double horizon, double alpha, RunReport& report) {
  GateResult gate{"ks", false, 0.0, 0.0, {}};
  auto times = finite_times(samples);
  report.finite_samples = times.size();
  if (times.size() < 100) {
    gate.detail = fmt::format("only {} finite samples; KS needs at least 100", times.size());
    return gate;
  }
  // Finite samples are exactly those with tau <= horizon.
  const double reach = 1.0 - law.survival_tail(horizon);
  const double d = ks_distance(std::move(times), [&](std::span<const double> sorted) {
    auto cdf = law.cdf_at_sorted(sorted);
    for (auto& v : cdf) v = std::min(1.0, v / reach);
    return cdf;
  });
  gate.statistic = d;
  gate.threshold = ks_critical_value(report.finite_samples, alpha);
  gate.passed = d <= gate.threshold;
  gate.detail = fmt::format("D = {:.6g} vs critical {:.6g} at alpha = {} (n = {})", d,
                            gate.threshold, alpha, report.finite_samples);
  report.ks_statistic = d;
  report.ks_critical = gate.threshold;
  return gate;
}

GateResult censoring_gate(std::span<const SurvivalSample> samples, double analytic) {
  GateResult gate{"censoring", false, 0.0, 0.0, {}};
  const auto censored = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.finite(); }));
  const double n = static_cast<double>(samples.size());
  const double observed = static_cast<double>(censored) / n;
  const double sigma = std::sqrt(analytic * (1.0 - analytic) / n);
  gate.statistic = std::abs(observed - analytic);
  gate.threshold = kSigmaGate * sigma;
  gate.passed = gate.statistic <= gate.threshold;
  gate.detail = fmt::format("censored {} of {} ({:.6g}) vs defect + residual {:.6g}, 3 sigma = {:.3g}",
                            censored, samples.size(), observed, analytic, gate.threshold);
  return gate;
}

void prepare_output(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError(fmt::format("cannot create output directory '{}'", dir.string()));
  }
}

struct LawContext {
  FitnessDistribution dist;
  ModelParams params;
  SurvivalLaw law;
  double horizon;
};

LawContext law_context(const ExperimentConfig& c, RunReport& report) {
  auto dist = build_dist(c.dist_spec);
  auto params = build_params(c, dist, c.fitness);
  SurvivalLaw law = SurvivalLaw::from_params(params);
  if (c.horizon) require(*c.horizon > 0.0 && std::isfinite(*c.horizon), "horizon must be positive");
  const double horizon = c.horizon.value_or(auto_horizon(law));
  report.regime = std::string(to_string(law.regime()));
  report.lambda_f = law.lambda_f();
  report.critical_fitness = critical_fitness(c.lambda, c.mu, dist);
  report.horizon = horizon;
  report.defect = law.defect();
  return {std::move(dist), std::move(params), law, horizon};
}

void run_survival_curve(const ExperimentConfig& c, RunReport& report) {
  auto ctx = law_context(c, report);
  const auto grid = curve_grid(c, ctx.law, ctx.horizon);
  std::vector<SurvivalSample> samples;
  if (c.samples > 0) {
    samples = sample_survival_times(ctx.params, ctx.horizon, c.samples, c.seed,
                                    PopulationMode::kAtOrBelowTagged, report.workers);
  }
  report.curve = build_curve(ctx.law, grid, samples);
  const auto csv = c.out_dir / "survival-curve.csv";
  write_curve_csv(csv, report.curve);
  report.files.push_back(csv);
}

void run_validate(const ExperimentConfig& c, RunReport& report) {
  require(c.samples >= 1, "validate needs samples >= 1");
  auto ctx = law_context(c, report);
  const auto grid = curve_grid(c, ctx.law, ctx.horizon);
  const auto samples = sample_survival_times(ctx.params, ctx.horizon, c.samples, c.seed,
                                             PopulationMode::kAtOrBelowTagged,
                                             report.workers);
  report.curve = build_curve(ctx.law, grid, samples);

  report.gates.push_back(ks_gate(ctx.law, samples, ctx.horizon, c.alpha, report));
  const double analytic = ctx.law.survival_tail(ctx.horizon);
  report.analytic_censored = analytic;
  const auto censored = static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](const auto& s) { return !s.finite(); }));
  report.censored = wilson_interval(censored, samples.size());
  report.gates.push_back(censoring_gate(samples, analytic));

  if (ctx.law.regime() == Regime::kSubcritical) {
    const auto times = finite_times(samples);
    report.mean = compare_mean(*ctx.law.mean_survival(), ctx.law.quoted_mean_claim(), times);
  }

  const auto csv = c.out_dir / "validate.csv";
  write_curve_csv(csv, report.curve);
  report.files.push_back(csv);
}

void run_phase_sweep(const ExperimentConfig& c, RunReport& report) {
  auto dist = build_dist(c.dist_spec);
  require(c.samples >= 1, "phase-sweep needs samples >= 1");
  const auto fc = critical_fitness(c.lambda, c.mu, dist);
  report.critical_fitness = fc;
  report.regime = fc ? "supercritical below f_c" : "no critical fitness (lambda <= mu)";
  const double horizon = c.horizon.value_or(1e3);
  require(horizon > 0.0 && std::isfinite(horizon), "horizon must be positive");
  report.horizon = horizon;

  std::vector<double> grid;
  if (c.f_grid) {
    check_grid(*c.f_grid, "f-grid");
    grid = *c.f_grid;
  } else {
    for (int i = 1; i <= 19; ++i) grid.push_back(dist.quantile(0.05 * i));
  }

  const auto csv_path = c.out_dir / "phase-sweep.csv";
  CsvWriter csv(csv_path, {"f", "F_f", "lambda_f", "regime", "defect", "analytic_censored",
                           "censored_fraction", "ci_lo", "ci_hi"});
  json rows = json::array();
  for (const double f : grid) {
    const auto params = build_params(c, dist, f);
    const SurvivalLaw law = SurvivalLaw::from_params(params);
    // Every f reuses stream indices 0..n-1, so censoring is monotone in f
    // path by path.
    const auto samples = sample_survival_times(params, horizon, c.samples, c.seed,
                                               PopulationMode::kAtOrBelowTagged,
                                               report.workers);
    const auto censored = static_cast<std::size_t>(std::count_if(
        samples.begin(), samples.end(), [](const auto& s) { return !s.finite(); }));
    const auto est = wilson_interval(censored, samples.size());
    const double analytic = law.survival_tail(horizon);
    csv.row({format_real(f), format_real(dist.cdf(f)), format_real(law.lambda_f()),
             std::string(to_string(law.regime())), format_real(law.defect()),
             format_real(analytic), format_real(est.estimate), format_real(est.lo),
             format_real(est.hi)});
    rows.push_back({{"f", f}, {"regime", std::string(to_string(law.regime()))},
                    {"defect", law.defect()}, {"analytic_censored", analytic},
                    {"censored", proportion_json(est)}});
  }
  csv.close();
  report.files.push_back(csv_path);
  report.details_json = json{{"rows", rows}}.dump();
}

void run_population(const ExperimentConfig& c, RunReport& report) {
  auto dist = build_dist(c.dist_spec);
  require(c.runs >= 1, "population-lln needs runs >= 1");
  const auto fc = critical_fitness(c.lambda, c.mu, dist);
  require(fc.has_value(), "population-lln needs lambda > mu");
  require(c.window.lo > *fc && c.window.hi > c.window.lo,
          fmt::format("window ({}, {}) must satisfy f_c = {} < a < b", c.window.lo,
                      c.window.hi, *fc));
  const double t_end = c.horizon.value_or(1e4);
  require(t_end >= 0.0 && std::isfinite(t_end), "horizon (t_end) must be finite and >= 0");
  report.critical_fitness = fc;
  report.regime = "supercritical";
  report.horizon = t_end;

  std::vector<PopulationObservation> obs(c.runs);
  parallel_for(c.runs, report.workers, [&](std::size_t i) {
    MarkStream stream(c.seed, i, c.lambda + c.mu);
    obs[i] = observe_population(c.lambda, c.mu, dist, t_end, c.window, stream);
  });

  const double window_mass = dist.cdf(c.window.hi) - dist.cdf(c.window.lo);
  const double per_event = c.lambda * window_mass / (c.lambda + c.mu);
  const double per_time = c.lambda * window_mass;

  const auto csv_path = c.out_dir / "population-lln.csv";
  CsvWriter csv(csv_path, {"run", "t_end", "events", "window_count", "rate_per_time",
                           "rate_per_event", "empty_low_episodes", "final_size"});
  double sum_time = 0.0, sum_event = 0.0;
  std::uint64_t min_episodes = obs.front().empty_low_episodes;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const auto& o = obs[i];
    const double rate_time = t_end > 0.0 ? o.window_count / t_end : 0.0;
    const double rate_event =
        o.events > 0 ? static_cast<double>(o.window_count) / static_cast<double>(o.events) : 0.0;
    sum_time += rate_time;
    sum_event += rate_event;
    min_episodes = std::min(min_episodes, o.empty_low_episodes);
    csv.row({std::to_string(i), format_real(t_end), std::to_string(o.events),
             std::to_string(o.window_count), format_real(rate_time), format_real(rate_event),
             std::to_string(o.empty_low_episodes), std::to_string(o.final_size)});
  }
  csv.close();
  report.files.push_back(csv_path);

  const auto trace_path = c.out_dir / "population-trace.csv";
  CsvWriter trace(trace_path, {"t", "low_count"});
  for (const auto& [t, n] : obs.front().low_trace) {
    trace.row({format_real(t), std::to_string(n)});
  }
  trace.close();
  report.files.push_back(trace_path);

  const double runs = static_cast<double>(obs.size());
  report.details_json =
      json{{"window", {c.window.lo, c.window.hi}},
           {"window_mass", window_mass},
           {"predicted_rate_per_event", per_event},
           {"birth_rate_into_window", per_time},
           {"mean_rate_per_time", sum_time / runs},
           {"mean_rate_per_event", sum_event / runs},
           {"min_empty_low_episodes", min_episodes}}
          .dump();
}

void run_asymptotics(const ExperimentConfig& c, RunReport& report) {
  auto ctx = law_context(c, report);
  std::vector<double> grid;
  if (c.t_grid) {
    check_grid(*c.t_grid, "t-grid");
    require(c.t_grid->front() > 0.0, "asymptotics t-grid must be positive");
    grid = *c.t_grid;
  } else if (ctx.law.regime() == Regime::kCritical) {
    for (const double t : {10.0, 30.0, 100.0, 300.0, 1e3, 3e3, 1e4}) grid.push_back(t / c.mu);
  } else {
    for (const double gt : {5.0, 10.0, 20.0, 40.0, 60.0, 80.0, 100.0, 150.0, 200.0}) {
      grid.push_back(gt / ctx.law.gamma());
    }
  }

  const auto csv_path = c.out_dir / "asymptotics.csv";
  CsvWriter csv(csv_path, {"t", "gamma_t", "exact_tail", "exact_excess", "asymptotic_tail",
                           "ratio_exact_over_asymptotic"});
  const bool critical = ctx.law.regime() == Regime::kCritical;
  std::vector<double> ratios;
  for (const double t : grid) {
    const double exact_tail = ctx.law.survival_tail(t);
    // The finite part, integrated directly to avoid subtracting the defect.
    const double excess = ctx.law.upper_tail_mass(t);
    const double asymptotic = ctx.law.tail_asymptotic(t);
    const double ratio = critical ? exact_tail / asymptotic : excess / ctx.law.asymptotic_excess(t);
    ratios.push_back(ratio);
    csv.row({format_real(t), format_real(ctx.law.gamma() * t), format_real(exact_tail),
             format_real(excess), format_real(asymptotic), format_real(ratio)});
  }
  csv.close();
  report.files.push_back(csv_path);

  bool monotone = true;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (std::abs(ratios[i] - 1.0) > std::abs(ratios[i - 1] - 1.0)) monotone = false;
  }
  const double last = ratios.back();
  report.details_json = json{{"ratios", ratios},
                             {"monotone_towards_one", monotone},
                             {"final_ratio", last},
                             {"final_within_5_percent", std::abs(last - 1.0) <= 0.05}}
                            .dump();
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::kSurvivalCurve:
      return "survival-curve";
    case Command::kValidate:
      return "validate";
    case Command::kPhaseSweep:
      return "phase-sweep";
    case Command::kPopulationLln:
      return "population-lln";
    case Command::kAsymptotics:
      return "asymptotics";
  }
  return "unknown";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto c : {Command::kSurvivalCurve, Command::kValidate, Command::kPhaseSweep,
                       Command::kPopulationLln, Command::kAsymptotics}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<std::vector<double>> parse_real_list(std::string_view text) {
  if (text == "auto") return std::nullopt;
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ConfigError(fmt::format("cannot parse '{}' as a real number", item));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

bool RunReport::gates_passed() const {
  return std::all_of(gates.begin(), gates.end(), [](const auto& g) { return g.passed; });
}

MeanDiscrepancy compare_mean(double transform_mean, double quoted_mean,
                             std::span<const double> times) {
  MeanDiscrepancy out;
  out.transform_mean = transform_mean;
  out.quoted_mean = quoted_mean;
  out.monte_carlo = sample_mean(times);
  const double band = kSigmaGate * out.monte_carlo.std_error;
  out.transform_consistent = std::abs(out.monte_carlo.mean - transform_mean) <= band;
  out.quoted_consistent = std::abs(out.monte_carlo.mean - quoted_mean) <= band;
  if (out.transform_consistent && !out.quoted_consistent) {
    out.verdict = fmt::format("simulation supports k/(mu - lambda_f) = {:.6g}", transform_mean);
  } else if (out.quoted_consistent && !out.transform_consistent) {
    out.verdict = fmt::format("simulation supports 2k mu/(mu - lambda_f) = {:.6g}", quoted_mean);
  } else if (out.transform_consistent) {
    out.verdict = "simulation cannot separate the two closed forms";
  } else {
    out.verdict = "simulation matches neither closed form";
  }
  return out;
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  require(config.alpha > 0.0 && config.alpha < 1.0, "alpha must lie in (0, 1)");
  RunReport report;
  report.config = config;
  report.workers = resolve_workers(config.threads);
  prepare_output(config.out_dir);

  switch (config.command) {
    case Command::kSurvivalCurve:
      run_survival_curve(config, report);
      break;
    case Command::kValidate:
      run_validate(config, report);
      break;
    case Command::kPhaseSweep:
      run_phase_sweep(config, report);
      break;
    case Command::kPopulationLln:
      run_population(config, report);
      break;
    case Command::kAsymptotics:
      run_asymptotics(config, report);
      break;
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto json_path = config.out_dir / (std::string(to_string(config.command)) + ".json");
  report.files.push_back(json_path);
  write_json(json_path, report_json(report));
  return report;
}

}  // namespace extinction_lab
