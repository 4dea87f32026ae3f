#include "extinction_lab/simulator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "extinction_lab/parallel.hpp"

namespace extinction_lab {
namespace {

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive and finite");
  }
}

FitnessKey populate(ProcessState& state, const ModelParams& params,
                    std::span<const double> others) {
  if (others.size() != static_cast<std::size_t>(params.k - 1)) {
    throw std::invalid_argument(fmt::format("expected {} non-tagged initial fitnesses, got {}",
                                            params.k - 1, others.size()));
  }
  for (const double x : others) {
    if (!(x <= params.f)) {
      throw std::invalid_argument("non-tagged initial fitnesses must not exceed f");
    }
    state.living.insert(x);
  }
  // Inserted last so it orders above any non-tagged species with equal
  // fitness.
  return state.living.insert(params.f);
}

std::vector<double> draw_others(const ModelParams& params, RandomStream& rng) {
  std::vector<double> others;
  others.reserve(params.k - 1);
  const double level = params.dist.cdf(params.f);
  for (int i = 1; i < params.k; ++i) {
    others.push_back(params.dist.quantile(rng.uniform_open() * level));
  }
  return others;
}

}  // namespace

MarkStream::MarkStream(std::uint64_t seed, std::uint64_t index, double width)
    : rng_(seed, index), width_(width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("mark strip width must be positive and finite");
  }
}

Mark MarkStream::next() {
  const double dt = rng_.exponential(width_);
  return {dt, rng_.uniform() * width_};
}

Mark ScriptedMarks::next() {
  if (position_ >= marks_.size()) throw std::out_of_range("scripted marks exhausted");
  return marks_[position_++];
}

Mark RecordingMarks::next() {
  recorded_.push_back(inner_.next());
  return recorded_.back();
}

StepOutcome apply_mark(ProcessState& state, const Mark& mark, double lambda,
                       const FitnessDistribution& dist) {
  state.time += mark.dt;
  if (mark.level < lambda) {
    return {EventKind::kBirth, state.living.insert(dist.quantile(mark.level / lambda))};
  }
  if (state.living.empty()) return {EventKind::kIdleDeath, {}};
  return {EventKind::kDeath, state.living.pop_min()};
}

StepOutcome step(ProcessState& state, MarkSource& marks, double lambda,
                 const FitnessDistribution& dist) {
  return apply_mark(state, marks.next(), lambda, dist);
}

SurvivalSample simulate_survival_time(const ModelParams& params, double horizon,
                                      MarkSource& marks,
                                      std::span<const double> other_fitnesses,
                                      PopulationMode mode) {
  check_horizon(horizon);
  ProcessState state;
  const FitnessKey tagged = populate(state, params, other_fitnesses);
  std::uint64_t events = 0;
  for (;;) {
    const Mark mark = marks.next();
    const double t = state.time + mark.dt;
    if (t > horizon) return SurvivalSample::censored_at(horizon, events);
    state.time = t;
    ++events;
    if (mark.level < params.lambda) {
      const double fitness = params.dist.quantile(mark.level / params.lambda);
      // A newcomer with fitness >= f orders above the tagged species.
      if (mode == PopulationMode::kAtOrBelowTagged && fitness >= params.f) continue;
      state.living.insert(fitness);
    } else if (state.living.pop_min() == tagged) {
      return SurvivalSample::finite_at(t, events);
    }
  }
}

SurvivalSample simulate_survival_time(const ModelParams& params, double horizon,
                                      MarkStream& stream, PopulationMode mode) {
  const auto others = draw_others(params, stream.rng());
  return simulate_survival_time(params, horizon, stream, others, mode);
}

SurvivalSample first_passage(int k, double horizon, MarkSource& marks, WalkRule rule) {
  check_horizon(horizon);
  if (k < 1) throw std::invalid_argument("walk must start at k >= 1");
  long position = k;
  double t = 0.0;
  std::uint64_t events = 0;
  for (;;) {
    const Mark mark = marks.next();
    t += mark.dt;
    if (t > horizon) return SurvivalSample::censored_at(horizon, events);
    ++events;
    if (mark.level < rule.up_below) {
      ++position;
    } else if (mark.level >= rule.hold_below && --position == 0) {
      return SurvivalSample::finite_at(t, events);
    }
  }
}

SurvivalSample simulate_walk_hitting(double lambda_f, double mu, int k, double horizon,
                                     MarkSource& marks) {
  if (!(lambda_f > 0.0 && mu > 0.0)) {
    throw std::invalid_argument("walk rates must be positive");
  }
  return first_passage(k, horizon, marks, WalkRule{lambda_f, lambda_f});
}

SurvivalSample simulate_walk_hitting(double lambda_f, double mu, int k, double horizon,
                                     std::uint64_t seed, std::uint64_t index) {
  MarkStream stream(seed, index, lambda_f + mu);
  return simulate_walk_hitting(lambda_f, mu, k, horizon, stream);
}

CouplingReport run_coupled(const ModelParams& params, double horizon,
                           std::uint64_t max_events, MarkSource& marks,
                           std::span<const double> other_fitnesses) {
  check_horizon(horizon);
  CouplingReport report;
  ProcessState state;
  const FitnessKey tagged = populate(state, params, other_fitnesses);
  const double lambda_f = params.lambda_f();
  RecordingMarks recorder(marks);

  auto fail = [&](std::string what) {
    if (report.holds) {
      report.holds = false;
      report.mismatch = fmt::format("event {} at t = {}: {}", report.events_checked,
                                    state.time, what);
    }
  };

  long walk = params.k;
  double stop_horizon = horizon;
  bool resolved = false;
  while (report.events_checked < max_events) {
    const Mark mark = recorder.next();
    if (state.time + mark.dt > horizon) {
      report.species = SurvivalSample::censored_at(horizon, report.events_checked);
      resolved = true;
      break;
    }
    const StepOutcome outcome = apply_mark(state, mark, params.lambda, params.dist);
    ++report.events_checked;
    if (walk > 0) {
      if (mark.level < lambda_f) {
        ++walk;
      } else if (mark.level >= params.lambda) {
        --walk;
      }
    }
    const bool tagged_died = outcome.kind == EventKind::kDeath && outcome.species == tagged;
    if (tagged_died) {
      if (walk != 0) fail(fmt::format("tagged species died but walk is at {}", walk));
      report.species = SurvivalSample::finite_at(state.time, report.events_checked);
      resolved = true;
      break;
    }
    const std::size_t below = state.living.count_not_after(tagged);
    if (walk <= 0) fail("walk reached 0 while the tagged species lives");
    if (static_cast<std::size_t>(walk) != below) {
      fail(fmt::format("walk at {} but {} species at or below the tagged one", walk, below));
    }
  }
  if (!resolved) {
    // Budget exhausted: both are censored at the current time.
    stop_horizon = state.time;
    report.species = SurvivalSample::censored_at(state.time, report.events_checked);
  }

  std::vector<Mark> replay = recorder.recorded();
  replay.push_back({std::numeric_limits<double>::infinity(), 0.0});
  ScriptedMarks scripted(std::move(replay));
  if (stop_horizon > 0.0) {
    report.walk = first_passage(params.k, stop_horizon, scripted,
                                WalkRule{lambda_f, params.lambda});
  } else {
    report.walk = SurvivalSample::censored_at(0.0, 0);
  }
  if (report.walk != report.species) {
    fail(fmt::format("walk passage ({}, {}) differs from tagged survival ({}, {})",
                     report.walk.finite() ? "finite" : "censored", report.walk.time,
                     report.species.finite() ? "finite" : "censored",
                     report.species.time));
  }
  return report;
}

CouplingReport run_coupled(const ModelParams& params, double horizon,
                           std::uint64_t max_events, MarkStream& stream) {
  const auto others = draw_others(params, stream.rng());
  return run_coupled(params, horizon, max_events, stream, others);
}

bool coupled_equality_check(const ModelParams& params, double horizon,
                            MarkStream& stream, std::uint64_t max_events) {
  return run_coupled(params, horizon, max_events, stream).holds;
}

PopulationObservation observe_population(double lambda, double mu,
                                         const FitnessDistribution& dist, double t_end,
                                         Interval window, MarkSource& marks,
                                         std::size_t trace_points) {
  const auto critical = critical_fitness(lambda, mu, dist);
  if (!critical) {
    throw std::invalid_argument("population observation needs lambda > mu");
  }
  if (!(window.lo > *critical && window.hi > window.lo)) {
    throw std::invalid_argument(fmt::format(
        "window ({}, {}) must satisfy f_c = {} < a < b", window.lo, window.hi, *critical));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("t_end must be finite and non-negative");
  }

  PopulationObservation obs;
  obs.t_end = t_end;
  obs.critical_fitness = *critical;
  ProcessState state;
  std::size_t low = 0;
  std::size_t next_sample = 0;
  auto sample_time = [&](std::size_t g) {
    return t_end * static_cast<double>(g) / static_cast<double>(trace_points);
  };
  auto emit_samples_before = [&](double t) {
    while (trace_points > 0 && next_sample <= trace_points && sample_time(next_sample) < t) {
      obs.low_trace.emplace_back(sample_time(next_sample), low);
      ++next_sample;
    }
  };

  for (;;) {
    const Mark mark = marks.next();
    const double t = state.time + mark.dt;
    emit_samples_before(std::min(t, std::nextafter(t_end, std::numeric_limits<double>::infinity())));
    if (t > t_end) break;
    const StepOutcome outcome = apply_mark(state, mark, lambda, dist);
    ++obs.events;
    if (outcome.kind == EventKind::kBirth && outcome.species.fitness < *critical) {
      ++low;
    } else if (outcome.kind == EventKind::kDeath && outcome.species.fitness < *critical) {
      if (--low == 0) ++obs.empty_low_episodes;
    }
  }
  obs.final_size = state.living.size();
  obs.window_count = state.living.count_in(window.lo, window.hi);
  return obs;
}

std::vector<SurvivalSample> sample_survival_times(const ModelParams& params,
                                                  double horizon, std::size_t n,
                                                  std::uint64_t seed, PopulationMode mode,
                                                  unsigned workers) {
  check_horizon(horizon);
  std::vector<SurvivalSample> out(n);
  const double width = params.lambda + params.mu;
  parallel_for(n, workers, [&](std::size_t i) {
    MarkStream stream(seed, i, width);
    out[i] = simulate_survival_time(params, horizon, stream, mode);
  });
  return out;
}

std::vector<SurvivalSample> sample_walk_hitting_times(double lambda_f, double mu, int k,
                                                      double horizon, std::size_t n,
                                                      std::uint64_t seed,
                                                      unsigned workers) {
  check_horizon(horizon);
  std::vector<SurvivalSample> out(n);
  parallel_for(n, workers, [&](std::size_t i) {
    out[i] = simulate_walk_hitting(lambda_f, mu, k, horizon, seed, i);
  });
  return out;
}

}  // namespace extinction_lab
