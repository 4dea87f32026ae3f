#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extinction_lab/fitness_model.hpp"
#include "extinction_lab/ordered_multiset.hpp"
#include "extinction_lab/random.hpp"

namespace extinction_lab {

/// One point of the planar Poisson field projected onto the time axis: the
/// waiting time since the previous mark and the mark's height in the strip
/// [0, width).
struct Mark {
  double dt = 0.0;
  double level = 0.0;
};

/// Source of marks for the simulators.
class MarkSource {
 public:
  virtual ~MarkSource() = default;
  virtual Mark next() = 0;
};

/// Marks of a rate-1 planar Poisson process restricted to the strip
/// [0, width): exponential(width) gaps, uniform heights. Identical
/// (seed, index, width) reproduce identical marks. Auxiliary draws (initial
/// fitnesses) come from the same underlying stream through rng().
class MarkStream final : public MarkSource {
 public:
  MarkStream(std::uint64_t seed, std::uint64_t index, double width);

  Mark next() override;
  RandomStream& rng() { return rng_; }
  double width() const { return width_; }

 private:
  RandomStream rng_;
  double width_;
};

/// Replays a fixed list of marks; throws std::out_of_range when exhausted.
class ScriptedMarks final : public MarkSource {
 public:
  explicit ScriptedMarks(std::vector<Mark> marks) : marks_(std::move(marks)) {}
  Mark next() override;
  std::size_t consumed() const { return position_; }

 private:
  std::vector<Mark> marks_;
  std::size_t position_ = 0;
};

/// Decorator that records every mark it hands out.
class RecordingMarks final : public MarkSource {
 public:
  explicit RecordingMarks(MarkSource& inner) : inner_(inner) {}
  Mark next() override;
  const std::vector<Mark>& recorded() const { return recorded_; }

 private:
  MarkSource& inner_;
  std::vector<Mark> recorded_;
};

/// Current time and the living fitnesses.
struct ProcessState {
  double time = 0.0;
  OrderedMultiset living;

  std::size_t species_count() const { return living.size(); }
};

enum class EventKind { kBirth, kDeath, kIdleDeath };

struct StepOutcome {
  EventKind kind = EventKind::kBirth;
  FitnessKey species;  // inserted or removed; unset for kIdleDeath
};

/// Applies one mark to the process: a height below lambda is a birth with
/// fitness F^(-1)(level / lambda); anything else kills the smallest fitness,
/// or does nothing on an empty population.
StepOutcome apply_mark(ProcessState& state, const Mark& mark, double lambda,
                       const FitnessDistribution& dist);

/// Draws the next mark from `marks` and applies it.
StepOutcome step(ProcessState& state, MarkSource& marks, double lambda,
                 const FitnessDistribution& dist);

/// Survival time of the tagged species, or the horizon when it outlives it.
struct SurvivalSample {
  enum class Outcome { kFinite, kCensored };

  Outcome outcome = Outcome::kCensored;
  double time = 0.0;          // death time, or the horizon when censored
  std::uint64_t events = 0;   // marks applied before the outcome

  bool finite() const { return outcome == Outcome::kFinite; }
  static SurvivalSample finite_at(double t, std::uint64_t events) {
    return {Outcome::kFinite, t, events};
  }
  static SurvivalSample censored_at(double horizon, std::uint64_t events) {
    return {Outcome::kCensored, horizon, events};
  }
  friend bool operator==(const SurvivalSample&, const SurvivalSample&) = default;
};

/// kFull keeps every species; kAtOrBelowTagged drops births that order above
/// the tagged species, which never influence its fate.
enum class PopulationMode { kFull, kAtOrBelowTagged };

/// Tagged-species survival with explicit non-tagged initial fitnesses (each
/// must be <= f). `marks` must live on the strip [0, lambda + mu).
/// Throws std::invalid_argument for horizon <= 0 or misplaced fitnesses.
SurvivalSample simulate_survival_time(const ModelParams& params, double horizon,
                                      MarkSource& marks,
                                      std::span<const double> other_fitnesses,
                                      PopulationMode mode = PopulationMode::kFull);

/// Same, drawing the k - 1 other fitnesses as F^(-1)(U F(f)) from the
/// stream before the first mark.
SurvivalSample simulate_survival_time(const ModelParams& params, double horizon,
                                      MarkStream& stream,
                                      PopulationMode mode = PopulationMode::kFull);

/// How a walk reads mark heights: below `up_below` it steps up, below
/// `hold_below` it stays, otherwise it steps down.
struct WalkRule {
  double up_below = 0.0;
  double hold_below = 0.0;
};

/// First time the walk started at k reaches 0, or censored at the horizon.
SurvivalSample first_passage(int k, double horizon, MarkSource& marks, WalkRule rule);

/// First passage to 0 of the walk with up-rate lambda_f and down-rate mu;
/// `marks` must live on the strip [0, lambda_f + mu).
SurvivalSample simulate_walk_hitting(double lambda_f, double mu, int k, double horizon,
                                     MarkSource& marks);

/// Same with its own MarkStream of width lambda_f + mu.
SurvivalSample simulate_walk_hitting(double lambda_f, double mu, int k, double horizon,
                                     std::uint64_t seed, std::uint64_t index);

struct CouplingReport {
  bool holds = true;
  std::uint64_t events_checked = 0;
  SurvivalSample species;
  SurvivalSample walk;
  std::string mismatch;  // first violation, empty when holds
};

/// Drives the species process and the walk from one mark sequence. The walk
/// treats heights in [lambda_f, lambda) as no-ops. After every mark the walk
/// value must equal the number of species ordered at or below the tagged
/// one, be positive exactly while the tagged species lives, and its first
/// passage time (replayed through first_passage) must equal the tagged
/// species' death time. Stops at the tagged death, the horizon or
/// `max_events`.
CouplingReport run_coupled(const ModelParams& params, double horizon,
                           std::uint64_t max_events, MarkSource& marks,
                           std::span<const double> other_fitnesses);
CouplingReport run_coupled(const ModelParams& params, double horizon,
                           std::uint64_t max_events, MarkStream& stream);

bool coupled_equality_check(const ModelParams& params, double horizon,
                            MarkStream& stream, std::uint64_t max_events = 10'000);

struct PopulationObservation {
  double t_end = 0.0;
  double critical_fitness = 0.0;
  std::uint64_t events = 0;
  std::size_t final_size = 0;
  std::size_t window_count = 0;             // |R_t_end ∩ (a, b)|
  std::uint64_t empty_low_episodes = 0;      // returns of L_t to empty
  std::vector<std::pair<double, std::size_t>> low_trace;  // (t, |L_t|)
};

/// Runs the full process from an empty population to t_end and reports the
/// count of species inside the window (a, b) above the critical fitness,
/// how often the sub-critical set L_t emptied, and |L_t| sampled at
/// `trace_points` + 1 equally spaced times. Requires lambda > mu and
/// f_c < a < b; throws std::invalid_argument otherwise.
PopulationObservation observe_population(double lambda, double mu,
                                         const FitnessDistribution& dist, double t_end,
                                         Interval window, MarkSource& marks,
                                         std::size_t trace_points = 200);

/// n independent survival samples; sample i uses MarkStream(seed, i).
/// Deterministic for any worker count.
std::vector<SurvivalSample> sample_survival_times(
    const ModelParams& params, double horizon, std::size_t n, std::uint64_t seed,
    PopulationMode mode = PopulationMode::kAtOrBelowTagged, unsigned workers = 0);

/// n independent walk first-passage samples; sample i uses stream i.
std::vector<SurvivalSample> sample_walk_hitting_times(double lambda_f, double mu, int k,
                                                      double horizon, std::size_t n,
                                                      std::uint64_t seed,
                                                      unsigned workers = 0);

}  // namespace extinction_lab
