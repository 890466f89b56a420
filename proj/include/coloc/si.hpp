#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "coloc/rng.hpp"
#include "coloc/types.hpp"

namespace coloc {

struct TrialConfig {
  double seed_window_days = 4.0; // initial events sampled from this window
  double runway_days = 10.0;     // simulated horizon after the seed event
  int trials = 250;
  std::uint64_t master_seed = 0;
  std::int64_t grid_step_seconds = 600; // ensemble sampling resolution

  std::int64_t seed_window_seconds() const;
  std::int64_t runway_seconds() const;
};

/// One trial's prevalence step function. Steps record every prevalence
/// increase as (seconds since the seed event, |I|/N); the first step is at
/// t = 0 and the function is nondecreasing. N is the size of the largest
/// connected component of the window-aggregated contact graph.
struct PrevalenceCurve {
  std::vector<std::pair<std::int64_t, double>> steps;
  std::size_t denominator = 0;
  std::string seed_node;
  std::int64_t seed_event_time = 0; // absolute epoch seconds

  /// Step-function value at relative time t (last value carried forward;
  /// 0 before the first step).
  double value_at(std::int64_t t) const;

  friend bool operator==(const PrevalenceCurve&, const PrevalenceCurve&) = default;
};

/// Trial ensemble sampled onto a common relative-time grid.
/// sem[g] is the standard error of the mean: sample standard deviation
/// (n-1 denominator) over trials divided by sqrt(trials); 0 for one trial.
struct PrevalenceEnsemble {
  std::vector<std::int64_t> grid;
  std::vector<double> mean;
  std::vector<double> sem;
  std::vector<PrevalenceCurve> trials;

  friend bool operator==(const PrevalenceEnsemble&, const PrevalenceEnsemble&) = default;
};

/// Draw a seed event uniformly from events within the seed window
/// [first event time, first event time + seed window), then one of its two
/// endpoints uniformly. Throws std::runtime_error when the window holds no
/// events.
std::pair<ContactEvent, std::string> sample_seed_event(const ContactSequence& seq,
                                                       const TrialConfig& config, Rng& rng);

/// One SI trial: sample a seed event (resampling until the chosen node
/// belongs to the largest connected component of the contact graph
/// aggregated over [event time, event time + runway]), infect both seed
/// endpoints at t = 0, then scan the window's events in canonical order,
/// infecting the susceptible endpoint whenever the other is infected.
/// Events sharing a timestamp are processed in canonical order, so
/// same-timestamp infection chains can occur. The runway is a cap: traces
/// shorter than seed window + runway simply yield flat tails.
PrevalenceCurve run_trial(const ContactSequence& seq, const TrialConfig& config, Rng& rng);

/// run_trial plus the infection log and the LCC, for verifying containment.
struct TrialTrace {
  PrevalenceCurve curve;
  std::vector<std::pair<std::int64_t, std::string>> infections; // (rel t, node)
  std::vector<std::string> lcc;                                 // sorted
};
TrialTrace run_trial_traced(const ContactSequence& seq, const TrialConfig& config, Rng& rng);

/// Run config.trials independent trials with per-trial seeds derived from
/// (master_seed, trial index) and aggregate onto the grid by last value
/// carried forward. Output is bit-identical for any thread count. A trial
/// whose seed sampling fails aborts the ensemble, reporting the trial index.
PrevalenceEnsemble run_ensemble(const ContactSequence& seq, const TrialConfig& config,
                                int threads = 1);

/// Prevalence CSV: `t_seconds,mean_prevalence,sem`.
void write_prevalence_csv(const PrevalenceEnsemble& ens, std::ostream& out,
                          std::string_view model_label = {});

} // namespace coloc
