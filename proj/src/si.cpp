#include "coloc/si.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "coloc/csv.hpp"
#include "coloc/graph.hpp"

namespace coloc {

std::int64_t TrialConfig::seed_window_seconds() const {
  return static_cast<std::int64_t>(std::llround(seed_window_days * 86400.0));
}

std::int64_t TrialConfig::runway_seconds() const {
  return static_cast<std::int64_t>(std::llround(runway_days * 86400.0));
}

double PrevalenceCurve::value_at(std::int64_t t) const {
  // last step with time <= t
  auto it = std::upper_bound(steps.begin(), steps.end(), t,
                             [](std::int64_t v, const std::pair<std::int64_t, double>& s) {
                               return v < s.first;
                             });
  if (it == steps.begin())
    return 0.0;
  return std::prev(it)->second;
}

std::pair<ContactEvent, std::string> sample_seed_event(const ContactSequence& seq,
                                                       const TrialConfig& config, Rng& rng) {
  if (seq.events.empty())
    throw std::runtime_error("sample_seed_event: contact sequence is empty");
  const std::int64_t origin = seq.events.front().t_start;
  const std::int64_t cutoff = origin + config.seed_window_seconds();
  // events are sorted by t_start; the window [origin, cutoff) is a prefix
  const auto end = std::lower_bound(
      seq.events.begin(), seq.events.end(), cutoff,
      [](const ContactEvent& e, std::int64_t v) { return e.t_start < v; });
  const std::size_t n = static_cast<std::size_t>(end - seq.events.begin());
  if (n == 0)
    throw std::runtime_error("sample_seed_event: no events inside the seed window");
  const ContactEvent& e = seq.events[rng.below(n)];
  const std::string& node = rng.below(2) == 0 ? e.node_a : e.node_b;
  return {e, node};
}

namespace {

PrevalenceCurve trial_impl(const ContactSequence& seq, const TrialConfig& config, Rng& rng,
                           TrialTrace* trace) {
  ContactEvent seed_event;
  std::string seed_node;
  std::vector<std::string> lcc;
  // resample until the chosen node sits in the LCC of the trial's own
  // aggregation window; both event and endpoint are redrawn each time
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 100000)
      throw std::runtime_error("run_trial: no seed event with an LCC endpoint found");
    auto [event, node] = sample_seed_event(seq, config, rng);
    const AggregatedGraph g =
        aggregate(seq, event.t_start, event.t_start + config.runway_seconds());
    lcc = largest_connected_component(g);
    if (std::binary_search(lcc.begin(), lcc.end(), node)) {
      seed_event = event;
      seed_node = std::move(node);
      break;
    }
  }

  PrevalenceCurve curve;
  curve.denominator = lcc.size();
  curve.seed_node = seed_node;
  curve.seed_event_time = seed_event.t_start;
  const double n = static_cast<double>(lcc.size());

  std::unordered_set<std::string> infected;
  infected.insert(seed_event.node_a);
  infected.insert(seed_event.node_b);
  curve.steps.emplace_back(0, static_cast<double>(infected.size()) / n);
  if (trace) {
    trace->lcc = lcc;
    trace->infections.emplace_back(0, seed_event.node_a);
    if (seed_event.node_b != seed_event.node_a)
      trace->infections.emplace_back(0, seed_event.node_b);
  }

  const std::int64_t t_end = seed_event.t_start + config.runway_seconds();
  const auto lo = std::lower_bound(
      seq.events.begin(), seq.events.end(), seed_event.t_start,
      [](const ContactEvent& e, std::int64_t v) { return e.t_start < v; });
  const auto hi = std::upper_bound(
      seq.events.begin(), seq.events.end(), t_end,
      [](std::int64_t v, const ContactEvent& e) { return v < e.t_start; });
  for (auto it = lo; it != hi; ++it) {
    if (infected.size() == curve.denominator)
      break;
    const bool a_in = infected.count(it->node_a) != 0;
    const bool b_in = infected.count(it->node_b) != 0;
    if (a_in == b_in)
      continue;
    const std::string& fresh = a_in ? it->node_b : it->node_a;
    infected.insert(fresh);
    const std::int64_t rel = it->t_start - seed_event.t_start;
    const double p = static_cast<double>(infected.size()) / n;
    if (!curve.steps.empty() && curve.steps.back().first == rel)
      curve.steps.back().second = p;
    else
      curve.steps.emplace_back(rel, p);
    if (trace)
      trace->infections.emplace_back(rel, fresh);
  }
  return curve;
}

} // namespace

PrevalenceCurve run_trial(const ContactSequence& seq, const TrialConfig& config, Rng& rng) {
  return trial_impl(seq, config, rng, nullptr);
}

TrialTrace run_trial_traced(const ContactSequence& seq, const TrialConfig& config, Rng& rng) {
  TrialTrace trace;
  trace.curve = trial_impl(seq, config, rng, &trace);
  return trace;
}

PrevalenceEnsemble run_ensemble(const ContactSequence& seq, const TrialConfig& config,
                                int threads) {
  if (config.trials < 1)
    throw std::invalid_argument("run_ensemble: trials must be >= 1");
  if (config.grid_step_seconds < 1)
    throw std::invalid_argument("run_ensemble: grid step must be >= 1 second");

  PrevalenceEnsemble ens;
  const std::int64_t horizon = config.runway_seconds();
  for (std::int64_t t = 0; t <= horizon; t += config.grid_step_seconds)
    ens.grid.push_back(t);

  ens.trials.resize(static_cast<std::size_t>(config.trials));
  std::vector<std::string> failures(static_cast<std::size_t>(config.trials));
  const int workers = std::max(1, threads);

  auto run_range = [&](int begin, int step) {
    for (int i = begin; i < config.trials; i += step) {
      Rng rng(derive_seed(config.master_seed, "trial", static_cast<std::uint64_t>(i)));
      try {
        ens.trials[static_cast<std::size_t>(i)] = run_trial(seq, config, rng);
      } catch (const std::exception& e) {
        failures[static_cast<std::size_t>(i)] = e.what();
      }
    }
  };
  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_range, w, workers);
    for (auto& t : pool)
      t.join();
  }
  for (int i = 0; i < config.trials; ++i)
    if (!failures[static_cast<std::size_t>(i)].empty())
      throw std::runtime_error("run_ensemble: trial " + std::to_string(i) + " failed: " +
                               failures[static_cast<std::size_t>(i)]);

  // aggregate in index order so the result is schedule-invariant
  const double n = static_cast<double>(config.trials);
  ens.mean.reserve(ens.grid.size());
  ens.sem.reserve(ens.grid.size());
  std::vector<double> values(ens.trials.size());
  for (std::int64_t t : ens.grid) {
    double sum = 0.0;
    for (std::size_t i = 0; i < ens.trials.size(); ++i) {
      values[i] = ens.trials[i].value_at(t);
      sum += values[i];
    }
    const double mean = sum / n;
    double sem = 0.0;
    if (config.trials > 1) {
      double ss = 0.0;
      for (double v : values)
        ss += (v - mean) * (v - mean);
      sem = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    ens.mean.push_back(mean);
    ens.sem.push_back(sem);
  }
  return ens;
}

void write_prevalence_csv(const PrevalenceEnsemble& ens, std::ostream& out,
                          std::string_view model_label) {
  if (!model_label.empty())
    out << "# model=" << model_label << '\n';
  out << "# trials=" << ens.trials.size() << '\n';
  out << "t_seconds,mean_prevalence,sem\n";
  for (std::size_t i = 0; i < ens.grid.size(); ++i)
    out << ens.grid[i] << ',' << fmt_double(ens.mean[i]) << ',' << fmt_double(ens.sem[i])
        << '\n';
}

} // namespace coloc
