#include "coloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "coloc/csv.hpp"

namespace coloc {

Ecdf::Ecdf(std::vector<double> samples) : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
}

double Ecdf::operator()(double x) const {
  if (samples_.empty())
    return 1.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

TimeSeries active_sessions_over_time(const SessionTable& table, std::int64_t step) {
  if (step < 1)
    throw std::invalid_argument("active_sessions_over_time: step must be >= 1");
  TimeSeries out;
  out.label = "active_sessions";
  if (table.records.empty())
    return out;
  std::vector<std::int64_t> starts, ends;
  starts.reserve(table.records.size());
  ends.reserve(table.records.size());
  for (const auto& rec : table.records) {
    if (!rec.end)
      throw std::invalid_argument("active_sessions_over_time: requires a cleaned table");
    starts.push_back(rec.start);
    ends.push_back(*rec.end);
  }
  std::sort(starts.begin(), starts.end());
  std::sort(ends.begin(), ends.end());
  const std::int64_t lo = starts.front();
  const std::int64_t hi = *std::max_element(ends.begin(), ends.end());
  for (std::int64_t t = lo; t <= hi; t += step) {
    // active means start <= t < end
    const auto ns = std::upper_bound(starts.begin(), starts.end(), t) - starts.begin();
    const auto ne = std::upper_bound(ends.begin(), ends.end(), t) - ends.begin();
    out.points.emplace_back(t, static_cast<double>(ns - ne));
  }
  return out;
}

Ecdf ecdf_locations_per_node(const SessionTable& table) {
  std::map<std::string, std::set<std::string>> visited;
  for (const auto& rec : table.records)
    visited[rec.node].insert(rec.location);
  std::vector<double> samples;
  samples.reserve(visited.size());
  for (const auto& [node, locs] : visited)
    samples.push_back(static_cast<double>(locs.size()));
  return Ecdf(std::move(samples));
}

Ecdf ecdf_contacts_per_node(const ContactSequence& seq, ContactCountMode mode) {
  std::map<std::string, std::uint64_t> total;
  std::map<std::string, std::set<std::string>> partners;
  for (const auto& e : seq.events) {
    if (mode == ContactCountMode::kTotal) {
      ++total[e.node_a];
      ++total[e.node_b];
    } else {
      partners[e.node_a].insert(e.node_b);
      partners[e.node_b].insert(e.node_a);
    }
  }
  std::vector<double> samples;
  if (mode == ContactCountMode::kTotal) {
    samples.reserve(total.size());
    for (const auto& [node, n] : total)
      samples.push_back(static_cast<double>(n));
  } else {
    samples.reserve(partners.size());
    for (const auto& [node, set] : partners)
      samples.push_back(static_cast<double>(set.size()));
  }
  return Ecdf(std::move(samples));
}

IntersessionEcdf ecdf_intersession_time(const SessionTable& table) {
  std::map<std::string, std::vector<std::pair<std::int64_t, std::int64_t>>> by_node;
  for (const auto& rec : table.records) {
    if (!rec.end)
      throw std::invalid_argument("ecdf_intersession_time: requires a cleaned table");
    by_node[rec.node].emplace_back(rec.start, *rec.end);
  }
  IntersessionEcdf out;
  std::vector<double> samples;
  for (auto& [node, sessions] : by_node) {
    std::sort(sessions.begin(), sessions.end());
    for (std::size_t i = 1; i < sessions.size(); ++i) {
      const std::int64_t gap = sessions[i].first - sessions[i - 1].second;
      if (gap < 0)
        ++out.negative_gaps_excluded;
      else
        samples.push_back(static_cast<double>(gap));
    }
  }
  out.ecdf = Ecdf(std::move(samples));
  return out;
}

TimeSeries cumulative_contacts_series(const ContactSequence& seq, std::int64_t step,
                                      ContactCountMode mode) {
  if (step < 1)
    throw std::invalid_argument("cumulative_contacts_series: step must be >= 1");
  TimeSeries out;
  out.label = mode == ContactCountMode::kTotal ? "cumulative_total" : "cumulative_unique";
  if (seq.events.empty())
    return out;
  const std::int64_t lo = seq.events.front().t_start;
  const std::int64_t hi = seq.events.back().t_start;
  std::size_t next = 0;
  std::uint64_t count = 0;
  std::set<NodePair> seen;
  auto advance_to = [&](std::int64_t t) {
    while (next < seq.events.size() && seq.events[next].t_start <= t) {
      const auto& e = seq.events[next];
      if (mode == ContactCountMode::kTotal)
        ++count;
      else if (seen.insert(canonical_pair(e.node_a, e.node_b)).second)
        ++count;
      ++next;
    }
  };
  std::int64_t t = lo;
  for (; t <= hi; t += step) {
    advance_to(t);
    out.points.emplace_back(t, static_cast<double>(count));
  }
  if (out.points.back().first < hi) {
    // close the series at the last event so the final value is the total
    advance_to(hi);
    out.points.emplace_back(hi, static_cast<double>(count));
  }
  return out;
}

TimeSeries mean_cumulative_contacts(const ContactSequence& seq, const PrevalenceEnsemble& ens,
                                    ContactCountMode mode) {
  TimeSeries out;
  out.label = mode == ContactCountMode::kTotal ? "mean_cumulative_total"
                                               : "mean_cumulative_unique";
  if (ens.trials.empty() || ens.grid.empty())
    return out;
  std::vector<double> sums(ens.grid.size(), 0.0);
  for (const auto& trial : ens.trials) {
    const std::int64_t s = trial.seed_event_time;
    auto it = std::lower_bound(seq.events.begin(), seq.events.end(), s,
                               [](const ContactEvent& e, std::int64_t v) {
                                 return e.t_start < v;
                               });
    std::uint64_t count = 0;
    std::set<NodePair> seen;
    for (std::size_t g = 0; g < ens.grid.size(); ++g) {
      const std::int64_t cutoff = s + ens.grid[g];
      while (it != seq.events.end() && it->t_start <= cutoff) {
        if (mode == ContactCountMode::kTotal)
          ++count;
        else if (seen.insert(canonical_pair(it->node_a, it->node_b)).second)
          ++count;
        ++it;
      }
      sums[g] += static_cast<double>(count);
    }
  }
  const double n = static_cast<double>(ens.trials.size());
  out.points.reserve(ens.grid.size());
  for (std::size_t g = 0; g < ens.grid.size(); ++g)
    out.points.emplace_back(ens.grid[g], sums[g] / n);
  return out;
}

std::vector<std::pair<double, double>> prevalence_vs_contacts(const PrevalenceEnsemble& ens,
                                                              const TimeSeries& contacts) {
  if (contacts.points.size() != ens.grid.size())
    throw std::invalid_argument("prevalence_vs_contacts: domain size mismatch");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(ens.grid.size());
  for (std::size_t g = 0; g < ens.grid.size(); ++g) {
    if (contacts.points[g].first != ens.grid[g])
      throw std::invalid_argument("prevalence_vs_contacts: grid mismatch at index " +
                                  std::to_string(g));
    curve.emplace_back(contacts.points[g].second, ens.mean[g]);
  }
  return curve;
}

std::uint64_t PrevalenceHistogram::total() const {
  std::uint64_t n = 0;
  for (std::uint64_t c : counts)
    n += c;
  return n;
}

PrevalenceHistogram one_day_prevalence_histogram(const PrevalenceEnsemble& ens,
                                                 double bin_width) {
  if (!(bin_width > 0.0) || bin_width > 1.0)
    throw std::invalid_argument("one_day_prevalence_histogram: bin width must be in (0, 1]");
  PrevalenceHistogram h;
  h.bin_width = bin_width;
  const std::size_t bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width));
  h.counts.assign(bins, 0);
  for (const auto& trial : ens.trials) {
    const double p = trial.value_at(86400);
    auto idx = static_cast<std::size_t>(p / bin_width);
    if (idx >= bins)
      idx = bins - 1; // p == 1 lands in the last bin
    ++h.counts[idx];
  }
  return h;
}

DeltaSeries pairwise_prevalence_delta(const PrevalenceEnsemble& a, const PrevalenceEnsemble& b) {
  if (a.grid != b.grid)
    throw std::invalid_argument("pairwise_prevalence_delta: grids differ");
  DeltaSeries d;
  d.grid = a.grid;
  d.delta.reserve(a.grid.size());
  d.band.reserve(a.grid.size());
  for (std::size_t g = 0; g < a.grid.size(); ++g) {
    d.delta.push_back(a.mean[g] - b.mean[g]);
    d.band.push_back(std::sqrt(a.sem[g] * a.sem[g] + b.sem[g] * b.sem[g]));
  }
  return d;
}

void write_timeseries_csv(const TimeSeries& ts, std::ostream& out,
                          std::string_view value_name) {
  out << "t_seconds," << value_name << '\n';
  for (const auto& [t, v] : ts.points)
    out << t << ',' << fmt_double(v) << '\n';
}

void write_ecdf_csv(const Ecdf& e, std::ostream& out) {
  out << "value,fraction\n";
  const auto& s = e.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size() && s[i + 1] == s[i])
      continue; // one row per distinct value, at its final fraction
    out << fmt_double(s[i]) << ',' << fmt_double(e(s[i])) << '\n';
  }
}

void write_histogram_csv(const PrevalenceHistogram& h, std::ostream& out) {
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double lo = static_cast<double>(i) * h.bin_width;
    const double hi = std::min(1.0, static_cast<double>(i + 1) * h.bin_width);
    out << fmt_double(lo) << ',' << fmt_double(hi) << ',' << h.counts[i] << '\n';
  }
}

void write_delta_csv(const DeltaSeries& d, std::ostream& out) {
  out << "t_seconds,delta,band\n";
  for (std::size_t i = 0; i < d.grid.size(); ++i)
    out << d.grid[i] << ',' << fmt_double(d.delta[i]) << ',' << fmt_double(d.band[i]) << '\n';
}

void write_curve_csv(const std::vector<std::pair<double, double>>& curve, std::ostream& out,
                     std::string_view x_name, std::string_view y_name) {
  out << x_name << ',' << y_name << '\n';
  for (const auto& [x, y] : curve)
    out << fmt_double(x) << ',' << fmt_double(y) << '\n';
}

void write_contact_counts_csv(const TimeSeries& total, const TimeSeries& unique,
                              std::ostream& out) {
  if (total.points.size() != unique.points.size())
    throw std::invalid_argument("write_contact_counts_csv: series length mismatch");
  out << "t_seconds,total,unique\n";
  for (std::size_t i = 0; i < total.points.size(); ++i) {
    if (total.points[i].first != unique.points[i].first)
      throw std::invalid_argument("write_contact_counts_csv: grid mismatch");
    out << total.points[i].first << ',' << fmt_double(total.points[i].second) << ','
        << fmt_double(unique.points[i].second) << '\n';
  }
}

} // namespace coloc
