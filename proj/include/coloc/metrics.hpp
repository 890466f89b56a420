#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "coloc/si.hpp"
#include "coloc/types.hpp"

namespace coloc {

struct TimeSeries {
  std::vector<std::pair<std::int64_t, double>> points; // t strictly increasing
  std::string label;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Empirical CDF: fraction of samples <= x. Right-continuous nondecreasing
/// step function with range [0, 1]; an empty ECDF evaluates to 1.
class Ecdf {
public:
  Ecdf() = default;
  explicit Ecdf(std::vector<double> samples);

  double operator()(double x) const;
  const std::vector<double>& samples() const { return samples_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }

  friend bool operator==(const Ecdf&, const Ecdf&) = default;

private:
  std::vector<double> samples_; // sorted
};

/// Sessions active at each grid time t (start <= t < end), from min start
/// to max end inclusive. Empty table yields an empty series.
TimeSeries active_sessions_over_time(const SessionTable& table, std::int64_t step);

/// Per-node count of distinct locations visited.
Ecdf ecdf_locations_per_node(const SessionTable& table);

enum class ContactCountMode { kTotal, kUnique };

/// Per-node contact volume: event count (kTotal) or distinct-partner count
/// (kUnique).
Ecdf ecdf_contacts_per_node(const ContactSequence& seq, ContactCountMode mode);

/// Gaps between one session's end and the same node's next session start
/// (sessions taken in canonical start order). Negative gaps from
/// overlapping same-node sessions are excluded and counted, not clamped:
/// clamping would fabricate a spike at zero.
struct IntersessionEcdf {
  Ecdf ecdf;
  std::uint64_t negative_gaps_excluded = 0;
};
IntersessionEcdf ecdf_intersession_time(const SessionTable& table);

/// Cumulative contact counts on a grid over the trace span (absolute time).
TimeSeries cumulative_contacts_series(const ContactSequence& seq, std::int64_t step,
                                      ContactCountMode mode);

/// Cumulative contact count inside each trial's window, averaged over the
/// ensemble's trials, on the ensemble grid (trial-relative time).
TimeSeries mean_cumulative_contacts(const ContactSequence& seq, const PrevalenceEnsemble& ens,
                                    ContactCountMode mode);

/// Eliminate time between the two curves: one (mean contacts, mean
/// prevalence) point per grid entry. The contact series must live on the
/// ensemble's grid; mismatched domains throw std::invalid_argument.
std::vector<std::pair<double, double>> prevalence_vs_contacts(const PrevalenceEnsemble& ens,
                                                              const TimeSeries& contacts);

/// Per-trial prevalence at one day, binned over [0, 1].
struct PrevalenceHistogram {
  double bin_width = 0.02;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};
PrevalenceHistogram one_day_prevalence_histogram(const PrevalenceEnsemble& ens,
                                                 double bin_width = 0.02);

/// delta(t) = mean_a(t) - mean_b(t) with combined-SEM band
/// sqrt(sem_a^2 + sem_b^2). Grids must match exactly.
struct DeltaSeries {
  std::vector<std::int64_t> grid;
  std::vector<double> delta;
  std::vector<double> band;

  friend bool operator==(const DeltaSeries&, const DeltaSeries&) = default;
};
DeltaSeries pairwise_prevalence_delta(const PrevalenceEnsemble& a, const PrevalenceEnsemble& b);

void write_timeseries_csv(const TimeSeries& ts, std::ostream& out,
                          std::string_view value_name = "value");
void write_ecdf_csv(const Ecdf& e, std::ostream& out);
void write_histogram_csv(const PrevalenceHistogram& h, std::ostream& out);
void write_delta_csv(const DeltaSeries& d, std::ostream& out);
void write_curve_csv(const std::vector<std::pair<double, double>>& curve, std::ostream& out,
                     std::string_view x_name, std::string_view y_name);
void write_contact_counts_csv(const TimeSeries& total, const TimeSeries& unique,
                              std::ostream& out);

} // namespace coloc
