#include "coloc/synth.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "coloc/rng.hpp"

namespace coloc {

namespace {

std::string padded_id(const char* prefix, int i, int width) {
  std::string digits = std::to_string(i);
  std::string out = prefix;
  out.append(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))),
             '0');
  out += digits;
  return out;
}

} // namespace

SessionTable synthesize_sessions(const SynthConfig& config) {
  if (config.nodes < 0 || config.days < 0 || config.locations < 1)
    throw std::invalid_argument("synthesize_sessions: negative counts or no locations");
  if (config.sessions_per_node_per_day <= 0.0)
    throw std::invalid_argument("synthesize_sessions: session rate must be positive");
  if (config.location_affinity < 0.0 || config.location_affinity > 1.0)
    throw std::invalid_argument("synthesize_sessions: affinity must be in [0, 1]");
  if (config.session_min_minutes < 1 || config.session_max_minutes < config.session_min_minutes)
    throw std::invalid_argument("synthesize_sessions: bad session duration range");
  if (config.activity_window_hours <= 0.0)
    throw std::invalid_argument("synthesize_sessions: activity window must be positive");

  Rng rng(derive_seed(config.seed, "synth"));

  // Zipf popularity over locations: weight 1/(rank+1)
  std::vector<double> cum_weight(static_cast<std::size_t>(config.locations));
  double total = 0.0;
  for (int l = 0; l < config.locations; ++l) {
    total += 1.0 / static_cast<double>(l + 1);
    cum_weight[static_cast<std::size_t>(l)] = total;
  }
  auto draw_location = [&]() {
    const double x = rng.unit() * total;
    const auto it = std::lower_bound(cum_weight.begin(), cum_weight.end(), x);
    return static_cast<int>(it - cum_weight.begin());
  };

  const int id_width = static_cast<int>(std::to_string(std::max(config.nodes,
                                                                config.locations) - 1)
                                            .size());
  const double window_s = std::min(24.0, config.activity_window_hours) * 3600.0;
  const std::int64_t day_s = 86400;

  SessionTable table;
  for (int node = 0; node < config.nodes; ++node) {
    const std::string node_id = padded_id("n", node, id_width);
    // node-specific persistent traits
    const int home = draw_location();
    const double window_start = rng.unit() * (86400.0 - window_s);
    for (int day = 0; day < config.days; ++day) {
      // Poisson-ish session count: floor(rate) plus a Bernoulli remainder
      const double rate = config.sessions_per_node_per_day;
      int count = static_cast<int>(rate);
      if (rng.unit() < rate - static_cast<double>(count))
        ++count;
      for (int s = 0; s < count; ++s) {
        const std::int64_t start =
            day * day_s +
            static_cast<std::int64_t>(window_start + rng.unit() * window_s);
        const std::int64_t span =
            60 * (config.session_min_minutes +
                  static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(
                      config.session_max_minutes - config.session_min_minutes + 1))));
        const int loc = rng.unit() < config.location_affinity ? home : draw_location();
        table.records.push_back({node_id, start, start + span,
                                 padded_id("L", loc, id_width), config.site});
      }
    }
  }
  table.canonicalize();
  table.provenance = "original";
  table.rng_seed = config.seed;
  return table;
}

} // namespace coloc
