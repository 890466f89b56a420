#pragma once

#include <cstdint>
#include <string>

#include "coloc/types.hpp"

namespace coloc {

/// Synthetic trace generator with plantable correlations. Two knobs set
/// correlation strength:
///   activity_window_hours - each node's sessions start inside a node-
///     specific daily window of this width (narrow window = strong
///     time/node correlation); >= 24 disables the window.
///   location_affinity - probability a session visits the node's home
///     location instead of a popularity-weighted random one (high affinity
///     = strong location/node correlation).
/// Location popularity is Zipf-weighted, so shared popular-hours-at-
/// popular-places structure emerges on its own.
struct SynthConfig {
  int nodes = 500;
  int locations = 50;
  int days = 14;
  double sessions_per_node_per_day = 6.0;
  double activity_window_hours = 2.0;
  double location_affinity = 0.8;
  int session_min_minutes = 20;
  int session_max_minutes = 60;
  std::uint64_t seed = 0;
  std::string site = "synth";
};

/// Deterministic in config + seed. Throws std::invalid_argument on an
/// inconsistent config (negative counts, affinity outside [0, 1],
/// max < min duration, zero-width activity window).
SessionTable synthesize_sessions(const SynthConfig& config);

} // namespace coloc
