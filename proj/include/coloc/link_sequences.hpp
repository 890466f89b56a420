#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coloc/graph.hpp"
#include "coloc/rng.hpp"
#include "coloc/types.hpp"

namespace coloc {

/// Location placeholder on events flattened back from shuffled link
/// sequences, where per-event locations are no longer defined.
inline constexpr const char* kShuffledLocation = "*";

/// Contact network keyed by canonical node pair, each link carrying its
/// ordered event-timestamp sequence. Locations are dropped: the four
/// contact-level shuffles are location-free.
struct LinkSequenceMap {
  std::map<NodePair, std::vector<std::int64_t>> links;

  std::uint64_t total_events() const;
  std::vector<std::string> node_set() const;
  AggregatedGraph aggregated_graph() const;

  friend bool operator==(const LinkSequenceMap&, const LinkSequenceMap&) = default;
};

/// Group event timestamps by canonical pair; each sequence sorted.
LinkSequenceMap build_link_sequences(const ContactSequence& seq);

/// Exchange whole sequences between links with the same event count.
LinkSequenceMap shuffle_dcwb(const LinkSequenceMap& in, Rng& rng);

/// Exchange whole sequences between arbitrary links.
LinkSequenceMap shuffle_dcb(const LinkSequenceMap& in, Rng& rng);

/// Reshuffle the pooled timestamps across all event slots; per-link event
/// counts are unchanged and each sequence is re-sorted.
LinkSequenceMap shuffle_dcw(const LinkSequenceMap& in, Rng& rng);

/// Rewire the aggregated graph degree-preservingly (keeping it connected
/// and simple), place the original sequences onto the new links as a
/// uniform random bijection, then reshuffle all timestamps globally.
/// Requires a connected aggregated graph.
LinkSequenceMap shuffle_d(const LinkSequenceMap& in, Rng& rng, std::size_t swap_factor = 10);

/// Flatten back to a chronological event stream with the sentinel
/// location. imaginary_discarded is 0: no inference took place.
ContactSequence to_contact_sequence(const LinkSequenceMap& in, std::string source_model);

/// Apply one of the contact-level null models end to end. Session-level
/// model ids are rejected: they operate on session tables.
ContactSequence apply_contact_model(const ContactSequence& seq, NullModel model,
                                    std::uint64_t seed);

} // namespace coloc
