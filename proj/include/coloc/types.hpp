#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace coloc {

/// One device session: node (device id) present at location (AP id) over
/// [start, end). Timestamps are integer epoch seconds. `end` is absent for
/// sessions still open when trace collection stopped; cleaning removes those.
struct SessionRecord {
  std::string node;
  std::int64_t start = 0;
  std::optional<std::int64_t> end;
  std::string location;
  std::string site;

  friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

inline bool canonical_less(const SessionRecord& a, const SessionRecord& b) {
  return std::tie(a.start, a.end, a.node, a.location, a.site) <
         std::tie(b.start, b.end, b.node, b.location, b.site);
}

/// Ordered session table. Invariant: records sorted by
/// (start, end, node, location, site) after any mutation, so every
/// consumer sees one canonical order regardless of input permutation.
struct SessionTable {
  std::vector<SessionRecord> records;
  std::string provenance = "original"; // model label applied to this table
  std::optional<std::uint64_t> rng_seed;

  void canonicalize();
  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  friend bool operator==(const SessionTable&, const SessionTable&) = default;
};

/// Per-rule tallies from cleaning. retained + drops always equals the
/// input record count.
struct CleanReport {
  std::uint64_t dropped_no_end = 0;
  std::uint64_t dropped_zero_duration = 0;
  std::uint64_t dropped_no_location = 0;
  std::uint64_t retained = 0;

  std::uint64_t input_total() const {
    return dropped_no_end + dropped_zero_duration + dropped_no_location + retained;
  }
  friend bool operator==(const CleanReport&, const CleanReport&) = default;
};

using NodePair = std::pair<std::string, std::string>;

inline NodePair canonical_pair(std::string a, std::string b) {
  return a <= b ? NodePair{std::move(a), std::move(b)} : NodePair{std::move(b), std::move(a)};
}

/// Initiation of one inferred contact: canonical unordered node pair
/// (node_a < node_b) plus the overlap onset time and the shared location.
struct ContactEvent {
  std::string node_a;
  std::string node_b;
  std::int64_t t_start = 0;
  std::string location;

  friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

inline bool event_less(const ContactEvent& a, const ContactEvent& b) {
  return std::tie(a.t_start, a.node_a, a.node_b, a.location) <
         std::tie(b.t_start, b.node_a, b.node_b, b.location);
}

/// Chronologically ordered contact-event stream plus the count of
/// self-colocations discarded during inference.
struct ContactSequence {
  std::vector<ContactEvent> events; // sorted by (t_start, node_a, node_b, location)
  std::uint64_t imaginary_discarded = 0;
  std::string source_model = "original";

  void sort_events();
  std::size_t size() const { return events.size(); }
  bool empty() const { return events.empty(); }

  friend bool operator==(const ContactSequence&, const ContactSequence&) = default;
};

/// The eleven network variants: the untouched trace, six session-level
/// (inducement) shuffles named by the time/location/node correlations they
/// retain, and four contact-level shuffles.
enum class NullModel {
  kOriginal,
  kLnTn,  // group by node, shuffle time pairs
  kTlLn,  // group by location, shuffle nodes
  kLn,    // shuffle time pairs globally
  kTn,    // shuffle locations globally
  kTl,    // shuffle nodes globally
  kEmpty, // shuffle locations globally, then nodes globally
  kDcwb,  // exchange link sequences between equal-weight links
  kDcb,   // exchange link sequences between arbitrary links
  kDcw,   // reshuffle all timestamps globally
  kD,     // degree-preserving rewire + sequence placement + time shuffle
};

std::string to_string(NullModel m);

/// Parse a model id. Case-insensitive; '_' and '-' are interchangeable
/// ("TL_LN" == "tl-ln"). Throws std::invalid_argument for unknown ids,
/// listing the valid ones.
NullModel null_model_from_string(std::string_view s);

std::vector<NullModel> all_null_models();

/// True for Original and the six session-level shuffles.
bool is_inducement_model(NullModel m);
/// True for the four contact-level shuffles.
bool is_contact_model(NullModel m);

/// Which of the three pairwise correlations an inducement model keeps.
struct RetainedCorrelations {
  bool ln = false; // (node, location) record pairs preserved
  bool tn = false; // (node, time pair) record pairs preserved
  bool tl = false; // (time pair, location) record pairs preserved
};
RetainedCorrelations retained_correlations(NullModel m);

} // namespace coloc
