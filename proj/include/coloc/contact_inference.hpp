#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "coloc/types.hpp"

namespace coloc {

/// Infer contacts from colocation: every unordered pair of sessions at the
/// same location whose intervals overlap with positive measure yields one
/// ContactEvent at t_start = max of the two session starts. Overlapping
/// sessions of the same node count into imaginary_discarded instead.
/// Endpoint-touching intervals (a.end == b.start) do not contact.
///
/// Implemented as a per-location sweep over interval endpoints with an
/// active-session set, O(n log n + k) for k emitted events. Requires a
/// cleaned table (all ends present); throws std::invalid_argument otherwise.
ContactSequence infer_contacts(const SessionTable& table);

/// (total, unique) contact counts among events with t_start <= t: total
/// counts events, unique counts distinct canonical node pairs.
std::pair<std::uint64_t, std::uint64_t> count_total_and_unique(const ContactSequence& seq,
                                                               std::int64_t t);

/// Node pairs bucketed by how many contact events they repeat: exactly
/// once, exactly twice, or more than twice.
struct RepeatHistogram {
  std::uint64_t once = 0;
  std::uint64_t twice = 0;
  std::uint64_t more = 0;

  friend bool operator==(const RepeatHistogram&, const RepeatHistogram&) = default;
};
RepeatHistogram repeat_contact_histogram(const ContactSequence& seq);

/// Contact CSV: `node_a,node_b,t_start,location` with `# model=` and
/// `# imaginary_discarded=` header comments.
void write_contacts_csv(const ContactSequence& seq, std::ostream& out);
void write_contacts_csv_file(const ContactSequence& seq, const std::string& path);
ContactSequence read_contacts_csv(std::istream& in);
ContactSequence read_contacts_csv_file(const std::string& path);

} // namespace coloc
