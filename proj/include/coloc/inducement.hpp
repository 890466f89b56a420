#pragma once

#include <cstdint>

#include "coloc/rng.hpp"
#include "coloc/types.hpp"

namespace coloc {

enum class ShuffleField { kTimePair, kLocation, kNode };
enum class GroupKey { kNode, kLocation };

/// Permute the chosen field uniformly across all records. Start/end times
/// move as one atomic pair; the untouched fields stay attached to their
/// record slots. Output is re-sorted to canonical order.
SessionTable global_shuffle_field(const SessionTable& table, ShuffleField field, Rng& rng);

/// Permute the chosen field within groups sharing the group key, so values
/// never cross group boundaries. Supported combinations:
///   (kNode, kTimePair)  - each node keeps its time pairs, reassigned
///                         among that node's sessions
///   (kLocation, kNode)  - each location keeps its visitor multiset,
///                         reassigned among that location's sessions
/// Anything else throws std::invalid_argument. Groups are visited in
/// sorted key order so the seed alone fixes the output.
SessionTable grouped_shuffle_field(const SessionTable& table, GroupKey group_by,
                                   ShuffleField field, Rng& rng);

/// Apply one of the session-level null models (or Original, the identity).
/// The composed stream of a two-step model draws from a single Rng seeded
/// with `seed`. Contact-level model ids are rejected: they operate on
/// contact sequences, not session tables.
SessionTable apply_null_model(const SessionTable& table, NullModel model, std::uint64_t seed);

} // namespace coloc
