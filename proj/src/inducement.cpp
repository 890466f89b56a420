#include "coloc/inducement.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace coloc {

namespace {

using TimePair = std::pair<std::int64_t, std::optional<std::int64_t>>;

// Permute `field` over the record slots listed in `indices` (a global
// shuffle passes every slot). Start/end move as one pair.
void shuffle_slots(std::vector<SessionRecord>& records, const std::vector<std::size_t>& indices,
                   ShuffleField field, Rng& rng) {
  switch (field) {
  case ShuffleField::kTimePair: {
    std::vector<TimePair> values;
    values.reserve(indices.size());
    for (auto i : indices)
      values.emplace_back(records[i].start, records[i].end);
    rng.shuffle(values);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      records[indices[k]].start = values[k].first;
      records[indices[k]].end = values[k].second;
    }
    break;
  }
  case ShuffleField::kLocation: {
    std::vector<std::string> values;
    values.reserve(indices.size());
    for (auto i : indices)
      values.push_back(records[i].location);
    rng.shuffle(values);
    for (std::size_t k = 0; k < indices.size(); ++k)
      records[indices[k]].location = std::move(values[k]);
    break;
  }
  case ShuffleField::kNode: {
    std::vector<std::string> values;
    values.reserve(indices.size());
    for (auto i : indices)
      values.push_back(records[i].node);
    rng.shuffle(values);
    for (std::size_t k = 0; k < indices.size(); ++k)
      records[indices[k]].node = std::move(values[k]);
    break;
  }
  }
}

} // namespace

SessionTable global_shuffle_field(const SessionTable& table, ShuffleField field, Rng& rng) {
  SessionTable out = table;
  std::vector<std::size_t> all(out.records.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  shuffle_slots(out.records, all, field, rng);
  out.canonicalize();
  return out;
}

SessionTable grouped_shuffle_field(const SessionTable& table, GroupKey group_by,
                                   ShuffleField field, Rng& rng) {
  const bool valid = (group_by == GroupKey::kNode && field == ShuffleField::kTimePair) ||
                     (group_by == GroupKey::kLocation && field == ShuffleField::kNode);
  if (!valid)
    throw std::invalid_argument("unsupported grouped shuffle: group by node shuffles time "
                                "pairs, group by location shuffles nodes");

  SessionTable out = table;
  // sorted group keys: the seed alone fixes the result
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const auto& key =
        group_by == GroupKey::kNode ? out.records[i].node : out.records[i].location;
    groups[key].push_back(i);
  }
  for (auto& [key, indices] : groups)
    shuffle_slots(out.records, indices, field, rng);
  out.canonicalize();
  return out;
}

SessionTable apply_null_model(const SessionTable& table, NullModel model, std::uint64_t seed) {
  if (!is_inducement_model(model))
    throw std::invalid_argument("model '" + std::string(to_string(model)) +
                                "' shuffles contact sequences, not session tables");
  Rng rng(seed);
  SessionTable out;
  switch (model) {
  case NullModel::kOriginal:
    out = table;
    out.canonicalize();
    break;
  case NullModel::kLnTn:
    out = grouped_shuffle_field(table, GroupKey::kNode, ShuffleField::kTimePair, rng);
    break;
  case NullModel::kTlLn:
    out = grouped_shuffle_field(table, GroupKey::kLocation, ShuffleField::kNode, rng);
    break;
  case NullModel::kLn:
    out = global_shuffle_field(table, ShuffleField::kTimePair, rng);
    break;
  case NullModel::kTn:
    out = global_shuffle_field(table, ShuffleField::kLocation, rng);
    break;
  case NullModel::kTl:
    out = global_shuffle_field(table, ShuffleField::kNode, rng);
    break;
  case NullModel::kEmpty:
    // locations first, then nodes, both from the one stream
    out = global_shuffle_field(table, ShuffleField::kLocation, rng);
    out = global_shuffle_field(out, ShuffleField::kNode, rng);
    break;
  default:
    break;
  }
  out.provenance = std::string(to_string(model));
  out.rng_seed = seed;
  return out;
}

} // namespace coloc
