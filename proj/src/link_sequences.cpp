#include "coloc/link_sequences.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace coloc {

std::uint64_t LinkSequenceMap::total_events() const {
  std::uint64_t n = 0;
  for (const auto& [pair, times] : links)
    n += times.size();
  return n;
}

std::vector<std::string> LinkSequenceMap::node_set() const {
  std::vector<std::string> nodes;
  nodes.reserve(links.size() * 2);
  for (const auto& [pair, times] : links) {
    nodes.push_back(pair.first);
    nodes.push_back(pair.second);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

AggregatedGraph LinkSequenceMap::aggregated_graph() const {
  AggregatedGraph g;
  g.nodes = node_set();
  g.edges.reserve(links.size());
  for (const auto& [pair, times] : links)
    g.edges.push_back(pair);
  return g;
}

LinkSequenceMap build_link_sequences(const ContactSequence& seq) {
  LinkSequenceMap out;
  for (const auto& e : seq.events)
    out.links[canonical_pair(e.node_a, e.node_b)].push_back(e.t_start);
  for (auto& [pair, times] : out.links)
    std::sort(times.begin(), times.end());
  return out;
}

namespace {

// Permute the value lists of `in` onto its keys: values[perm[i]] lands on
// key i, with keys enumerated in map order.
LinkSequenceMap reassign(const LinkSequenceMap& in, const std::vector<std::size_t>& perm) {
  std::vector<const std::vector<std::int64_t>*> values;
  values.reserve(in.links.size());
  for (const auto& [pair, times] : in.links)
    values.push_back(&times);
  LinkSequenceMap out;
  std::size_t i = 0;
  auto hint = out.links.end();
  for (const auto& [pair, times] : in.links) {
    hint = out.links.emplace_hint(hint, pair, *values[perm[i]]);
    ++i;
  }
  return out;
}

// Pool every timestamp, shuffle the pool, deal it back out preserving each
// link's count, and re-sort per link.
LinkSequenceMap global_time_shuffle(const LinkSequenceMap& in, Rng& rng) {
  std::vector<std::int64_t> pool;
  pool.reserve(in.total_events());
  for (const auto& [pair, times] : in.links)
    pool.insert(pool.end(), times.begin(), times.end());
  rng.shuffle(pool);
  LinkSequenceMap out;
  std::size_t next = 0;
  auto hint = out.links.end();
  for (const auto& [pair, times] : in.links) {
    std::vector<std::int64_t> assigned(pool.begin() + next, pool.begin() + next + times.size());
    next += times.size();
    std::sort(assigned.begin(), assigned.end());
    hint = out.links.emplace_hint(hint, pair, std::move(assigned));
  }
  return out;
}

} // namespace

LinkSequenceMap shuffle_dcwb(const LinkSequenceMap& in, Rng& rng) {
  // bucket link indices by event count; keys are enumerated in map order so
  // bucket contents are deterministic
  std::map<std::size_t, std::vector<std::size_t>> by_len;
  std::size_t i = 0;
  for (const auto& [pair, times] : in.links)
    by_len[times.size()].push_back(i++);
  std::vector<std::size_t> perm(in.links.size());
  for (auto& [len, members] : by_len) {
    auto targets = members;
    rng.shuffle(targets);
    for (std::size_t k = 0; k < members.size(); ++k)
      perm[members[k]] = targets[k];
  }
  return reassign(in, perm);
}

LinkSequenceMap shuffle_dcb(const LinkSequenceMap& in, Rng& rng) {
  std::vector<std::size_t> perm(in.links.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = i;
  rng.shuffle(perm);
  return reassign(in, perm);
}

LinkSequenceMap shuffle_dcw(const LinkSequenceMap& in, Rng& rng) {
  return global_time_shuffle(in, rng);
}

LinkSequenceMap shuffle_d(const LinkSequenceMap& in, Rng& rng, std::size_t swap_factor) {
  const AggregatedGraph g = in.aggregated_graph();
  if (!is_connected(g))
    throw std::invalid_argument("shuffle_d: aggregated contact graph is not connected");
  const AggregatedGraph rewired = configuration_rewire(g, rng, swap_factor);

  // bijective placement of the original sequences onto the rewired links
  std::vector<const std::vector<std::int64_t>*> values;
  values.reserve(in.links.size());
  for (const auto& [pair, times] : in.links)
    values.push_back(&times);
  std::vector<std::size_t> perm(values.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = i;
  rng.shuffle(perm);

  LinkSequenceMap placed;
  auto hint = placed.links.end();
  for (std::size_t i = 0; i < rewired.edges.size(); ++i)
    hint = placed.links.emplace_hint(hint, rewired.edges[i], *values[perm[i]]);
  return global_time_shuffle(placed, rng);
}

ContactSequence to_contact_sequence(const LinkSequenceMap& in, std::string source_model) {
  ContactSequence out;
  out.source_model = std::move(source_model);
  out.imaginary_discarded = 0;
  out.events.reserve(in.total_events());
  for (const auto& [pair, times] : in.links)
    for (std::int64_t t : times)
      out.events.push_back({pair.first, pair.second, t, kShuffledLocation});
  out.sort_events();
  return out;
}

ContactSequence apply_contact_model(const ContactSequence& seq, NullModel model,
                                    std::uint64_t seed) {
  if (!is_contact_model(model))
    throw std::invalid_argument("apply_contact_model: " + to_string(model) +
                                " is not a contact-shuffle model");
  const LinkSequenceMap base = build_link_sequences(seq);
  Rng rng(seed);
  LinkSequenceMap shuffled;
  switch (model) {
  case NullModel::kDcwb:
    shuffled = shuffle_dcwb(base, rng);
    break;
  case NullModel::kDcb:
    shuffled = shuffle_dcb(base, rng);
    break;
  case NullModel::kDcw:
    shuffled = shuffle_dcw(base, rng);
    break;
  case NullModel::kD:
    shuffled = shuffle_d(base, rng);
    break;
  default:
    throw std::invalid_argument("apply_contact_model: unreachable model");
  }
  return to_contact_sequence(shuffled, to_string(model));
}

} // namespace coloc
