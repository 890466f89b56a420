#pragma once

// Shared fixtures and independent oracles. Every oracle here recomputes its
// answer from the definition, touching none of the production code paths it
// checks: contacts by the O(n^2) pairwise rule, components by BFS,
// distributions by direct multiset comparison.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coloc/graph.hpp"
#include "coloc/rng.hpp"
#include "coloc/types.hpp"

namespace test_support {

inline coloc::SessionTable random_table(coloc::Rng& rng, int records, int nodes, int locations,
                                        std::int64_t span = 86400, std::int64_t max_dur = 3600) {
  coloc::SessionTable table;
  table.records.reserve(static_cast<std::size_t>(records));
  for (int i = 0; i < records; ++i) {
    const std::int64_t start = static_cast<std::int64_t>(rng.below(
        static_cast<std::uint64_t>(span)));
    const std::int64_t dur = 1 + static_cast<std::int64_t>(rng.below(
        static_cast<std::uint64_t>(max_dur)));
    table.records.push_back(
        {"n" + std::to_string(rng.below(static_cast<std::uint64_t>(nodes))), start,
         start + dur, "L" + std::to_string(rng.below(static_cast<std::uint64_t>(locations))),
         "test"});
  }
  table.canonicalize();
  return table;
}

// O(n^2) all-pairs contact oracle: same location, positive-measure overlap.
inline coloc::ContactSequence brute_force_contacts(const coloc::SessionTable& table) {
  coloc::ContactSequence out;
  const auto& r = table.records;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) {
      if (r[i].location != r[j].location)
        continue;
      const std::int64_t lo = std::max(r[i].start, r[j].start);
      const std::int64_t hi = std::min(*r[i].end, *r[j].end);
      if (lo >= hi)
        continue;
      if (r[i].node == r[j].node) {
        ++out.imaginary_discarded;
        continue;
      }
      const auto [a, b] = coloc::canonical_pair(r[i].node, r[j].node);
      out.events.push_back({a, b, lo, r[i].location});
    }
  out.sort_events();
  return out;
}

// BFS component oracle; components sorted internally and by smallest member.
inline std::vector<std::vector<std::string>> bfs_components(const coloc::AggregatedGraph& g) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& n : g.nodes)
    adj[n];
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::set<std::string> seen;
  std::vector<std::vector<std::string>> components;
  for (const auto& [start, ignored] : adj) {
    if (seen.count(start))
      continue;
    std::vector<std::string> comp;
    std::queue<std::string> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      std::string v = q.front();
      q.pop();
      comp.push_back(v);
      for (const auto& w : adj[v])
        if (seen.insert(w).second)
          q.push(w);
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end());
  return components;
}

inline std::vector<std::string> bfs_largest_component(const coloc::AggregatedGraph& g) {
  auto comps = bfs_components(g);
  std::vector<std::string> best;
  for (auto& c : comps)
    if (c.size() > best.size()) // first-in-sorted-order wins ties
      best = c;
  return best;
}

// field multisets, sorted for equality comparison
inline std::vector<std::string> nodes_of(const coloc::SessionTable& t) {
  std::vector<std::string> v;
  for (const auto& r : t.records)
    v.push_back(r.node);
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<std::string> locations_of(const coloc::SessionTable& t) {
  std::vector<std::string> v;
  for (const auto& r : t.records)
    v.push_back(r.location);
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<std::pair<std::int64_t, std::int64_t>> time_pairs_of(
    const coloc::SessionTable& t) {
  std::vector<std::pair<std::int64_t, std::int64_t>> v;
  for (const auto& r : t.records)
    v.emplace_back(r.start, r.end.value_or(-1));
  std::sort(v.begin(), v.end());
  return v;
}

// retained-correlation record-pair multisets
inline std::vector<std::pair<std::string, std::string>> ln_pairs(const coloc::SessionTable& t) {
  std::vector<std::pair<std::string, std::string>> v;
  for (const auto& r : t.records)
    v.emplace_back(r.node, r.location);
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<std::tuple<std::string, std::int64_t, std::int64_t>> tn_pairs(
    const coloc::SessionTable& t) {
  std::vector<std::tuple<std::string, std::int64_t, std::int64_t>> v;
  for (const auto& r : t.records)
    v.emplace_back(r.node, r.start, r.end.value_or(-1));
  std::sort(v.begin(), v.end());
  return v;
}

inline std::vector<std::tuple<std::int64_t, std::int64_t, std::string>> tl_pairs(
    const coloc::SessionTable& t) {
  std::vector<std::tuple<std::int64_t, std::int64_t, std::string>> v;
  for (const auto& r : t.records)
    v.emplace_back(r.start, r.end.value_or(-1), r.location);
  std::sort(v.begin(), v.end());
  return v;
}

// chi-squared statistic against the uniform expectation
inline double chi_squared_uniform(const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (auto c : counts)
    total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// connected simple graph: a random spanning tree plus extra random edges
inline coloc::AggregatedGraph random_connected_graph(coloc::Rng& rng, int n, int extra_edges) {
  coloc::AggregatedGraph g;
  for (int i = 0; i < n; ++i)
    g.nodes.push_back("v" + std::to_string(i));
  std::sort(g.nodes.begin(), g.nodes.end());
  std::set<coloc::NodePair> edges;
  for (int i = 1; i < n; ++i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    edges.insert(coloc::canonical_pair("v" + std::to_string(i), "v" + std::to_string(j)));
  }
  for (int k = 0; k < extra_edges; ++k) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (a == b)
      continue;
    edges.insert(coloc::canonical_pair("v" + std::to_string(a), "v" + std::to_string(b)));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

inline std::map<std::string, int> degree_map(const coloc::AggregatedGraph& g) {
  std::map<std::string, int> deg;
  for (const auto& n : g.nodes)
    deg[n] = 0;
  for (const auto& [a, b] : g.edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

} // namespace test_support
