#include "coloc/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace coloc {

namespace {

// interned-node view shared by the component and rewiring routines
struct Interned {
  std::vector<std::string> names;              // == g.nodes (sorted)
  std::vector<std::pair<int, int>> edges;      // canonical a < b
};

Interned intern(const AggregatedGraph& g) {
  Interned out;
  out.names = g.nodes;
  std::unordered_map<std::string_view, int> ids;
  ids.reserve(out.names.size());
  for (int i = 0; i < static_cast<int>(out.names.size()); ++i)
    ids.emplace(out.names[i], i);
  out.edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    const int ia = ids.at(a);
    const int ib = ids.at(b);
    out.edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  return out;
}

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

bool components_connected(std::size_t n_nodes, const std::vector<std::pair<int, int>>& edges) {
  if (n_nodes <= 1)
    return true;
  UnionFind uf(n_nodes);
  std::size_t merges = 0;
  for (const auto& [a, b] : edges)
    if (uf.unite(a, b))
      ++merges;
  return merges == n_nodes - 1;
}

} // namespace

AggregatedGraph aggregate(const ContactSequence& seq, std::int64_t t0, std::int64_t t1) {
  if (t0 > t1)
    throw std::invalid_argument("aggregate: t0 > t1");
  AggregatedGraph g;
  const auto lo = std::lower_bound(
      seq.events.begin(), seq.events.end(), t0,
      [](const ContactEvent& e, std::int64_t v) { return e.t_start < v; });
  const auto hi = std::upper_bound(
      seq.events.begin(), seq.events.end(), t1,
      [](std::int64_t v, const ContactEvent& e) { return v < e.t_start; });
  for (auto it = lo; it != hi; ++it) {
    g.nodes.push_back(it->node_a);
    g.nodes.push_back(it->node_b);
    g.edges.emplace_back(it->node_a, it->node_b);
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

std::vector<std::string> largest_connected_component(const AggregatedGraph& g) {
  if (g.nodes.empty())
    return {};
  auto in = intern(g);
  UnionFind uf(in.names.size());
  for (const auto& [a, b] : in.edges)
    uf.unite(a, b);

  // nodes are sorted, so the first index seen per root is that component's
  // lexicographic minimum; ties on size resolve toward the smaller one
  std::unordered_map<int, std::size_t> size_of_root;
  std::unordered_map<int, int> first_seen;
  for (int v = 0; v < static_cast<int>(in.names.size()); ++v) {
    const int r = uf.find(v);
    ++size_of_root[r];
    first_seen.emplace(r, v);
  }
  int best_root = -1;
  std::size_t best_size = 0;
  int best_first = 0;
  for (int v = 0; v < static_cast<int>(in.names.size()); ++v) {
    const int r = uf.find(v);
    if (first_seen.at(r) != v)
      continue; // visit each component once, in first-seen order
    const std::size_t s = size_of_root.at(r);
    if (s > best_size || (s == best_size && v < best_first)) {
      best_root = r;
      best_size = s;
      best_first = v;
    }
  }
  std::vector<std::string> out;
  out.reserve(best_size);
  for (int v = 0; v < static_cast<int>(in.names.size()); ++v)
    if (uf.find(v) == best_root)
      out.push_back(in.names[v]);
  return out;
}

bool is_connected(const AggregatedGraph& g) {
  auto in = intern(g);
  return components_connected(in.names.size(), in.edges);
}

AggregatedGraph configuration_rewire(const AggregatedGraph& g, Rng& rng,
                                     std::size_t swap_factor) {
  if (g.edges.size() < 2)
    return g;
  const auto original = intern(g);
  const std::size_t n_nodes = original.names.size();
  if (!components_connected(n_nodes, original.edges))
    throw std::invalid_argument("configuration_rewire: input graph is not connected");

  const std::size_t n_edges = original.edges.size();
  const std::uint64_t target_swaps = static_cast<std::uint64_t>(swap_factor) * n_edges;
  // rigid graphs (e.g. stars) admit no valid swap; the attempt cap keeps
  // the walk finite for them
  const std::uint64_t attempt_cap = std::max<std::uint64_t>(100 * n_edges, 1000);

  auto edges = original.edges;
  std::unordered_set<std::uint64_t> present;
  present.reserve(n_edges * 2);
  for (const auto& [a, b] : edges)
    present.insert(edge_key(a, b));

  // simple swaps applied in windows: commit a window only when the result
  // stays connected, otherwise revert it in reverse order and halve the
  // window, so `edges` never leaves the connected state space
  struct Applied {
    std::size_t i, j;
    std::pair<int, int> old_i, old_j;
  };
  std::vector<Applied> window_log;
  std::uint64_t committed = 0, attempts = 0, window = 1;
  while (committed < target_swaps && attempts < attempt_cap) {
    window_log.clear();
    while (window_log.size() < window && committed + window_log.size() < target_swaps &&
           attempts < attempt_cap) {
      ++attempts;
      const std::size_t i = rng.below(n_edges);
      const std::size_t j = rng.below(n_edges);
      if (i == j)
        continue;
      auto [u, v] = edges[i];
      auto [x, y] = edges[j];
      if (rng.below(2) == 1)
        std::swap(x, y);
      // proposed replacement: u-x and v-y
      if (u == x || v == y)
        continue;
      const int a1 = std::min(u, x), b1 = std::max(u, x);
      const int a2 = std::min(v, y), b2 = std::max(v, y);
      if (present.count(edge_key(a1, b1)) || present.count(edge_key(a2, b2)))
        continue;
      window_log.push_back({i, j, edges[i], edges[j]});
      present.erase(edge_key(edges[i].first, edges[i].second));
      present.erase(edge_key(edges[j].first, edges[j].second));
      present.insert(edge_key(a1, b1));
      present.insert(edge_key(a2, b2));
      edges[i] = {a1, b1};
      edges[j] = {a2, b2};
    }
    if (window_log.empty())
      break; // attempt budget exhausted with no swap found
    if (components_connected(n_nodes, edges)) {
      committed += window_log.size();
      window = std::min<std::uint64_t>(window * 2, n_edges);
    } else {
      for (auto it = window_log.rbegin(); it != window_log.rend(); ++it) {
        present.erase(edge_key(edges[it->i].first, edges[it->i].second));
        present.erase(edge_key(edges[it->j].first, edges[it->j].second));
        present.insert(edge_key(it->old_i.first, it->old_i.second));
        present.insert(edge_key(it->old_j.first, it->old_j.second));
        edges[it->i] = it->old_i;
        edges[it->j] = it->old_j;
      }
      window = std::max<std::uint64_t>(1, window / 2);
    }
  }

  AggregatedGraph out;
  out.nodes = g.nodes;
  out.edges.reserve(n_edges);
  for (const auto& [a, b] : edges)
    out.edges.emplace_back(original.names[a], original.names[b]);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

void write_edge_list_csv(const AggregatedGraph& g, std::ostream& out) {
  out << "node_a,node_b\n";
  for (const auto& [a, b] : g.edges)
    out << a << ',' << b << '\n';
}

} // namespace coloc
