#pragma once

#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "coloc/rng.hpp"
#include "coloc/types.hpp"

namespace coloc {

/// Static simple graph aggregated from contact events: no self-loops, no
/// multi-edges. Both vectors are sorted and duplicate-free.
struct AggregatedGraph {
  std::vector<std::string> nodes;
  std::vector<NodePair> edges;

  friend bool operator==(const AggregatedGraph&, const AggregatedGraph&) = default;
};

/// Union-find with union by size and path compression.
class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    int r = v;
    while (parent_[r] != r)
      r = parent_[r];
    while (parent_[v] != r) {
      int next = parent_[v];
      parent_[v] = r;
      v = next;
    }
    return r;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    if (size_[a] < size_[b])
      std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::size_t component_size(int v) { return size_[find(v)]; }

private:
  std::vector<int> parent_;
  std::vector<std::size_t> size_;
};

/// Nodes and deduplicated edges from all events with t0 <= t_start <= t1.
AggregatedGraph aggregate(const ContactSequence& seq, std::int64_t t0, std::int64_t t1);

/// Node set of the maximum-cardinality connected component, sorted. Size
/// ties break toward the component containing the lexicographically
/// smallest node id. Empty graph yields an empty set.
std::vector<std::string> largest_connected_component(const AggregatedGraph& g);

bool is_connected(const AggregatedGraph& g);

/// Degree-preserving rewire via connectivity-preserving double-edge swaps:
/// accept up to swap_factor * |E| swaps that keep the graph simple,
/// committing them in windows that are verified connected and reverted
/// (window halved) otherwise, so every committed state is connected. An
/// attempt cap bounds rigid graphs like stars, which admit no valid swap
/// and come back unchanged. Throws std::invalid_argument if the input is
/// disconnected. Graphs with fewer than two edges are returned unchanged.
AggregatedGraph configuration_rewire(const AggregatedGraph& g, Rng& rng,
                                     std::size_t swap_factor = 10);

/// Edge-list export: `node_a,node_b` rows.
void write_edge_list_csv(const AggregatedGraph& g, std::ostream& out);

} // namespace coloc
