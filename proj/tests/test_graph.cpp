#include "doctest.h"

#include <sstream>

#include "coloc/graph.hpp"

#include "test_support.hpp"

using namespace coloc;
namespace ts = test_support;

namespace {

AggregatedGraph graph_of(std::initializer_list<std::pair<const char*, const char*>> edges) {
  AggregatedGraph g;
  std::set<std::string> nodes;
  for (const auto& [a, b] : edges) {
    nodes.insert(a);
    nodes.insert(b);
    g.edges.push_back(canonical_pair(a, b));
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

} // namespace

TEST_CASE("aggregation collapses duplicate pairs to one edge") {
  ContactSequence seq;
  seq.events = {{"A", "B", 5, "L"}, {"A", "B", 7, "L"}};
  const AggregatedGraph g = aggregate(seq, 0, 10);
  CHECK(g.nodes == std::vector<std::string>{"A", "B"});
  CHECK(g.edges == std::vector<NodePair>{{"A", "B"}});
}

TEST_CASE("a window excluding all events gives an empty graph") {
  ContactSequence seq;
  seq.events = {{"A", "B", 5, "L"}};
  const AggregatedGraph g = aggregate(seq, 100, 200);
  CHECK(g.nodes.empty());
  CHECK(g.edges.empty());
}

TEST_CASE("window bounds are inclusive on both ends") {
  ContactSequence seq;
  seq.events = {{"A", "B", 5, "L"}, {"C", "D", 10, "L"}};
  const AggregatedGraph g = aggregate(seq, 5, 10);
  CHECK(g.edges.size() == 2);
}

TEST_CASE("edge count matches unique contacts restricted to the window") {
  Rng gen(61);
  ContactSequence seq;
  for (int i = 0; i < 3000; ++i) {
    const auto a = "n" + std::to_string(gen.below(40));
    const auto b = "n" + std::to_string(gen.below(40));
    if (a == b)
      continue;
    const auto [x, y] = canonical_pair(a, b);
    seq.events.push_back({x, y, static_cast<std::int64_t>(gen.below(10000)), "L"});
  }
  seq.sort_events();
  const AggregatedGraph g = aggregate(seq, 0, 5000);
  std::set<NodePair> unique;
  for (const auto& e : seq.events)
    if (e.t_start <= 5000)
      unique.insert({e.node_a, e.node_b});
  CHECK(g.edges.size() == unique.size());
}

TEST_CASE("widening the window never removes nodes or edges") {
  Rng gen(67);
  ContactSequence seq;
  for (int i = 0; i < 500; ++i) {
    const auto [x, y] = canonical_pair("n" + std::to_string(gen.below(20)),
                                       "m" + std::to_string(gen.below(20)));
    seq.events.push_back({x, y, static_cast<std::int64_t>(gen.below(1000)), "L"});
  }
  seq.sort_events();
  const AggregatedGraph narrow = aggregate(seq, 200, 600);
  const AggregatedGraph wide = aggregate(seq, 100, 900);
  for (const auto& n : narrow.nodes)
    CHECK(std::binary_search(wide.nodes.begin(), wide.nodes.end(), n));
  for (const auto& e : narrow.edges)
    CHECK(std::binary_search(wide.edges.begin(), wide.edges.end(), e));
}

TEST_CASE("largest component of a path beats an isolated edge") {
  const AggregatedGraph g = graph_of({{"A", "B"}, {"B", "C"}, {"D", "E"}});
  CHECK(largest_connected_component(g) == std::vector<std::string>{"A", "B", "C"});
}

TEST_CASE("largest component of a connected graph is everything") {
  const AggregatedGraph g = graph_of({{"A", "B"}, {"B", "C"}, {"C", "A"}});
  CHECK(largest_connected_component(g) == g.nodes);
  CHECK(is_connected(g));
}

TEST_CASE("component ties break toward the smaller minimum node id") {
  const AggregatedGraph g = graph_of({{"C", "D"}, {"A", "B"}});
  CHECK(largest_connected_component(g) == std::vector<std::string>{"A", "B"});
}

TEST_CASE("largest component of the empty graph is empty") {
  CHECK(largest_connected_component(AggregatedGraph{}).empty());
}

TEST_CASE("union-find components agree with BFS on a thousand random graphs") {
  Rng gen(71);
  for (int trial = 0; trial < 1000; ++trial) {
    AggregatedGraph g;
    const int n = 2 + static_cast<int>(gen.below(30));
    for (int i = 0; i < n; ++i)
      g.nodes.push_back("v" + std::to_string(i));
    std::sort(g.nodes.begin(), g.nodes.end());
    std::set<NodePair> edges;
    const int m = static_cast<int>(gen.below(static_cast<std::uint64_t>(2 * n)));
    for (int k = 0; k < m; ++k) {
      const auto a = static_cast<int>(gen.below(static_cast<std::uint64_t>(n)));
      const auto b = static_cast<int>(gen.below(static_cast<std::uint64_t>(n)));
      if (a != b)
        edges.insert(canonical_pair("v" + std::to_string(a), "v" + std::to_string(b)));
    }
    g.edges.assign(edges.begin(), edges.end());
    CHECK(largest_connected_component(g) == ts::bfs_largest_component(g));
    CHECK(is_connected(g) == (ts::bfs_components(g).size() <= 1));
  }
}

TEST_CASE("a star graph is rigid under degree-preserving rewiring") {
  const AggregatedGraph star =
      graph_of({{"h", "a"}, {"h", "b"}, {"h", "c"}, {"h", "d"}, {"h", "e"}});
  Rng rng(5);
  const AggregatedGraph rewired = configuration_rewire(star, rng);
  CHECK(rewired.edges == star.edges);
}

TEST_CASE("rewiring a long path stays connected despite the hostile degree sequence") {
  // almost every unconstrained realization of an all-twos degree sequence
  // is a union of disjoint cycles, so this shape stresses the windowed
  // connectivity-preserving walk
  AggregatedGraph path;
  for (int i = 0; i < 60; ++i)
    path.nodes.push_back("v" + std::to_string(i));
  std::sort(path.nodes.begin(), path.nodes.end());
  for (int i = 0; i + 1 < 60; ++i)
    path.edges.push_back(canonical_pair("v" + std::to_string(i), "v" + std::to_string(i + 1)));
  std::sort(path.edges.begin(), path.edges.end());
  for (int trial = 0; trial < 20; ++trial) {
    Rng rng(500 + trial);
    const AggregatedGraph r = configuration_rewire(path, rng);
    CHECK(ts::degree_map(r) == ts::degree_map(path));
    CHECK(ts::bfs_components(r).size() == 1);
  }
}

TEST_CASE("rewiring preserves every degree and stays connected") {
  Rng gen(73);
  for (int trial = 0; trial < 50; ++trial) {
    const AggregatedGraph g = ts::random_connected_graph(gen, 30, 25);
    Rng rng(1000 + trial);
    const AggregatedGraph r = configuration_rewire(g, rng);
    CHECK(ts::degree_map(r) == ts::degree_map(g));
    CHECK(r.edges.size() == g.edges.size());
    CHECK(ts::bfs_components(r).size() == 1);
    // simple: no duplicate edges, no self-loops
    std::set<NodePair> dedup(r.edges.begin(), r.edges.end());
    CHECK(dedup.size() == r.edges.size());
    for (const auto& [a, b] : r.edges)
      CHECK(a != b);
  }
}

TEST_CASE("rewiring actually moves edges on a loose graph") {
  Rng gen(79);
  const AggregatedGraph g = ts::random_connected_graph(gen, 40, 60);
  Rng rng(2);
  const AggregatedGraph r = configuration_rewire(g, rng);
  CHECK(r.edges != g.edges);
}

TEST_CASE("rewiring a disconnected input is rejected") {
  const AggregatedGraph g = graph_of({{"A", "B"}, {"C", "D"}});
  Rng rng(1);
  CHECK_THROWS_AS(configuration_rewire(g, rng), std::invalid_argument);
}

TEST_CASE("edge list export is canonical") {
  const AggregatedGraph g = graph_of({{"B", "A"}, {"C", "B"}});
  std::ostringstream out;
  write_edge_list_csv(g, out);
  CHECK(out.str() == "node_a,node_b\nA,B\nB,C\n");
}
