#include <doctest.h>

#include <algorithm>

#include "cachesim/errors.hpp"
#include "cachesim/matching.hpp"
#include "cachesim/rng.hpp"

using namespace cachesim;

namespace {

BipartiteGraph random_graph(Xoshiro256ss& rng, int max_left, int max_right,
                            double edge_probability) {
  BipartiteGraph graph;
  graph.left_count = static_cast<int>(rng.next_below(max_left + 1));
  graph.right_count = static_cast<int>(rng.next_below(max_right + 1));
  graph.adjacency.resize(graph.left_count);
  for (auto& edges : graph.adjacency)
    for (int w = 0; w < graph.right_count; ++w)
      if (rng.next_double() < edge_probability) edges.push_back(w);
  return graph;
}

// Matches each request to its first idle neighbor, in order.
int greedy_matching_cardinality(const BipartiteGraph& graph) {
  std::vector<char> used(graph.right_count, 0);
  int matched = 0;
  for (const auto& edges : graph.adjacency)
    for (int w : edges)
      if (!used[w]) {
        used[w] = 1;
        ++matched;
        break;
      }
  return matched;
}

bool is_valid_matching(const BipartiteGraph& graph, const std::vector<int>& match) {
  std::vector<char> used(graph.right_count, 0);
  for (int v = 0; v < graph.left_count; ++v) {
    const int w = match[v];
    if (w < 0) continue;
    if (used[w]) return false;
    used[w] = 1;
    if (std::find(graph.adjacency[v].begin(), graph.adjacency[v].end(), w) ==
        graph.adjacency[v].end())
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("request graph edges follow the replica lists") {
  const StorageProfile profile = make_profile({1, 1, 1, 1});
  PlacementMap placement(profile, 8);
  placement.add(8, 1);  // only file h is cached, on cache 1

  RequestBatch batch;
  batch.requests = {8, 7, 7};
  batch.counts.assign(8, 0);
  batch.counts[7] = 1;
  batch.counts[6] = 2;

  const BipartiteGraph graph = build_request_graph(batch, placement);
  CHECK(graph.left_count == 3);
  CHECK(graph.right_count == 4);
  CHECK(graph.adjacency[0] == std::vector<int>{0});
  CHECK(graph.adjacency[1].empty());
  CHECK(graph.adjacency[2].empty());

  CHECK(matching_cardinality(max_matching(graph)) == 1);
}

TEST_CASE("empty batch yields a graph without left vertices") {
  const StorageProfile profile = make_profile({2, 2});
  PlacementMap placement(profile, 3);
  RequestBatch batch;
  batch.counts.assign(3, 0);
  const BipartiteGraph graph = build_request_graph(batch, placement);
  CHECK(graph.left_count == 0);
  CHECK(max_matching(graph).empty());
}

TEST_CASE("fully replicated file is adjacent to every cache") {
  const int m = 6;
  const StorageProfile profile = make_rich_poor_profile(m, m, 2);
  PlacementMap placement(profile, 2);
  for (int cache = 1; cache <= m; ++cache) placement.add(1, cache);
  RequestBatch batch;
  batch.requests = {1};
  batch.counts = {1, 0};
  const BipartiteGraph graph = build_request_graph(batch, placement);
  CHECK(graph.adjacency[0].size() == static_cast<std::size_t>(m));
}

TEST_CASE("perfect matching on the 3x3 biclique") {
  BipartiteGraph graph;
  graph.left_count = graph.right_count = 3;
  graph.adjacency = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
  CHECK(matching_cardinality(max_matching(graph)) == 3);
  CHECK(brute_force_max_matching(graph) == 3);
}

TEST_CASE("brute force oracle basics") {
  BipartiteGraph empty;
  CHECK(brute_force_max_matching(empty) == 0);

  BipartiteGraph single;
  single.left_count = single.right_count = 1;
  single.adjacency = {{0}};
  CHECK(brute_force_max_matching(single) == 1);

  BipartiteGraph too_big;
  too_big.left_count = 13;
  too_big.right_count = 2;
  too_big.adjacency.resize(13);
  CHECK_THROWS_AS(brute_force_max_matching(too_big), ConfigError);
}

TEST_CASE("hopcroft-karp equals the exhaustive oracle on 500 random graphs") {
  Xoshiro256ss rng(2024);
  for (int i = 0; i < 500; ++i) {
    const BipartiteGraph graph = random_graph(rng, 8, 8, 0.35);
    const std::vector<int> match = max_matching(graph);
    CAPTURE(i);
    REQUIRE(is_valid_matching(graph, match));
    REQUIRE(matching_cardinality(match) == brute_force_max_matching(graph));
  }
}

TEST_CASE("maximum matching dominates the greedy matching") {
  Xoshiro256ss rng(555);
  for (int i = 0; i < 200; ++i) {
    const BipartiteGraph graph = random_graph(rng, 10, 10, 0.3);
    REQUIRE(matching_cardinality(max_matching(graph)) >=
            greedy_matching_cardinality(graph));
  }
}

TEST_CASE("matching is deterministic for a fixed graph") {
  Xoshiro256ss rng(31);
  const BipartiteGraph graph = random_graph(rng, 8, 8, 0.4);
  CHECK(max_matching(graph) == max_matching(graph));
}
