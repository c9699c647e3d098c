#pragma once

#include <vector>

#include "cachesim/popularity.hpp"
#include "cachesim/system_model.hpp"

namespace cachesim {

/// Requests on the left, caches on the right. Stores left adjacency only
/// (0-based, each list ascending); an edge (r, s) exists iff cache s+1
/// stores the file requested by r.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::vector<int>> adjacency;
};

/// Builds the delivery graph: request r is adjacent to every cache holding
/// its file (the file's replica list).
BipartiteGraph build_request_graph(const RequestBatch& batch,
                                   const PlacementMap& placement);

/// Maximum-cardinality matching via Hopcroft-Karp, O(E * sqrt(V)).
/// Returns match[r] = right index or -1. Deterministic given adjacency
/// order: BFS/DFS phases scan vertices and edges in ascending order.
std::vector<int> max_matching(const BipartiteGraph& graph);

int matching_cardinality(const std::vector<int>& match);

/// Exhaustive maximum-matching cardinality by bitmask DP. Test / verify
/// oracle only; throws ConfigError if either side exceeds 12 vertices.
int brute_force_max_matching(const BipartiteGraph& graph);

}  // namespace cachesim
