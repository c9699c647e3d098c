#include "cachesim/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "cachesim/errors.hpp"

namespace cachesim {

BipartiteGraph build_request_graph(const RequestBatch& batch,
                                   const PlacementMap& placement) {
  BipartiteGraph graph;
  graph.left_count = batch.size();
  graph.right_count = placement.cache_count();
  graph.adjacency.resize(graph.left_count);
  for (int r = 0; r < graph.left_count; ++r) {
    const auto& caches = placement.replicas(batch.requests[r]);
    graph.adjacency[r].reserve(caches.size());
    for (int cache : caches) graph.adjacency[r].push_back(cache - 1);
  }
  return graph;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& graph)
      : graph_(graph),
        match_left_(graph.left_count, -1),
        match_right_(graph.right_count, -1),
        layer_(graph.left_count, kInf) {}

  std::vector<int> run() {
    while (bfs_layers()) {
      for (int v = 0; v < graph_.left_count; ++v)
        if (match_left_[v] == -1) augment(v);
    }
    return match_left_;
  }

 private:
  // Layers free left vertices at depth 0 and alternates unmatched/matched
  // edges; true iff some augmenting path exists.
  bool bfs_layers() {
    std::queue<int> frontier;
    for (int v = 0; v < graph_.left_count; ++v) {
      if (match_left_[v] == -1) {
        layer_[v] = 0;
        frontier.push(v);
      } else {
        layer_[v] = kInf;
      }
    }
    bool reachable_free_right = false;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int w : graph_.adjacency[v]) {
        const int next = match_right_[w];
        if (next == -1) {
          reachable_free_right = true;
        } else if (layer_[next] == kInf) {
          layer_[next] = layer_[v] + 1;
          frontier.push(next);
        }
      }
    }
    return reachable_free_right;
  }

  bool augment(int v) {
    for (int w : graph_.adjacency[v]) {
      const int next = match_right_[w];
      if (next == -1 || (layer_[next] == layer_[v] + 1 && augment(next))) {
        match_left_[v] = w;
        match_right_[w] = v;
        return true;
      }
    }
    layer_[v] = kInf;  // dead end for this phase
    return false;
  }

  const BipartiteGraph& graph_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> layer_;
};

}  // namespace

std::vector<int> max_matching(const BipartiteGraph& graph) {
  return HopcroftKarp(graph).run();
}

int matching_cardinality(const std::vector<int>& match) {
  return static_cast<int>(
      std::count_if(match.begin(), match.end(), [](int w) { return w >= 0; }));
}

int brute_force_max_matching(const BipartiteGraph& graph) {
  if (graph.left_count > 12 || graph.right_count > 12)
    throw ConfigError("brute force matching oracle limited to 12x12 graphs");
  const int masks = 1 << graph.right_count;
  // best[mask] = max matching among left vertices processed so far with
  // right set `mask` already used; processed back-to-front.
  std::vector<int> best(masks, 0), next(masks, 0);
  for (int v = graph.left_count - 1; v >= 0; --v) {
    for (int mask = 0; mask < masks; ++mask) {
      int value = best[mask];  // leave v unmatched
      for (int w : graph.adjacency[v])
        if (!(mask & (1 << w))) value = std::max(value, 1 + best[mask | (1 << w)]);
      next[mask] = value;
    }
    std::swap(best, next);
  }
  return best[0];
}

}  // namespace cachesim
