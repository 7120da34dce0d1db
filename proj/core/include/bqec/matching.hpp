#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace bqec {

// Undirected sparse graph with nonnegative edge weights. Self-loops are
// rejected; parallel edges collapse to the minimum weight (keeping that
// edge's tag, an optional caller-side payload).
class WeightedGraph {
 public:
  explicit WeightedGraph(int vertex_count = 0) : adj_(vertex_count) {}

  int vertex_count() const { return static_cast<int>(adj_.size()); }
  void add_edge(int u, int v, double w, int tag = -1);
  void set_boundary(int v);
  bool is_boundary(int v) const;

  struct Neighbor {
    int to;
    double w;
    int tag;
  };
  const std::vector<Neighbor>& neighbors(int v) const { return adj_[v]; }

 private:
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<uint8_t> boundary_;
};

struct ShortestPaths {
  // dist[i][v], parent[i][v] for source index i; parent chains give one
  // representative shortest path with deterministic ties (smallest parent).
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<int>> parent;

  std::vector<int> path(int source_index, int v) const;
};

// Dijkstra from every vertex in "sources"; unreachable pairs get +inf.
ShortestPaths all_pairs_min_paths(const WeightedGraph& graph, const std::vector<int>& sources);

// Exact minimum-weight perfect matching (Edmonds blossom, dense O(n^3)) on a
// complete graph given by a symmetric weight matrix. Weights are rounded to
// a 2^-20 grid internally, so near-ties below that resolution may resolve
// either way; the total weight is exact to ~1e-5 absolute per edge. Returns
// mate[] with mate[u] = v. Throws if n is odd.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<double>>& weights);

}  // namespace bqec
