// Edge-weighted graphs and trees with exact weights, shortest-path oracles,
// and the tree-path machinery the folding code builds on.
#pragma once

#include <vector>

#include "priomet/errors.hpp"
#include "priomet/metric.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct Edge {
  int u = 0;
  int v = 0;
  Scalar w;
};

struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;

  std::vector<std::vector<std::pair<int, int>>> adjacency() const;  // (neighbor, edge idx)
};

/// Rejects self-loops and non-positive weights, dedupes parallel edges
/// keeping the minimum weight, and requires connectivity.
WeightedGraph validate_graph(int n, std::vector<Edge> edges);

bool is_connected(int n, const std::vector<Edge>& edges);

/// All-pairs shortest-path metric via per-source Dijkstra, exact arithmetic.
MetricSpace shortest_path_metric(const WeightedGraph& g);

/// Single-source shortest paths on an explicit adjacency restriction.
/// active[v] == 0 vertices are skipped entirely. parent[v] = -1 when
/// unreached or v == source. Deterministic: ties resolve to the smallest
/// predecessor id.
struct SsspResult {
  std::vector<Scalar> dist;
  std::vector<char> reached;
  std::vector<int> parent;
};
SsspResult dijkstra(const WeightedGraph& g, int source, const std::vector<char>* active = nullptr);

struct WeightedTree {
  int n = 0;
  std::vector<char> steiner;  // per-vertex flag; real vertices carry the metric's points
  std::vector<Edge> edges;

  int real_count() const;
  std::vector<std::vector<std::pair<int, int>>> adjacency() const;
  /// Exact distances from src to every vertex.
  std::vector<Scalar> distances_from(int src) const;
  /// Vertex sequence of the unique src..dst path (inclusive).
  std::vector<int> path(int src, int dst) const;
};

/// Checks tree shape (connected, acyclic, positive weights). When strict,
/// also rejects Steiner vertices of degree < 2; folding outputs legitimately
/// contain degree-1 Steiner folding points, so they validate non-strict.
WeightedTree validate_tree(int n, std::vector<char> steiner, std::vector<Edge> edges,
                           bool strict = false);

/// Metric restricted to real vertices, in increasing vertex-id order;
/// also reports which tree vertex each metric point is.
std::pair<MetricSpace, std::vector<int>> tree_metric(const WeightedTree& t);

}  // namespace priomet
