// Prioritized embeddings into a single ultrametric and a single spanning
// tree. Both grow a region until no "bad pair" (one whose distortion budget
// the current scale would bust) is separated; the certified priority
// function alpha makes the total radius growth converge.
#pragma once

#include <vector>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/priority.hpp"

namespace priomet {

/// Separated pair (a,b) is bad iff factor * min(alpha(rank a), alpha(rank b))
/// * d(a,b) < scale. Factor is 2 at ultrametric clusters (scale = diameter)
/// and 128 at petals (scale = cluster radius).
struct BadPairRule {
  Scalar factor;
  Scalar scale;
};

struct UltrametricNode {
  Scalar label;                // 0 exactly at leaves
  std::vector<int> children;   // empty at leaves
  int leaf_point = -1;         // metric point id at leaves
};

struct UltrametricTree {
  std::vector<UltrametricNode> nodes;  // node 0 is the root
  std::vector<int> leaf_of;            // point id -> leaf node id

  /// Leaf-to-leaf distances: label of the least common ancestor.
  MetricSpace leaf_metric() const;
  /// Labels never increase from a node to its descendants.
  bool labels_monotone() const;
};

/// One partition step: grows a ball around u (an endpoint of a diameter
/// pair) in steps of diam/(2 alpha(j)) until no bad pair is separated.
/// Returns (X1, X2) as global point ids; iterations reports the number of
/// radius increments when non-null. Errors: DegenerateDiameter.
std::pair<std::vector<int>, std::vector<int>> grow_ultrametric_partition(
    const MetricSpace& m, const std::vector<int>& cluster, const std::vector<int>& ranks,
    const PriorityFunction& alpha, int u, int v, int* iterations = nullptr);

/// Non-contractive embedding into an ultrametric with priority distortion
/// 2 alpha(j): every separated pair pays exactly the diameter of the
/// cluster separating it.
UltrametricTree build_ultrametric(const MetricSpace& m, const PriorityOrdering& ord,
                                  const PriorityFunction& alpha);

// ---- petal decomposition ----

struct PetalResult {
  std::vector<char> in_petal;       // over g vertex ids (active ones only)
  int petal_center = -1;            // farthest path vertex inside the petal
  std::vector<int> path;            // the fixed t..x shortest path, t first
  std::vector<Scalar> directed_dist;  // d~ from the target in the reweighted digraph
  std::vector<char> directed_reached;
};

/// P(t, r): ball of radius r/2 around t in the path-reweighted directed
/// graph. Edge u->v costs w + d(u,x) - d(v,x), except edges of the fixed
/// t..x shortest path toward x, which cost w/2.
PetalResult petal(const WeightedGraph& g, const std::vector<char>& active, int x, int t,
                  const Scalar& r);

struct CarveResult {
  Scalar radius;
  std::vector<char> in_petal;
  int petal_center = -1;
  std::vector<int> path;  // t..x path of the final petal
  int iterations = 0;
};

/// Grows r_i in steps of rad/(16 alpha(j)) until no 128-rule bad pair is
/// separated; postcondition r_i <= rad/8.
CarveResult carve_petal_radius(const WeightedGraph& g, const std::vector<char>& active,
                               const MetricSpace& global_metric, const std::vector<int>& ranks,
                               const PriorityFunction& alpha, int x, int target,
                               const Scalar& rad);

struct PetalTrace {
  std::vector<int> cluster;  // global vertex ids
  int center = -1;
  int target = -1;
  Scalar radius;                    // rad(X) from the center inside the cluster
  std::vector<Scalar> petal_radii;  // carved r_i
};

struct SpanningTreeResult {
  std::vector<int> edge_indices;    // into the input graph's edge list
  WeightedTree tree;                // same vertex ids as the graph
  std::vector<PetalTrace> clusters; // recursion trace for audits
};

/// Spanning tree with priority distortion O(alpha(j)) (the audited constant
/// is 1024 = 8 * 128). Errors: Disconnected.
SpanningTreeResult petal_decomposition_spanning_tree(const WeightedGraph& g,
                                                     const PriorityOrdering& ord,
                                                     const PriorityFunction& alpha);

}  // namespace priomet
