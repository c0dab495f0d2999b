// Path folding, K-folding, centroid separators, and the isometric embedding
// of tree metrics into ell_infinity with prioritized dimension.
//
// Folding a shortest u-v path of length t identifies the point at distance
// a from u with the point at distance t-a, for every a <= t/2; the midpoint
// is the folding point. Positions that fall strictly inside an edge become
// Steiner vertices. Folding never increases distances, keeps the tree a
// tree, and only pairs whose path crosses the folding point (meets the
// interiors of both half-paths) can get closer.
#pragma once

#include <array>
#include <vector>

#include "priomet/embedding.hpp"
#include "priomet/graph.hpp"
#include "priomet/metric.hpp"

namespace priomet {

struct FoldResult {
  WeightedTree folded_tree;
  int folding_point = -1;  // id in folded_tree (possibly Steiner)
  std::vector<int> merged;  // input vertex -> folded_tree id

  // Audit hooks. `subdivided` is the input tree with Steiner vertices
  // inserted at every mirrored position; input vertex ids are preserved
  // as a prefix. Distances in folded_tree equal shortest paths in
  // `subdivided` augmented with zero-weight edges between each
  // identified pair (the zero-edge oracle).
  WeightedTree subdivided;
  int folding_point_subdivided = -1;
  std::vector<int> sub_to_folded;                    // subdivided id -> folded id
  std::vector<std::pair<int, int>> identified_pairs; // subdivided ids, position q with t-q
  std::vector<int> path_vertices;                    // u..v in subdivided, in order
  std::vector<Scalar> path_positions;                // distance from u per path vertex
  Scalar path_length;
};

/// Folds the unique u-v path. Errors: SameVertex.
FoldResult fold_path(const WeightedTree& t, int u, int v);

/// True iff the u-v path in the pre-fold tree meets the interiors of both
/// halves of the folded path; u, v are vertices of the tree the fold was
/// applied to (ids valid in fold.subdivided).
bool crosses(const WeightedTree& t, int u, int v, const FoldResult& fold);

struct KFoldingRecord {
  WeightedTree final_tree;
  int merged_vertex = -1;             // z: common representative of K
  std::vector<int> merged;            // input vertex -> final_tree id
  std::vector<FoldResult> steps;      // fold r applies to the tree produced by fold r-1
  std::vector<int> folding_points;    // X, as final_tree ids (one per step)
  std::vector<std::array<int, 3>> trace;  // (u, v, folding point) per step;
                                          // u,v in the step's input tree, point in its folded tree
};

/// Merges all of K into one vertex via |K|-1 folds. Pairing rule: always
/// fold the two unmerged K-representatives at minimum tree distance, ties
/// to the smallest id pair. Errors: EmptyTerminalSet.
KFoldingRecord k_folding(const WeightedTree& t, std::vector<int> K);

struct SeparatorSplit {
  std::vector<int> side1;  // vertex sets; side1 and side2 cover the tree
  std::vector<int> side2;  // and intersect exactly in {shared}
  int shared = -1;
  int k1 = 0;  // |K| vertices inside each side (shared counted on both)
  int k2 = 0;
};

/// Centroid-style separator: each side holds at most ceil(2|K|/3) of K.
SeparatorSplit tree_separator(const WeightedTree& t, const std::vector<int>& K);

struct TerminalEmbedResult {
  Embedding embedding;  // one row per vertex of t (Steiner included)
  KFoldingRecord record;
};

/// Terminal-set construction: a non-expanding embedding f of t and a
/// K-folding t_hat such that every pair (u,v) satisfies either
/// ||f(u)-f(v)||_inf = d_t(u,v) or d_that(u,v) = d_t(u,v). Dimension is
/// O(log |K|); the measured dimension is checked against
/// 4*ceil(log2 max(|K|-1,1)) + 1 and the build aborts past +4 slack.
TerminalEmbedResult embed_terminal_set(const WeightedTree& t, const std::vector<int>& K);

struct TreeEmbeddingResult {
  Embedding embedding;            // rows indexed like `metric` points
  MetricSpace metric;             // tree metric on real vertices (increasing id)
  PriorityOrdering metric_order;  // input ranking translated to metric indices
  std::vector<int> real_vertices; // metric index -> tree vertex id
  std::vector<int> level_dims;    // coordinate block width per level
  std::vector<int> level_of_rank; // 1-based level index per rank
};

/// Full construction: exact isometry on real vertices with all nonzeros
/// of rank j confined to the level blocks up to j's level.
/// ord.perm lists the real vertex ids in priority order.
/// Errors: OrderingMismatch.
TreeEmbeddingResult prioritized_tree_embedding(const WeightedTree& t,
                                               const PriorityOrdering& ord);

}  // namespace priomet
