// Finite metric spaces as exact symmetric distance matrices, plus the
// priority orderings that rank their points.
#pragma once

#include <optional>
#include <vector>

#include "priomet/errors.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct MetricSpace {
  int n = 0;
  std::vector<Scalar> dist;  // row-major n*n

  const Scalar& d(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
  Scalar& d(int i, int j) { return dist[static_cast<size_t>(i) * n + j]; }

  /// Largest pairwise distance (0 for n <= 1).
  Scalar diameter() const;

  /// Row-major int64 mirror when every entry is an integer fitting in
  /// 62 bits; lets audits run their inner loops on machine words while
  /// staying exact.
  std::optional<std::vector<long long>> int64_mirror() const;
};

/// Checks all metric axioms (including the full triangle inequality) and
/// throws ValidationError with the witnessing triple on the first failure.
MetricSpace validate_metric(int n, std::vector<Scalar> dist);

/// perm[j-1] is the point id ranked j-th (rank 1 = highest priority).
struct PriorityOrdering {
  std::vector<int> perm;

  int n() const { return static_cast<int>(perm.size()); }
  int point_of_rank(int j) const { return perm[j - 1]; }
  /// rank_of[point] in 1..n.
  std::vector<int> ranks() const;
};

PriorityOrdering validate_ordering(std::vector<int> perm, int n);
PriorityOrdering identity_ordering(int n);

/// ell_infinity distance between equal-length coordinate vectors.
Scalar linf_distance(const std::vector<Scalar>& u, const std::vector<Scalar>& v);

/// Sub-metric induced on the given points (in the given order).
MetricSpace induced_metric(const MetricSpace& m, const std::vector<int>& points);

}  // namespace priomet
