// Priority functions alpha from the family Phi: non-decreasing, positive,
// with sum of reciprocals certified below 1. The single-tree constructions
// consume these; the certificate is an exact rational partial sum.
#pragma once

#include <vector>

#include "priomet/errors.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct PriorityFunction {
  std::vector<Scalar> alpha;  // alpha[j-1] = alpha(j), j = 1..n_max
  Scalar partial_sum;         // sum of 1/alpha(j) for j = 1..n_max, < 1

  int n_max() const { return static_cast<int>(alpha.size()); }
  const Scalar& at(int j) const { return alpha[j - 1]; }
};

/// Certifies monotonicity, positivity, and partial sum < 1; throws
/// ValidationError(NotMonotone | SumAtLeastOne) otherwise.
PriorityFunction validate_priority_function(std::vector<Scalar> values, int n);

/// The default family member: c * j * log2(j+1) * (log2 log2 (j+3))^1.1,
/// each factor evaluated at fixed precision with upward rounding (so the
/// values are honest rationals and exactly certifiable), and c the smallest
/// power of two making the partial sum over 1..n drop below 1.
PriorityFunction default_alpha(int n);

}  // namespace priomet
