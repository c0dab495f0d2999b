// Coordinate embeddings into ell_infinity and the per-rank audit reports
// every construction in this library is tested against.
#pragma once

#include <optional>
#include <vector>

#include "priomet/metric.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct Embedding {
  int dim = 0;
  std::vector<std::vector<Scalar>> vectors;  // one row per point, length dim

  int n() const { return static_cast<int>(vectors.size()); }
};

/// Ratio that may be infinite (a pair mapped to the same vector).
struct Ratio {
  bool infinite = false;
  Scalar value;  // meaningful when !infinite

  static Ratio inf() { return Ratio{true, Scalar(0)}; }
  static Ratio of(Scalar v) { return Ratio{false, std::move(v)}; }

  bool operator<(const Ratio& o) const {
    if (infinite != o.infinite) return !infinite;
    if (infinite) return false;
    return value < o.value;
  }
};

struct DistortionReport {
  struct Entry {
    int rank = 0;            // j, 1-based
    int point = 0;           // point id of x_j
    Ratio expansion;         // max ||f(x_j)-f(y)|| / d(x_j,y)
    Ratio contraction;       // max d(x_j,y) / ||f(x_j)-f(y)||
    int witness_expansion = -1;
    int witness_contraction = -1;
  };
  std::vector<Entry> per_j;  // empty entries when n < 2
  Ratio global;              // max over all pairs of max(expansion, contraction)
};

struct DimensionReport {
  std::vector<int> per_j;  // beta(j) = 1 + index of last nonzero coordinate, 0 if none
};

/// Exhaustive pair audit. threads = 0 means hardware concurrency; results
/// are identical for any thread count.
DistortionReport distortion_report(const MetricSpace& m, const Embedding& f,
                                   const PriorityOrdering& ord, unsigned threads = 0);

DimensionReport dimension_report(const Embedding& f, const PriorityOrdering& ord);

/// True when no pair expands: ||f(u)-f(v)|| <= d(u,v) for all u,v.
bool is_non_expansive(const MetricSpace& m, const Embedding& f);

/// True when f is an exact isometry on all pairs.
bool is_isometry(const MetricSpace& m, const Embedding& f);

}  // namespace priomet
