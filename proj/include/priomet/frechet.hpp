// Randomized Frechet embeddings of general metrics into ell_infinity:
// a distortion-prioritized variant and a dimension-prioritized variant.
// High-priority points receive many copies in a semimetric (X', d'), so
// sampled coordinate sets are likely to contain them and their coordinates
// evaluate to zero. All sampling is driven by per-set derived streams and
// exact 64-bit thresholds, so outputs are bit-reproducible.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "priomet/embedding.hpp"
#include "priomet/metric.hpp"
#include "priomet/scalar.hpp"

namespace priomet {

struct SampleConfig {
  int k = 1;
  int c = 16;
  std::uint64_t seed = 0;
};

struct CopiedSpace {
  int n = 0;
  std::vector<long long> multiplicity;  // per rank j (index j-1), non-increasing
  long long total = 0;                  // N, the copy count of (X', d')
};

/// Distortion variant: ranks in (n^((i-1)/k), n^(i/k)] get
/// ceil((2^k n)^(1-i/k)) copies; N <= 2^k n + n.
CopiedSpace build_copied_space_distortion(const MetricSpace& m, const PriorityOrdering& ord,
                                          int k);

/// Dimension variant: level i < ceil(log log n) holds ranks
/// (2^(2^i), 2^(2^(i+1))]; each gets max(ceil(C(i)), 1) copies with
/// C(i) = n (ceil(log log n)+1)^2 / (2^(2^(i+1)) (i+2)^2). Ranks 1 and 2
/// stay single copies outside all levels.
CopiedSpace build_copied_space_dimension(const MetricSpace& m, const PriorityOrdering& ord);

/// Reproducibility sidecar: one entry per coordinate.
struct CoordinateInfo {
  std::string label;            // "A(i=2)", "E", "A(s=1,i=0)", "anchor(1)"
  bool always = false;          // sampling probability quantized to threshold/2^64
  std::uint64_t threshold = 0;
  long long set_size = 0;       // sampled members, counting copies
};

struct FrechetEmbedding {
  Embedding embedding;
  std::vector<CoordinateInfo> coords;
};

/// Guarantee: prioritized distortion 2 ceil(k log2 j / log2 n) - 1 with
/// dimension exactly k * ceil(c N^(1/k) ln N). Coordinates are grouped by
/// density i = 1..k; set A_h^(i) samples every copy with probability
/// N^(-i/k); the coordinate is the distance to the sampled set (0 when
/// empty). Deterministic given cfg.seed.
FrechetEmbedding embed_linf_distortion(const MetricSpace& m, const PriorityOrdering& ord,
                                       const SampleConfig& cfg);

/// Guarantee: prioritized distortion 2k ceil(log2 log2 j) + 1 (j >= 3, and 1
/// for j <= 2) with prioritized dimension O(k (j^(2/k) + log k) ln n).
/// Layout: two anchor coordinates d(x, x_1), d(x, x_2); ceil(c ln n) sets
/// E_g at probability 1/N; then for i ascending and s = 1..k, R(i) =
/// ceil(c 2^((2^i+2)/k) ln n) sets at probability
/// min(2^(2^i (1+s/k) - 2 + 2s/k) (i+2)^2 / N, 1).
FrechetEmbedding embed_linf_dimension(const MetricSpace& m, const PriorityOrdering& ord,
                                      const SampleConfig& cfg);

/// Level of rank j in the distortion variant: ceil(k log2 j / log2 n),
/// clamped to at least 1 (the distortion bound is 2*level - 1).
int distortion_level(long j, long n, int k);

/// Level of rank j >= 3 in the dimension variant: the i with
/// 2^(2^i) < j <= 2^(2^(i+1)).
int dimension_level(long j);

}  // namespace priomet
