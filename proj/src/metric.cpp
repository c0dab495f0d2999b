#include "priomet/metric.hpp"

#include <algorithm>
#include <numeric>

namespace priomet {

Scalar MetricSpace::diameter() const {
  Scalar best = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d(i, j) > best) best = d(i, j);
  return best;
}

std::optional<std::vector<long long>> MetricSpace::int64_mirror() const {
  std::vector<long long> out(dist.size());
  const long long kLimit = 1ll << 62;
  for (size_t idx = 0; idx < dist.size(); ++idx) {
    const Scalar& v = dist[idx];
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
    long long x = v.get_num().get_si();
    if (x >= kLimit || x <= -kLimit) return std::nullopt;
    out[idx] = x;
  }
  return out;
}

MetricSpace validate_metric(int n, std::vector<Scalar> dist) {
  if (n < 0 || dist.size() != static_cast<size_t>(n) * n)
    throw ValidationError(ErrorKind::InvalidParams, "matrix must be n*n");
  MetricSpace m{n, std::move(dist)};
  for (int i = 0; i < n; ++i) {
    if (m.d(i, i) != 0)
      throw ValidationError(ErrorKind::NonzeroDiagonal,
                            "dist[" + std::to_string(i) + "][" + std::to_string(i) + "] != 0",
                            {i, i, -1});
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (m.d(i, j) != m.d(j, i))
        throw ValidationError(ErrorKind::Asymmetric,
                              "dist[" + std::to_string(i) + "][" + std::to_string(j) +
                                  "] != dist[" + std::to_string(j) + "][" + std::to_string(i) + "]",
                              {i, j, -1});
      if (m.d(i, j) <= 0)
        throw ValidationError(ErrorKind::NonpositiveOffDiagonal,
                              "dist[" + std::to_string(i) + "][" + std::to_string(j) + "] <= 0",
                              {i, j, -1});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (m.d(i, k) > m.d(i, j) + m.d(j, k))
          throw ValidationError(ErrorKind::TriangleViolation,
                                "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                                    std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                                    std::to_string(j) + "," + std::to_string(k) + ")",
                                {i, j, k});
      }
    }
  return m;
}

std::vector<int> PriorityOrdering::ranks() const {
  std::vector<int> r(perm.size());
  for (size_t j = 0; j < perm.size(); ++j) r[perm[j]] = static_cast<int>(j) + 1;
  return r;
}

PriorityOrdering validate_ordering(std::vector<int> perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw ValidationError(ErrorKind::OrderingMismatch, "ordering size != n");
  std::vector<char> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p])
      throw ValidationError(ErrorKind::OrderingMismatch, "not a permutation of 0..n-1");
    seen[p] = 1;
  }
  return PriorityOrdering{std::move(perm)};
}

PriorityOrdering identity_ordering(int n) {
  PriorityOrdering ord;
  ord.perm.resize(n);
  std::iota(ord.perm.begin(), ord.perm.end(), 0);
  return ord;
}

Scalar linf_distance(const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
  if (u.size() != v.size())
    throw ValidationError(ErrorKind::LengthMismatch,
                          "vector lengths " + std::to_string(u.size()) + " vs " +
                              std::to_string(v.size()));
  Scalar best = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    Scalar diff = abs_scalar(u[i] - v[i]);
    if (diff > best) best = diff;
  }
  return best;
}

MetricSpace induced_metric(const MetricSpace& m, const std::vector<int>& points) {
  int k = static_cast<int>(points.size());
  MetricSpace sub;
  sub.n = k;
  sub.dist.resize(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub.d(a, b) = m.d(points[a], points[b]);
  return sub;
}

}  // namespace priomet
