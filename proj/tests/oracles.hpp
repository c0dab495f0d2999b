// Test-side oracles, deliberately independent of the library's own
// shortest-path and audit code paths: Floyd-Warshall over explicit
// matrices, Bellman-Ford, and brute-force definition checks.
#pragma once

#include <optional>
#include <vector>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/scalar.hpp"

namespace oracles {

using priomet::Edge;
using priomet::Scalar;

// All-pairs shortest paths over an edge list that may include zero-weight
// edges. Unreachable pairs stay disengaged (nullopt).
inline std::vector<std::vector<std::optional<Scalar>>> floyd_warshall(
    int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::optional<Scalar>>> d(
      n, std::vector<std::optional<Scalar>>(n));
  for (int i = 0; i < n; ++i) d[i][i] = Scalar(0);
  for (const auto& e : edges) {
    if (!d[e.u][e.v] || e.w < *d[e.u][e.v]) {
      d[e.u][e.v] = e.w;
      d[e.v][e.u] = e.w;
    }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!d[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!d[k][j]) continue;
        Scalar through = *d[i][k] + *d[k][j];
        if (!d[i][j] || through < *d[i][j]) d[i][j] = through;
      }
    }
  return d;
}

// Single-source Bellman-Ford; a different algorithm from the library's
// Dijkstra on purpose.
inline std::vector<std::optional<Scalar>> bellman_ford(int n, const std::vector<Edge>& edges,
                                                       int src) {
  std::vector<std::optional<Scalar>> d(n);
  d[src] = Scalar(0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& e : edges) {
      if (d[e.u] && (!d[e.v] || *d[e.u] + e.w < *d[e.v])) {
        d[e.v] = *d[e.u] + e.w;
        changed = true;
      }
      if (d[e.v] && (!d[e.u] || *d[e.v] + e.w < *d[e.u])) {
        d[e.u] = *d[e.v] + e.w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

// Directed single-source shortest paths over explicit directed arcs
// (u, v, w); used as the oracle for petal membership.
inline std::vector<std::optional<Scalar>> directed_sssp(
    int n, const std::vector<std::tuple<int, int, Scalar>>& arcs, int src) {
  std::vector<std::optional<Scalar>> d(n);
  d[src] = Scalar(0);
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (const auto& [u, v, w] : arcs) {
      if (d[u] && (!d[v] || *d[u] + w < *d[v])) {
        d[v] = *d[u] + w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

}  // namespace oracles
