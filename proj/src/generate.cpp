#include "priomet/generate.hpp"

#include <numeric>
#include <set>

#include "priomet/rng.hpp"

namespace priomet {

WeightedTree gen_tree(int n, std::uint64_t seed, long wmax) {
  if (n < 1 || wmax < 1) throw ValidationError(ErrorKind::InvalidParams, "gen_tree params");
  SplitRng rng(derive_stream(seed, {0x74726565ull /*tree*/}));
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
    edges.push_back({parent, v, Scalar(rng.next_range(1, wmax))});
  }
  return validate_tree(n, std::vector<char>(n, 0), std::move(edges));
}

WeightedGraph gen_graph(int n, std::uint64_t seed, long wmax, bool rational,
                        double extra_per_vertex) {
  if (n < 1 || wmax < 1) throw ValidationError(ErrorKind::InvalidParams, "gen_graph params");
  SplitRng rng(derive_stream(seed, {0x6772617068ull /*graph*/}));
  auto weight = [&]() {
    long num = rng.next_range(1, wmax);
    long den = rational ? rng.next_range(1, 4) : 1;
    Scalar w(num);
    return Scalar(w / den);
  };
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v)));
    edges.push_back({parent, v, weight()});
    used.insert(std::minmax(parent, v));
  }
  long extra = static_cast<long>(extra_per_vertex * n);
  for (long e = 0; e < extra && n > 2; ++e) {
    int a = static_cast<int>(rng.next_below(n));
    int b = static_cast<int>(rng.next_below(n));
    if (a == b) continue;
    auto key = std::minmax(a, b);
    if (used.count(key)) continue;
    used.insert(key);
    edges.push_back({key.first, key.second, weight()});
  }
  return validate_graph(n, std::move(edges));
}

MetricSpace gen_metric(int n, std::uint64_t seed, long wmax) {
  return shortest_path_metric(gen_graph(n, seed, wmax, false));
}

PriorityOrdering gen_ordering(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError(ErrorKind::InvalidParams, "gen_ordering params");
  SplitRng rng(derive_stream(seed, {0x6f7264ull /*ord*/}));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[i], perm[j]);
  }
  return PriorityOrdering{std::move(perm)};
}

}  // namespace priomet
