#include "priomet/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace priomet {

std::vector<std::vector<std::pair<int, int>>> WeightedGraph::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].u].push_back({edges[e].v, static_cast<int>(e)});
    adj[edges[e].v].push_back({edges[e].u, static_cast<int>(e)});
  }
  return adj;
}

bool is_connected(int n, const std::vector<Edge>& edges) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  return count == n;
}

WeightedGraph validate_graph(int n, std::vector<Edge> edges) {
  if (n < 1) throw ValidationError(ErrorKind::InvalidParams, "graph needs n >= 1");
  std::map<std::pair<int, int>, Scalar> best;
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw ValidationError(ErrorKind::InvalidParams, "edge endpoint out of range");
    if (e.u == e.v)
      throw ValidationError(ErrorKind::SelfLoop, "self-loop at " + std::to_string(e.u),
                            {e.u, e.v, -1});
    if (e.w <= 0)
      throw ValidationError(ErrorKind::BadWeight,
                            "non-positive weight on (" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + ")",
                            {e.u, e.v, -1});
    auto key = std::minmax(e.u, e.v);
    auto it = best.find(key);
    if (it == best.end() || e.w < it->second) best[key] = e.w;
  }
  WeightedGraph g;
  g.n = n;
  g.edges.reserve(best.size());
  for (const auto& [key, w] : best) g.edges.push_back({key.first, key.second, w});
  if (!is_connected(n, g.edges))
    throw ValidationError(ErrorKind::Disconnected, "graph is not connected");
  return g;
}

SsspResult dijkstra(const WeightedGraph& g, int source, const std::vector<char>* active) {
  SsspResult res;
  res.dist.assign(g.n, Scalar(0));
  res.reached.assign(g.n, 0);
  res.parent.assign(g.n, -1);
  auto adj = g.adjacency();
  // (dist, parent, vertex) ordering makes extraction deterministic under ties.
  using Item = std::tuple<Scalar, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  if (active && !(*active)[source]) return res;
  pq.push({Scalar(0), -1, source});
  while (!pq.empty()) {
    auto [d, par, v] = pq.top();
    pq.pop();
    if (res.reached[v]) continue;
    res.reached[v] = 1;
    res.dist[v] = d;
    res.parent[v] = par;
    for (auto [w, ei] : adj[v]) {
      if (res.reached[w]) continue;
      if (active && !(*active)[w]) continue;
      pq.push({d + g.edges[ei].w, v, w});
    }
  }
  return res;
}

MetricSpace shortest_path_metric(const WeightedGraph& g) {
  if (!is_connected(g.n, g.edges))
    throw ValidationError(ErrorKind::Disconnected, "graph is not connected");
  MetricSpace m;
  m.n = g.n;
  m.dist.resize(static_cast<size_t>(g.n) * g.n);
  for (int s = 0; s < g.n; ++s) {
    auto sp = dijkstra(g, s);
    for (int v = 0; v < g.n; ++v) m.d(s, v) = sp.dist[v];
  }
  return m;
}

int WeightedTree::real_count() const {
  int c = 0;
  for (char s : steiner)
    if (!s) ++c;
  return c;
}

std::vector<std::vector<std::pair<int, int>>> WeightedTree::adjacency() const {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].u].push_back({edges[e].v, static_cast<int>(e)});
    adj[edges[e].v].push_back({edges[e].u, static_cast<int>(e)});
  }
  return adj;
}

std::vector<Scalar> WeightedTree::distances_from(int src) const {
  auto adj = adjacency();
  std::vector<Scalar> dist(n, Scalar(0));
  std::vector<char> seen(n, 0);
  std::vector<int> stack{src};
  seen[src] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, ei] : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        dist[w] = dist[v] + edges[ei].w;
        stack.push_back(w);
      }
  }
  return dist;
}

std::vector<int> WeightedTree::path(int src, int dst) const {
  auto adj = adjacency();
  std::vector<int> parent(n, -2);
  std::vector<int> stack{src};
  parent[src] = -1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == dst) break;
    for (auto [w, ei] : adj[v]) {
      (void)ei;
      if (parent[w] == -2) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  require_invariant(parent[dst] != -2, "tree path endpoints disconnected");
  std::vector<int> rev;
  for (int v = dst; v != -1; v = parent[v]) rev.push_back(v);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

WeightedTree validate_tree(int n, std::vector<char> steiner, std::vector<Edge> edges,
                           bool strict) {
  if (n < 1) throw ValidationError(ErrorKind::InvalidParams, "tree needs n >= 1");
  if (static_cast<int>(steiner.size()) != n)
    throw ValidationError(ErrorKind::InvalidParams, "steiner flag count != n");
  if (static_cast<int>(edges.size()) != n - 1)
    throw ValidationError(ErrorKind::NotATree,
                          "tree on " + std::to_string(n) + " vertices needs " +
                              std::to_string(n - 1) + " edges");
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw ValidationError(ErrorKind::InvalidParams, "edge endpoint out of range");
    if (e.u == e.v) throw ValidationError(ErrorKind::SelfLoop, "self-loop", {e.u, e.v, -1});
    if (e.w <= 0)
      throw ValidationError(ErrorKind::BadWeight, "non-positive edge weight", {e.u, e.v, -1});
  }
  if (!is_connected(n, edges))
    throw ValidationError(ErrorKind::NotATree, "tree is not connected");
  if (strict) {
    std::vector<int> deg(n, 0);
    for (const auto& e : edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (int v = 0; v < n; ++v)
      if (steiner[v] && deg[v] < 2)
        throw ValidationError(ErrorKind::InvalidParams,
                              "Steiner vertex " + std::to_string(v) + " has degree < 2",
                              {v, -1, -1});
  }
  return WeightedTree{n, std::move(steiner), std::move(edges)};
}

std::pair<MetricSpace, std::vector<int>> tree_metric(const WeightedTree& t) {
  std::vector<int> real;
  for (int v = 0; v < t.n; ++v)
    if (!t.steiner[v]) real.push_back(v);
  MetricSpace m;
  m.n = static_cast<int>(real.size());
  m.dist.resize(static_cast<size_t>(m.n) * m.n);
  for (int a = 0; a < m.n; ++a) {
    auto dist = t.distances_from(real[a]);
    for (int b = 0; b < m.n; ++b) m.d(a, b) = dist[real[b]];
  }
  return {std::move(m), std::move(real)};
}

}  // namespace priomet
