#include "priomet/single_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <tuple>

namespace priomet {

namespace {

// Minimal rank j such that some bad pair contains x_j, or -1 when none.
// thresholds[a][b] caches factor * min(alpha) * d(a,b) for cluster-local
// indices; side[] says which part each cluster point currently sits in.
int min_bad_rank(const std::vector<int>& order_local, const std::vector<char>& side,
                 const std::vector<std::vector<Scalar>>& thresholds, const Scalar& scale) {
  int m = static_cast<int>(order_local.size());
  for (int a = 0; a < m; ++a) {
    int p = order_local[a];
    for (int q = 0; q < static_cast<int>(side.size()); ++q) {
      if (q == p || side[q] == side[p]) continue;
      const Scalar& th = thresholds[std::min(p, q)][std::max(p, q)];
      if (th < scale) return a;  // a-th in local priority order
    }
  }
  return -1;
}

}  // namespace

std::pair<std::vector<int>, std::vector<int>> grow_ultrametric_partition(
    const MetricSpace& m, const std::vector<int>& cluster, const std::vector<int>& ranks,
    const PriorityFunction& alpha, int u, int v, int* iterations) {
  int mc = static_cast<int>(cluster.size());
  std::vector<int> local_of(m.n, -1);
  for (int i = 0; i < mc; ++i) local_of[cluster[i]] = i;
  require_invariant(local_of[u] != -1 && local_of[v] != -1, "partition pivots outside cluster");

  const Scalar delta = m.d(u, v);
  if (delta == 0)
    throw ValidationError(ErrorKind::DegenerateDiameter, "cluster diameter is zero");

  // cluster points in priority order, and the pairwise bad-pair thresholds
  std::vector<int> by_rank(mc);
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(),
            [&](int a, int b) { return ranks[cluster[a]] < ranks[cluster[b]]; });
  std::vector<std::vector<Scalar>> thresholds(mc, std::vector<Scalar>(mc));
  for (int a = 0; a < mc; ++a)
    for (int b = a + 1; b < mc; ++b) {
      const Scalar& mina =
          alpha.at(std::min(ranks[cluster[a]], ranks[cluster[b]]));
      thresholds[a][b] = 2 * mina * m.d(cluster[a], cluster[b]);
    }

  Scalar r = 0;
  std::vector<char> in_x1(mc, 0);
  int iters = 0;
  while (true) {
    for (int i = 0; i < mc; ++i) in_x1[i] = m.d(u, cluster[i]) <= r ? 1 : 0;
    int bad_local = min_bad_rank(by_rank, in_x1, thresholds, delta);
    if (bad_local == -1) break;
    int j = ranks[cluster[by_rank[bad_local]]];
    r += delta / (2 * alpha.at(j));
    ++iters;
    require_invariant(iters <= 2 * mc + 2, "partition loop exceeded 2n iterations");
  }
  require_invariant(r < delta, "partition radius reached the diameter");
  if (iterations) *iterations = iters;

  std::vector<int> x1, x2;
  for (int i = 0; i < mc; ++i) (in_x1[i] ? x1 : x2).push_back(cluster[i]);
  require_invariant(!x1.empty() && std::find(x2.begin(), x2.end(), v) != x2.end(),
                    "partition must separate the diameter pair");
  return {std::move(x1), std::move(x2)};
}

namespace {

int build_ultra_rec(const MetricSpace& m, const std::vector<int>& ranks,
                    const PriorityFunction& alpha, std::vector<int> cluster,
                    std::vector<UltrametricNode>& nodes, std::vector<int>& leaf_of) {
  if (cluster.size() == 1) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back({Scalar(0), {}, cluster[0]});
    leaf_of[cluster[0]] = id;
    return id;
  }
  // diameter pair, lexicographically smallest among ties
  Scalar delta = 0;
  int u = -1, v = -1;
  for (size_t a = 0; a < cluster.size(); ++a)
    for (size_t b = a + 1; b < cluster.size(); ++b) {
      int p = std::min(cluster[a], cluster[b]), q = std::max(cluster[a], cluster[b]);
      const Scalar& d = m.d(p, q);
      if (d > delta || (d == delta && (u == -1 || std::make_pair(p, q) < std::make_pair(u, v)))) {
        delta = d;
        u = p;
        v = q;
      }
    }
  auto [x1, x2] = grow_ultrametric_partition(m, cluster, ranks, alpha, u, v);
  int id = static_cast<int>(nodes.size());
  nodes.push_back({delta, {}, -1});
  int c1 = build_ultra_rec(m, ranks, alpha, std::move(x1), nodes, leaf_of);
  int c2 = build_ultra_rec(m, ranks, alpha, std::move(x2), nodes, leaf_of);
  nodes[id].children = {c1, c2};
  return id;
}

}  // namespace

UltrametricTree build_ultrametric(const MetricSpace& m, const PriorityOrdering& ord,
                                  const PriorityFunction& alpha) {
  require_invariant(ord.n() == m.n, "ordering size mismatch");
  require_invariant(alpha.n_max() >= m.n, "alpha not certified for n points");
  UltrametricTree out;
  out.leaf_of.assign(m.n, -1);
  std::vector<int> cluster(m.n);
  std::iota(cluster.begin(), cluster.end(), 0);
  auto ranks = ord.ranks();
  int root = build_ultra_rec(m, ranks, alpha, std::move(cluster), out.nodes, out.leaf_of);
  require_invariant(root == 0, "ultrametric root must be node 0");
  return out;
}

MetricSpace UltrametricTree::leaf_metric() const {
  int n = static_cast<int>(leaf_of.size());
  MetricSpace m;
  m.n = n;
  m.dist.assign(static_cast<size_t>(n) * n, Scalar(0));
  // collect leaves under each node once, then price cross-child pairs
  std::vector<std::vector<int>> leaves(nodes.size());
  for (int id = static_cast<int>(nodes.size()) - 1; id >= 0; --id) {
    if (nodes[id].children.empty()) {
      leaves[id] = {nodes[id].leaf_point};
    } else {
      for (int c : nodes[id].children)
        leaves[id].insert(leaves[id].end(), leaves[c].begin(), leaves[c].end());
    }
  }
  for (size_t id = 0; id < nodes.size(); ++id) {
    const auto& ch = nodes[id].children;
    for (size_t a = 0; a < ch.size(); ++a)
      for (size_t b = a + 1; b < ch.size(); ++b)
        for (int p : leaves[ch[a]])
          for (int q : leaves[ch[b]]) {
            m.d(p, q) = nodes[id].label;
            m.d(q, p) = nodes[id].label;
          }
  }
  return m;
}

bool UltrametricTree::labels_monotone() const {
  for (size_t id = 0; id < nodes.size(); ++id) {
    if (nodes[id].children.empty() && nodes[id].label != 0) return false;
    for (int c : nodes[id].children)
      if (nodes[c].label > nodes[id].label) return false;
  }
  return true;
}

PetalResult petal(const WeightedGraph& g, const std::vector<char>& active, int x, int t,
                  const Scalar& r) {
  PetalResult out;
  out.in_petal.assign(g.n, 0);
  out.directed_dist.assign(g.n, Scalar(0));
  out.directed_reached.assign(g.n, 0);

  auto from_x = dijkstra(g, x, &active);
  auto from_t = dijkstra(g, t, &active);
  // fixed shortest t..x path: follow parents from x back to t
  std::vector<int>& path = out.path;
  for (int v = x; v != -1; v = from_t.parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());  // t first
  require_invariant(path.front() == t, "target cannot reach the center");
  // halved direction: u -> v with u closer to t
  std::map<std::pair<int, int>, int> halved;
  for (size_t i = 0; i + 1 < path.size(); ++i) halved[{path[i], path[i + 1]}] = 1;

  auto adj = g.adjacency();
  using Item = std::tuple<Scalar, int, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({Scalar(0), -1, t});
  Scalar cap = r / 2;
  while (!pq.empty()) {
    auto [d, par, vtx] = pq.top();
    pq.pop();
    if (out.directed_reached[vtx]) continue;
    out.directed_reached[vtx] = 1;
    out.directed_dist[vtx] = d;
    (void)par;
    for (auto [w, ei] : adj[vtx]) {
      if (!active[w] || out.directed_reached[w]) continue;
      const Scalar& ew = g.edges[ei].w;
      Scalar cost;
      if (halved.count({vtx, w})) {
        cost = ew / 2;
      } else {
        cost = ew + from_x.dist[vtx] - from_x.dist[w];
        require_invariant(cost >= 0, "directed reweighting went negative");
      }
      pq.push({d + cost, vtx, w});
    }
  }
  for (int v = 0; v < g.n; ++v)
    if (active[v] && out.directed_reached[v] && out.directed_dist[v] <= cap) out.in_petal[v] = 1;
  require_invariant(out.in_petal[t] == 1, "petal must contain its target");

  // petal center: farthest path vertex (by distance from t along the path)
  // still inside the petal
  for (int v : path)
    if (out.in_petal[v]) out.petal_center = v;
  return out;
}

CarveResult carve_petal_radius(const WeightedGraph& g, const std::vector<char>& active,
                               const MetricSpace& global_metric, const std::vector<int>& ranks,
                               const PriorityFunction& alpha, int x, int target,
                               const Scalar& rad) {
  // active points in priority order + pairwise thresholds (128-rule)
  std::vector<int> pts;
  for (int v = 0; v < g.n; ++v)
    if (active[v]) pts.push_back(v);
  int m = static_cast<int>(pts.size());
  std::vector<int> by_rank(m);
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::sort(by_rank.begin(), by_rank.end(),
            [&](int a, int b) { return ranks[pts[a]] < ranks[pts[b]]; });
  std::vector<std::vector<Scalar>> thresholds(m, std::vector<Scalar>(m));
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const Scalar& mina = alpha.at(std::min(ranks[pts[a]], ranks[pts[b]]));
      thresholds[a][b] = 128 * mina * global_metric.d(pts[a], pts[b]);
    }

  CarveResult out;
  out.radius = 0;
  std::vector<char> side(m, 0);
  while (true) {
    auto pr = petal(g, active, x, target, out.radius);
    for (int i = 0; i < m; ++i) side[i] = pr.in_petal[pts[i]];
    int bad_local = min_bad_rank(by_rank, side, thresholds, rad);
    if (bad_local == -1) {
      out.in_petal = std::move(pr.in_petal);
      out.petal_center = pr.petal_center;
      out.path = std::move(pr.path);
      break;
    }
    int j = ranks[pts[by_rank[bad_local]]];
    out.radius += rad / (16 * alpha.at(j));
    ++out.iterations;
    require_invariant(out.iterations <= 2 * m + 2, "petal carving exceeded 2n iterations");
  }
  require_invariant(out.radius * 8 <= rad, "carved radius exceeded rad/8");
  return out;
}

namespace {

struct DecompositionState {
  const WeightedGraph& g;
  const MetricSpace& metric;  // global shortest-path metric
  const std::vector<int>& ranks;
  const PriorityFunction& alpha;
  std::vector<int> edges;  // chosen edge indices
  std::vector<PetalTrace> clusters;
  std::vector<std::vector<std::pair<int, int>>> adj;
};

int find_edge(const DecompositionState& st, int a, int b) {
  for (auto [w, ei] : st.adj[a])
    if (w == b) return ei;
  throw InvariantBreach("expected input edge is missing");
}

// Shortest-path tree edges from the center; base case of the recursion.
void add_sp_tree(DecompositionState& st, const std::vector<char>& active, int x) {
  auto sp = dijkstra(st.g, x, &active);
  for (int v = 0; v < st.g.n; ++v)
    if (active[v] && v != x) {
      require_invariant(sp.reached[v], "cluster subgraph is disconnected");
      st.edges.push_back(find_edge(st, sp.parent[v], v));
    }
}

void decompose(DecompositionState& st, std::vector<char> active, int x, int target) {
  int count = 0;
  for (char a : active) count += a;
  if (count <= 1) return;

  auto from_x = dijkstra(st.g, x, &active);
  Scalar rad = 0;
  std::vector<int> members;
  for (int v = 0; v < st.g.n; ++v)
    if (active[v]) {
      require_invariant(from_x.reached[v], "cluster subgraph is disconnected");
      if (from_x.dist[v] > rad) rad = from_x.dist[v];
      members.push_back(v);
    }

  PetalTrace trace;
  trace.cluster = members;
  trace.center = x;
  trace.target = target;
  trace.radius = rad;

  Scalar threshold = rad * 3 / 4;
  if (count == 2) {
    add_sp_tree(st, active, x);
    st.clusters.push_back(std::move(trace));
    return;
  }

  // First target: walk the x..target path to the first vertex at distance
  // >= 3 rad/4, when the inherited target is that far out.
  int special_t1 = -1;
  if (active[target] && from_x.dist[target] >= threshold) {
    std::vector<int> pth;
    for (int v = target; v != -1; v = from_x.parent[v]) pth.push_back(v);
    std::reverse(pth.begin(), pth.end());  // x first
    for (int v : pth)
      if (from_x.dist[v] >= threshold) {
        special_t1 = v;
        break;
      }
  }

  std::vector<char> remaining = active;
  bool first = true;
  bool carved_any = false;
  while (true) {
    auto cur = dijkstra(st.g, x, &remaining);
    int far = -1;
    Scalar far_d = 0;
    for (int v = 0; v < st.g.n; ++v) {
      if (!remaining[v]) continue;
      require_invariant(cur.reached[v], "petal removal disconnected the cluster");
      if (far == -1 || cur.dist[v] > far_d) {  // ties keep the smallest id
        far = v;
        far_d = cur.dist[v];
      }
    }
    if (far == -1 || far_d < threshold) break;
    int ti = (first && special_t1 != -1 && remaining[special_t1]) ? special_t1 : far;
    first = false;

    auto carve = carve_petal_radius(st.g, remaining, st.metric, st.ranks, st.alpha, x, ti, rad);
    trace.petal_radii.push_back(carve.radius);
    carved_any = true;

    // connecting edge: the petal center's path-neighbor outside the petal
    int pc = carve.petal_center;
    require_invariant(pc != -1 && !carve.in_petal[x], "petal swallowed the cluster center");
    int nb = -1;
    for (size_t i = 0; i + 1 < carve.path.size(); ++i)
      if (carve.path[i] == pc) {
        nb = carve.path[i + 1];
        break;
      }
    require_invariant(nb != -1 && !carve.in_petal[nb], "petal center has no outside neighbor");
    st.edges.push_back(find_edge(st, pc, nb));

    decompose(st, carve.in_petal, pc, ti);
    for (int v = 0; v < st.g.n; ++v)
      if (carve.in_petal[v]) remaining[v] = 0;
  }

  if (!carved_any) {
    // no vertex far enough for a petal: span from the center
    add_sp_tree(st, active, x);
    st.clusters.push_back(std::move(trace));
    return;
  }

  // X_0 keeps the center; inherit the target when it survived
  int t0 = target;
  if (!remaining[t0]) {
    auto cur = dijkstra(st.g, x, &remaining);
    t0 = x;
    Scalar best = -1;
    for (int v = 0; v < st.g.n; ++v)
      if (remaining[v] && (best < 0 || cur.dist[v] > best)) {
        best = cur.dist[v];
        t0 = v;
      }
  }
  st.clusters.push_back(std::move(trace));
  decompose(st, std::move(remaining), x, t0);
}

}  // namespace

SpanningTreeResult petal_decomposition_spanning_tree(const WeightedGraph& g,
                                                     const PriorityOrdering& ord,
                                                     const PriorityFunction& alpha) {
  if (!is_connected(g.n, g.edges))
    throw ValidationError(ErrorKind::Disconnected, "graph is not connected");
  require_invariant(ord.n() == g.n && alpha.n_max() >= g.n, "ordering/alpha size mismatch");

  MetricSpace metric = shortest_path_metric(g);
  auto ranks = ord.ranks();
  DecompositionState st{g, metric, ranks, alpha, {}, {}, g.adjacency()};

  int root_center = ord.point_of_rank(1);
  std::vector<char> all(g.n, 1);
  auto from_c = dijkstra(g, root_center);
  int root_target = root_center;
  Scalar best = -1;
  for (int v = 0; v < g.n; ++v)
    if (best < 0 || from_c.dist[v] > best) {
      best = from_c.dist[v];
      root_target = v;
    }
  decompose(st, all, root_center, root_target);

  SpanningTreeResult out;
  std::sort(st.edges.begin(), st.edges.end());
  st.edges.erase(std::unique(st.edges.begin(), st.edges.end()), st.edges.end());
  require_invariant(static_cast<int>(st.edges.size()) == g.n - 1,
                    "petal decomposition did not produce n-1 edges");
  out.edge_indices = st.edges;
  std::vector<Edge> tedges;
  for (int ei : st.edges) tedges.push_back(g.edges[ei]);
  out.tree = validate_tree(g.n, std::vector<char>(g.n, 0), tedges);
  out.clusters = std::move(st.clusters);
  return out;
}

}  // namespace priomet
