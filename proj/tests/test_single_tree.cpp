#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "priomet/generate.hpp"
#include "priomet/single_tree.hpp"

using namespace priomet;

namespace {

// huge constant alpha: no pair is ever bad, partitions stay minimal
PriorityFunction lenient_alpha(int n) {
  std::vector<Scalar> v(n, Scalar(4 * n + 4));
  return validate_priority_function(v, n);
}

}  // namespace

TEST_CASE("partition: two points split immediately") {
  auto m = validate_metric(2, {Scalar(0), Scalar(9), Scalar(9), Scalar(0)});
  auto pf = default_alpha(2);
  auto [x1, x2] = grow_ultrametric_partition(m, {0, 1}, identity_ordering(2).ranks(), pf, 0, 1);
  CHECK(x1 == std::vector<int>{0});
  CHECK(x2 == std::vector<int>{1});
}

TEST_CASE("partition: uniform metric never has bad pairs, X1 = {u}") {
  int n = 8;
  std::vector<Scalar> d(n * n, Scalar(1));
  for (int i = 0; i < n; ++i) d[i * n + i] = 0;
  auto m = validate_metric(n, d);
  auto pf = default_alpha(n);  // alpha(1) > 1 makes 2 alpha d >= diam always
  int iters = -1;
  std::vector<int> cluster(n);
  for (int i = 0; i < n; ++i) cluster[i] = i;
  auto [x1, x2] = grow_ultrametric_partition(m, cluster, identity_ordering(n).ranks(), pf, 0, 1,
                                             &iters);
  CHECK(x1 == std::vector<int>{0});
  CHECK(iters == 0);
}

TEST_CASE("partition: epsilon-cluster absorbs its side before stopping") {
  // two pairs at mutual distance 1000, epsilon = 1 within pairs
  // bad-pair rule pulls 1 (and the rest of u's cluster) into X1
  std::vector<Scalar> d = {
      Scalar(0),    Scalar(1),    Scalar(1000), Scalar(1000),
      Scalar(1),    Scalar(0),    Scalar(1000), Scalar(1000),
      Scalar(1000), Scalar(1000), Scalar(0),    Scalar(1),
      Scalar(1000), Scalar(1000), Scalar(1),    Scalar(0)};
  auto m = validate_metric(4, d);
  auto pf = default_alpha(4);
  // trace by hand: pair (0,1) at distance 1 is bad at scale 1000 for any
  // certified alpha with 2 alpha(j) < 1000, so r grows until 1 joins X1
  int iters = -1;
  auto [x1, x2] = grow_ultrametric_partition(m, {0, 1, 2, 3}, identity_ordering(4).ranks(), pf,
                                             0, 2, &iters);
  std::set<int> s1(x1.begin(), x1.end());
  CHECK(s1 == std::set<int>{0, 1});
  CHECK(x2.size() == 2);
  // only rank 1 ever appears as the minimal bad index, at most twice
  CHECK(iters <= 2);
}

TEST_CASE("partition rejects zero diameter") {
  auto m = validate_metric(2, {Scalar(0), Scalar(1), Scalar(1), Scalar(0)});
  CHECK_THROWS_AS(
      grow_ultrametric_partition(m, {0}, identity_ordering(2).ranks(), default_alpha(2), 0, 0),
      ValidationError);
}

TEST_CASE("ultrametric: two points get root label d") {
  auto m = validate_metric(2, {Scalar(0), Scalar(7), Scalar(7), Scalar(0)});
  auto u = build_ultrametric(m, identity_ordering(2), default_alpha(2));
  CHECK(u.nodes[0].label == 7);
  auto lm = u.leaf_metric();
  CHECK(lm.d(0, 1) == 7);
}

TEST_CASE("ultrametric: uniform metrics embed isometrically") {
  int n = 9;
  std::vector<Scalar> d(n * n, Scalar(1));
  for (int i = 0; i < n; ++i) d[i * n + i] = 0;
  auto m = validate_metric(n, d);
  auto u = build_ultrametric(m, identity_ordering(n), default_alpha(n));
  auto lm = u.leaf_metric();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(lm.d(i, j) == m.d(i, j));
}

TEST_CASE("ultrametric: strong triangle, non-contraction, 2 alpha(j) bound") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    int n = 8 + static_cast<int>(seed * 9);
    auto m = gen_metric(n, seed * 101, 50);
    auto ord = gen_ordering(n, seed);
    auto pf = default_alpha(n);
    auto u = build_ultrametric(m, ord, pf);
    REQUIRE(u.labels_monotone());
    auto lm = u.leaf_metric();
    // strong triangle inequality on all triples
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          REQUIRE(lm.d(a, c) <= std::max(lm.d(a, b), lm.d(b, c)));
    auto ranks = ord.ranks();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        REQUIRE(lm.d(a, b) >= m.d(a, b));  // non-contractive
        int j = std::min(ranks[a], ranks[b]);
        REQUIRE(lm.d(a, b) <= 2 * pf.at(j) * m.d(a, b));
      }
    // determinism
    auto u2 = build_ultrametric(m, ord, pf);
    auto lm2 = u2.leaf_metric();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) REQUIRE(lm.d(a, b) == lm2.d(a, b));
  }
}

TEST_CASE("petal: r = 0 keeps only the target on a path graph") {
  auto g = validate_graph(5, {{0, 1, Scalar(1)}, {1, 2, Scalar(1)}, {2, 3, Scalar(1)},
                              {3, 4, Scalar(1)}});
  std::vector<char> active(5, 1);
  auto p = petal(g, active, 0, 4, Scalar(0));
  int count = 0;
  for (char c : p.in_petal) count += c;
  CHECK(count == 1);
  CHECK(p.in_petal[4]);
  CHECK(p.petal_center == 4);
}

TEST_CASE("petal membership matches a directed shortest-path oracle") {
  auto g = validate_graph(6, {{0, 1, Scalar(2)}, {1, 2, Scalar(1)}, {2, 3, Scalar(2)},
                              {3, 4, Scalar(1)}, {4, 5, Scalar(2)}, {1, 4, Scalar(5)}});
  std::vector<char> active(6, 1);
  int x = 0, t = 5;
  for (const Scalar& r : {Scalar(0), Scalar(1), Scalar(2), Scalar(4)}) {
    auto p = petal(g, active, x, t, r);
    // oracle: rebuild the reweighted digraph explicitly
    auto from_x = dijkstra(g, x, &active);
    auto from_t = dijkstra(g, t, &active);
    std::vector<int> path;
    for (int v = x; v != -1; v = from_t.parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    std::set<std::pair<int, int>> halved;
    for (size_t i = 0; i + 1 < path.size(); ++i) halved.insert({path[i], path[i + 1]});
    std::vector<std::tuple<int, int, Scalar>> arcs;
    for (const auto& e : g.edges)
      for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        Scalar w = halved.count({a, b}) ? Scalar(e.w / 2)
                                        : Scalar(e.w + from_x.dist[a] - from_x.dist[b]);
        arcs.push_back({a, b, w});
      }
    auto od = oracles::directed_sssp(6, arcs, t);
    for (int v = 0; v < 6; ++v) {
      bool inside = od[v].has_value() && *od[v] <= r / 2;
      REQUIRE(static_cast<bool>(p.in_petal[v]) == inside);
    }
  }
  // nesting
  auto p1 = petal(g, active, x, t, Scalar(1));
  auto p2 = petal(g, active, x, t, Scalar(3));
  for (int v = 0; v < 6; ++v)
    if (p1.in_petal[v]) CHECK(p2.in_petal[v]);
}

TEST_CASE("carve: lenient alpha stops at radius 0") {
  auto g = gen_graph(10, 40, 6);
  auto m = shortest_path_metric(g);
  std::vector<char> active(10, 1);
  auto pf = lenient_alpha(10);
  auto ranks = identity_ordering(10).ranks();
  auto from0 = dijkstra(g, 0);
  Scalar rad = 0;
  int far = 0;
  for (int v = 0; v < 10; ++v)
    if (from0.dist[v] > rad) {
      rad = from0.dist[v];
      far = v;
    }
  auto cr = carve_petal_radius(g, active, m, ranks, pf, 0, far, rad);
  CHECK(cr.radius == 0);
  CHECK(cr.iterations == 0);
  CHECK(cr.radius * 8 <= rad);
}

TEST_CASE("spanning tree of a tree is the tree itself") {
  auto t = gen_tree(12, 5, 9);
  std::vector<Edge> edges = t.edges;
  auto g = validate_graph(12, edges);
  auto res = petal_decomposition_spanning_tree(g, gen_ordering(12, 2), default_alpha(12));
  CHECK(res.edge_indices.size() == 11);
  std::set<std::pair<int, int>> in, out;
  for (const auto& e : g.edges) in.insert(std::minmax(e.u, e.v));
  for (int ei : res.edge_indices)
    out.insert(std::minmax(g.edges[ei].u, g.edges[ei].v));
  CHECK(in == out);
}

TEST_CASE("spanning tree: single edge") {
  auto g = validate_graph(2, {{0, 1, Scalar(4)}});
  auto res = petal_decomposition_spanning_tree(g, identity_ordering(2), default_alpha(2));
  CHECK(res.edge_indices == std::vector<int>{0});
}

TEST_CASE("spanning tree: audited postconditions on random graphs") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    int n = 10 + static_cast<int>(seed * 10);
    auto g = gen_graph(n, seed * 7, 12, seed % 2 == 1);
    auto ord = gen_ordering(n, seed);
    auto pf = default_alpha(n);
    auto res = petal_decomposition_spanning_tree(g, ord, pf);

    auto dg = shortest_path_metric(g);
    WeightedGraph tg{n, res.tree.edges};
    auto dt = shortest_path_metric(tg);
    auto ranks = ord.ranks();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        REQUIRE(dt.d(a, b) >= dg.d(a, b));
        int j = std::min(ranks[a], ranks[b]);
        REQUIRE(dt.d(a, b) <= 1024 * pf.at(j) * dg.d(a, b));
      }

    // every recursion cluster: tree radius from its center <= 4 rad(X),
    // every carved radius <= rad/8
    for (const auto& cl : res.clusters) {
      for (const auto& r : cl.petal_radii) REQUIRE(r * 8 <= cl.radius);
      std::set<int> cset(cl.cluster.begin(), cl.cluster.end());
      std::vector<Edge> sub;
      for (const auto& e : res.tree.edges)
        if (cset.count(e.u) && cset.count(e.v)) sub.push_back(e);
      REQUIRE(sub.size() + 1 == cset.size());  // laminar: T[X] is a subtree
      auto fw = oracles::floyd_warshall(n, sub);
      for (int v : cl.cluster) {
        REQUIRE(fw[cl.center][v].has_value());
        REQUIRE(*fw[cl.center][v] <= 4 * cl.radius);
      }
    }
  }
}

TEST_CASE("petal proximity: y within delta of the petal lies in P(t, r + 4 delta)") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    int n = 14;
    auto g = gen_graph(n, seed * 19 + 1, 8);
    std::vector<char> active(n, 1);
    auto from0 = dijkstra(g, 0);
    Scalar rad = 0;
    int far = 0;
    for (int v = 0; v < n; ++v)
      if (from0.dist[v] > rad) {
        rad = from0.dist[v];
        far = v;
      }
    if (rad == 0) continue;
    auto m = shortest_path_metric(g);
    for (const Scalar& r : {rad / 8, rad / 16}) {
      auto p = petal(g, active, 0, far, r);
      for (int y = 0; y < n; ++y) {
        if (p.in_petal[y]) continue;
        // delta = distance from y to the nearest petal member
        Scalar delta;
        bool have = false;
        for (int z = 0; z < n; ++z)
          if (p.in_petal[z] && (!have || m.d(y, z) < delta)) {
            delta = m.d(y, z);
            have = true;
          }
        REQUIRE(have);
        auto p2 = petal(g, active, 0, far, r + 4 * delta);
        REQUIRE(p2.in_petal[y]);
      }
    }
  }
}

TEST_CASE("spanning tree on tie-heavy unit-weight structures") {
  // unit cycle: every pair of adjacent radii ties in Dijkstra
  for (int n : {4, 9, 16}) {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, Scalar(1)});
    auto g = validate_graph(n, edges);
    auto pf = default_alpha(n);
    auto ord = identity_ordering(n);
    auto res = petal_decomposition_spanning_tree(g, ord, pf);
    REQUIRE(static_cast<int>(res.edge_indices.size()) == n - 1);
    auto dg = shortest_path_metric(g);
    WeightedGraph tg{n, res.tree.edges};
    auto dt = shortest_path_metric(tg);
    auto ranks = ord.ranks();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        REQUIRE(dt.d(a, b) >= dg.d(a, b));
        REQUIRE(dt.d(a, b) <= 1024 * pf.at(std::min(ranks[a], ranks[b])) * dg.d(a, b));
      }
  }
  // unit grid
  int w = 5, h = 4, n = w * h;
  std::vector<Edge> edges;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      int v = y * w + x;
      if (x + 1 < w) edges.push_back({v, v + 1, Scalar(1)});
      if (y + 1 < h) edges.push_back({v, v + w, Scalar(1)});
    }
  auto g = validate_graph(n, edges);
  auto pf = default_alpha(n);
  auto res = petal_decomposition_spanning_tree(g, gen_ordering(n, 77), pf);
  REQUIRE(static_cast<int>(res.edge_indices.size()) == n - 1);
  for (const auto& cl : res.clusters)
    for (const auto& r : cl.petal_radii) REQUIRE(r * 8 <= cl.radius);
}

TEST_CASE("ultrametric on a metric with many duplicate distances") {
  // two-valued metric: blocks at distance 1 inside, 5 across
  int n = 12;
  std::vector<Scalar> d(n * n, Scalar(0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) d[a * n + b] = (a / 4 == b / 4) ? Scalar(1) : Scalar(5);
  auto m = validate_metric(n, d);
  auto pf = default_alpha(n);
  auto u = build_ultrametric(m, gen_ordering(n, 8), pf);
  auto lm = u.leaf_metric();
  auto ranks = gen_ordering(n, 8).ranks();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      REQUIRE(lm.d(a, b) >= m.d(a, b));
      REQUIRE(lm.d(a, b) <= 2 * pf.at(std::min(ranks[a], ranks[b])) * m.d(a, b));
    }
  // pairs whose budget forbids paying the top-level diameter must not be
  // separated there: 2 alpha(j) d < 5 implies an ultrametric distance < 5
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (a / 4 == b / 4 && 2 * pf.at(std::min(ranks[a], ranks[b])) * m.d(a, b) < 5)
        REQUIRE(lm.d(a, b) < 5);
}

TEST_CASE("spanning tree with an alpha certified for more points than n") {
  auto g = gen_graph(10, 31, 9);
  auto pf = default_alpha(64);  // larger certificate is fine
  auto res = petal_decomposition_spanning_tree(g, identity_ordering(10), pf);
  REQUIRE(static_cast<int>(res.edge_indices.size()) == 9);
}
