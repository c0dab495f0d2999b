#include <doctest.h>

#include "oracles.hpp"
#include "priomet/generate.hpp"
#include "priomet/graph.hpp"

using namespace priomet;

TEST_CASE("shortest_path_metric on tiny graphs") {
  // triangle, unit weights
  auto g = validate_graph(3, {{0, 1, Scalar(1)}, {1, 2, Scalar(1)}, {0, 2, Scalar(1)}});
  auto m = shortest_path_metric(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.d(i, j) == (i == j ? 0 : 1));

  // path a-b-c with weights 2 and 3
  auto p = validate_graph(3, {{0, 1, Scalar(2)}, {1, 2, Scalar(3)}});
  auto mp = shortest_path_metric(p);
  CHECK(mp.d(0, 2) == 5);
}

TEST_CASE("shortest_path_metric equals an independent single-source oracle") {
  auto g = gen_graph(20, 31337, 25, true);
  auto m = shortest_path_metric(g);
  for (int s = 0; s < g.n; ++s) {
    auto oracle = oracles::bellman_ford(g.n, g.edges, s);
    for (int v = 0; v < g.n; ++v) {
      REQUIRE(oracle[v].has_value());
      REQUIRE(m.d(s, v) == *oracle[v]);
    }
  }
  // shortest-path metrics always validate (triangle inequality)
  CHECK_NOTHROW(validate_metric(m.n, m.dist));
}

TEST_CASE("shortest_path_metric rejects disconnected graphs") {
  WeightedGraph g;  // built directly to bypass validate_graph
  g.n = 3;
  g.edges = {{0, 1, Scalar(1)}};
  try {
    shortest_path_metric(g);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.kind == ErrorKind::Disconnected);
  }
}

TEST_CASE("graph validation policies") {
  CHECK_THROWS_AS(validate_graph(3, {{0, 1, Scalar(1)}}), ValidationError);  // disconnected
  CHECK_THROWS_AS(validate_graph(2, {{0, 0, Scalar(1)}}), ValidationError);  // self-loop
  CHECK_THROWS_AS(validate_graph(2, {{0, 1, Scalar(0)}}), ValidationError);  // weight
  // parallel edges dedupe to the minimum
  auto g = validate_graph(2, {{0, 1, Scalar(5)}, {1, 0, Scalar(3)}, {0, 1, Scalar(4)}});
  CHECK(g.edges.size() == 1);
  CHECK(g.edges[0].w == 3);
}

TEST_CASE("tree helpers") {
  auto t = validate_tree(4, {0, 0, 0, 0},
                         {{0, 1, Scalar(2)}, {1, 2, Scalar(3)}, {1, 3, Scalar(1)}});
  auto d = t.distances_from(0);
  CHECK(d[2] == 5);
  CHECK(d[3] == 3);
  auto path = t.path(0, 2);
  CHECK(path == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(validate_tree(3, {0, 0, 0}, {{0, 1, Scalar(1)}}), ValidationError);
  // strict validation rejects Steiner leaves
  CHECK_THROWS_AS(validate_tree(2, {0, 1}, {{0, 1, Scalar(1)}}, true), ValidationError);
  CHECK_NOTHROW(validate_tree(2, {0, 1}, {{0, 1, Scalar(1)}}, false));
}

TEST_CASE("generators are deterministic and valid") {
  auto t1 = gen_tree(30, 7), t2 = gen_tree(30, 7);
  CHECK(t1.edges.size() == t2.edges.size());
  for (size_t i = 0; i < t1.edges.size(); ++i) {
    CHECK(t1.edges[i].u == t2.edges[i].u);
    CHECK(t1.edges[i].v == t2.edges[i].v);
    CHECK(t1.edges[i].w == t2.edges[i].w);
  }
  auto g1 = gen_graph(50, 7), g2 = gen_graph(50, 7);
  CHECK(g1.edges.size() == g2.edges.size());
  auto o1 = gen_ordering(50, 9), o2 = gen_ordering(50, 9);
  CHECK(o1.perm == o2.perm);
  CHECK(gen_tree(30, 8).edges.size() == 29);
  // distinct seeds differ
  CHECK(gen_ordering(50, 9).perm != gen_ordering(50, 10).perm);
}
