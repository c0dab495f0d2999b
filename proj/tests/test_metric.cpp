#include <doctest.h>

#include "oracles.hpp"
#include "priomet/embedding.hpp"
#include "priomet/generate.hpp"
#include "priomet/metric.hpp"

using namespace priomet;

namespace {

std::vector<Scalar> row(std::initializer_list<long> vals) {
  std::vector<Scalar> out;
  for (long v : vals) out.push_back(Scalar(v));
  return out;
}

}  // namespace

TEST_CASE("validate_metric accepts the smallest metric") {
  auto m = validate_metric(2, row({0, 1, 1, 0}));
  CHECK(m.n == 2);
  CHECK(m.d(0, 1) == 1);
}

TEST_CASE("validate_metric rejects with witnesses") {
  CHECK_THROWS_WITH_AS(validate_metric(2, row({0, 1, 2, 0})), doctest::Contains("Asymmetric"),
                       ValidationError);
  try {
    validate_metric(2, row({0, 1, 2, 0}));
  } catch (const ValidationError& e) {
    CHECK(e.kind == ErrorKind::Asymmetric);
    CHECK(e.witness[0] == 0);
    CHECK(e.witness[1] == 1);
  }
  CHECK_THROWS_AS(validate_metric(2, row({1, 1, 1, 0})), ValidationError);
  CHECK_THROWS_AS(validate_metric(2, row({0, 0, 0, 0})), ValidationError);

  // d(0,2) = 3 > 1 + 1
  try {
    validate_metric(3, row({0, 1, 3, 1, 0, 1, 3, 1, 0}));
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(e.kind == ErrorKind::TriangleViolation);
  }
}

TEST_CASE("linf_distance") {
  CHECK(linf_distance(row({0, 0}), row({0, 0})) == 0);
  CHECK(linf_distance(row({1, -2}), row({0, 1})) == 3);
  CHECK(linf_distance(row({5}), row({2})) == 3);
  CHECK_THROWS_AS(linf_distance(row({1}), row({1, 2})), ValidationError);
}

TEST_CASE("classic Frechet row map is an isometry (brute-force oracle)") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    auto m = gen_metric(12, seed, 20);
    Embedding f;
    f.dim = m.n;
    for (int i = 0; i < m.n; ++i) {
      std::vector<Scalar> vec(m.n);
      for (int j = 0; j < m.n; ++j) vec[j] = m.d(i, j);
      f.vectors.push_back(std::move(vec));
    }
    // oracle: check the definition directly
    for (int u = 0; u < m.n; ++u)
      for (int v = u + 1; v < m.n; ++v) {
        Scalar norm = 0;
        for (int c = 0; c < m.n; ++c) {
          Scalar diff = abs_scalar(f.vectors[u][c] - f.vectors[v][c]);
          if (diff > norm) norm = diff;
        }
        REQUIRE(norm == m.d(u, v));
      }
    auto rep = distortion_report(m, f, identity_ordering(m.n));
    for (const auto& e : rep.per_j) {
      CHECK(!e.expansion.infinite);
      CHECK(e.expansion.value == 1);
      CHECK(!e.contraction.infinite);
      CHECK(e.contraction.value == 1);
    }
    CHECK(rep.global.value == 1);
  }
}

TEST_CASE("distortion_report: halved embedding contracts by 2") {
  auto m = validate_metric(2, row({0, 1, 1, 0}));
  Embedding f;
  f.dim = 1;
  f.vectors = {row({0}), {Scalar(1, 2)}};
  auto rep = distortion_report(m, f, identity_ordering(2));
  for (const auto& e : rep.per_j) {
    CHECK(e.contraction.value == 2);
    CHECK(e.expansion.value == Scalar(1, 2));
  }
}

TEST_CASE("distortion_report: n=1 gives an empty report, collisions are infinite") {
  MetricSpace one;
  one.n = 1;
  one.dist = {Scalar(0)};
  Embedding f;
  f.dim = 2;
  f.vectors = {row({3, 4})};
  auto rep = distortion_report(one, f, identity_ordering(1));
  CHECK(rep.per_j.size() == 1);
  CHECK(rep.global.value == 0);  // max over an empty pair set

  auto m = validate_metric(2, row({0, 5, 5, 0}));
  Embedding g;
  g.dim = 1;
  g.vectors = {row({7}), row({7})};
  auto rep2 = distortion_report(m, g, identity_ordering(2));
  CHECK(rep2.per_j[0].contraction.infinite);
  CHECK(rep2.global.infinite);
}

TEST_CASE("distortion_report is permutation-equivariant") {
  auto m = gen_metric(10, 99, 30);
  Embedding f;
  f.dim = m.n;
  for (int i = 0; i < m.n; ++i) {
    std::vector<Scalar> vec(m.n);
    for (int j = 0; j < m.n; ++j) vec[j] = m.d(i, j) / 2;  // contract everything
    f.vectors.push_back(std::move(vec));
  }
  auto ord = gen_ordering(10, 5);
  auto rep = distortion_report(m, f, ord);
  // relabel points by a permutation pi and permute everything consistently
  auto pi = gen_ordering(10, 6).perm;
  MetricSpace m2;
  m2.n = 10;
  m2.dist.resize(100);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) m2.d(pi[i], pi[j]) = m.d(i, j);
  Embedding f2;
  f2.dim = f.dim;
  f2.vectors.resize(10);
  for (int i = 0; i < 10; ++i) f2.vectors[pi[i]] = f.vectors[i];
  PriorityOrdering ord2;
  ord2.perm.resize(10);
  for (int j = 0; j < 10; ++j) ord2.perm[j] = pi[ord.perm[j]];
  auto rep2 = distortion_report(m2, f2, ord2);
  for (int j = 0; j < 10; ++j) {
    CHECK(rep.per_j[j].expansion.value == rep2.per_j[j].expansion.value);
    CHECK(rep.per_j[j].contraction.value == rep2.per_j[j].contraction.value);
  }
}

TEST_CASE("distortion_report parallel and serial agree") {
  auto m = gen_metric(24, 4, 50);
  Embedding f;
  f.dim = m.n;
  for (int i = 0; i < m.n; ++i) {
    std::vector<Scalar> vec(m.n);
    for (int j = 0; j < m.n; ++j) vec[j] = m.d(i, j);
    f.vectors.push_back(std::move(vec));
  }
  auto ord = gen_ordering(24, 11);
  auto serial = distortion_report(m, f, ord, 1);
  auto parallel = distortion_report(m, f, ord, 4);
  for (int j = 0; j < 24; ++j) {
    CHECK(serial.per_j[j].expansion.value == parallel.per_j[j].expansion.value);
    CHECK(serial.per_j[j].contraction.value == parallel.per_j[j].contraction.value);
    CHECK(serial.per_j[j].witness_expansion == parallel.per_j[j].witness_expansion);
  }
}

TEST_CASE("dimension_report") {
  Embedding f;
  f.dim = 4;
  f.vectors = {row({0, 3, 0, 0}), row({0, 0, 0, 0}), row({5, 0, 0, 0})};
  auto rep = dimension_report(f, identity_ordering(3));
  CHECK(rep.per_j == std::vector<int>{2, 0, 1});
  // beta(j) = 0 iff the zero vector
  for (int j = 1; j <= 3; ++j) {
    bool zero = true;
    for (const auto& v : f.vectors[j - 1])
      if (v != 0) zero = false;
    CHECK((rep.per_j[j - 1] == 0) == zero);
  }
}
