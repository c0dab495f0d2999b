#include <doctest.h>

#include <cmath>

#include "priomet/frechet.hpp"
#include "priomet/generate.hpp"
#include "priomet/json_io.hpp"

using namespace priomet;

TEST_CASE("distortion copies: k = 1 gives one copy each") {
  auto m = gen_metric(9, 4, 10);
  auto cs = build_copied_space_distortion(m, identity_ordering(9), 1);
  for (auto mult : cs.multiplicity) CHECK(mult == 1);
  CHECK(cs.total == 9);
}

TEST_CASE("distortion copies: n = 4, k = 2 from the closed formula") {
  auto m = gen_metric(4, 1, 5);
  auto cs = build_copied_space_distortion(m, identity_ordering(4), 2);
  // S_1 = ranks 1..2 with ceil(sqrt(16)) = 4 copies, S_2 = ranks 3..4 with 1
  CHECK(cs.multiplicity == std::vector<long long>{4, 4, 1, 1});
  CHECK(cs.total == 10);
}

TEST_CASE("distortion copies are non-increasing and within the N bound") {
  for (int n : {7, 32, 100}) {
    auto m = gen_metric(n, n, 10);
    for (int k : {1, 2, 3, 5}) {
      auto cs = build_copied_space_distortion(m, identity_ordering(n), k);
      for (int j = 1; j < n; ++j) CHECK(cs.multiplicity[j] <= cs.multiplicity[j - 1]);
      CHECK(big(cs.total) <= (BigInt(1) << k) * n + n);
    }
  }
}

TEST_CASE("dimension copies: n = 16 matches the C(i) formula") {
  auto m = gen_metric(16, 2, 5);
  auto cs = build_copied_space_dimension(m, identity_ordering(16));
  // L = 2, C(0) = 16*9/(4*4) = 9 for ranks 3..4, C(1) = 16*9/(16*9) = 1
  CHECK(cs.multiplicity[0] == 1);  // x_1
  CHECK(cs.multiplicity[1] == 1);  // x_2
  CHECK(cs.multiplicity[2] == 9);
  CHECK(cs.multiplicity[3] == 9);
  for (int j = 5; j <= 16; ++j) CHECK(cs.multiplicity[j - 1] == 1);
  for (int j = 3; j < 16; ++j) CHECK(cs.multiplicity[j] <= cs.multiplicity[j - 1]);
}

TEST_CASE("dimension levels") {
  CHECK(dimension_level(3) == 0);
  CHECK(dimension_level(4) == 0);
  CHECK(dimension_level(5) == 1);
  CHECK(dimension_level(16) == 1);
  CHECK(dimension_level(17) == 2);
  CHECK(dimension_level(256) == 2);
  CHECK(dimension_level(257) == 3);
}

TEST_CASE("distortion embedding: coordinate count is exactly k * ceil(c N^(1/k) ln N)") {
  auto m = gen_metric(10, 5, 8);
  SampleConfig cfg{2, 16, 12345};
  auto cs = build_copied_space_distortion(m, identity_ordering(10), 2);
  auto fe = embed_linf_distortion(m, identity_ordering(10), cfg);
  long expected_m = ceil_c_root_ln(16, big(cs.total), 2);
  CHECK(fe.embedding.dim == 2 * expected_m);
  CHECK(fe.coords.size() == static_cast<size_t>(fe.embedding.dim));
}

TEST_CASE("frechet embeddings are non-expansive and deterministic") {
  auto m = gen_metric(24, 9, 12);
  auto ord = gen_ordering(24, 3);
  for (int mode = 0; mode < 2; ++mode) {
    SampleConfig cfg{2, 16, 777};
    auto a = mode == 0 ? embed_linf_distortion(m, ord, cfg) : embed_linf_dimension(m, ord, cfg);
    auto b = mode == 0 ? embed_linf_distortion(m, ord, cfg) : embed_linf_dimension(m, ord, cfg);
    CHECK(is_non_expansive(m, a.embedding));
    REQUIRE(a.embedding.dim == b.embedding.dim);
    CHECK(embedding_to_json(a.embedding) == embedding_to_json(b.embedding));
    cfg.seed = 778;
    auto c = mode == 0 ? embed_linf_distortion(m, ord, cfg) : embed_linf_dimension(m, ord, cfg);
    CHECK(embedding_to_json(a.embedding) != embedding_to_json(c.embedding));
  }
}

TEST_CASE("n = 2, k = 1: the pair reaches distortion exactly 1 within 3 seeds") {
  auto m = validate_metric(2, {Scalar(0), Scalar(3), Scalar(3), Scalar(0)});
  bool ok = false;
  for (std::uint64_t seed = 1; seed <= 3 && !ok; ++seed) {
    auto fe = embed_linf_distortion(m, identity_ordering(2), SampleConfig{1, 16, seed});
    ok = linf_distance(fe.embedding.vectors[0], fe.embedding.vectors[1]) == 3;
  }
  CHECK(ok);
}

TEST_CASE("anchors give exact distortion for ranks 1 and 2 in the dimension mode") {
  auto m = gen_metric(20, 8, 9);
  auto ord = gen_ordering(20, 4);
  auto fe = embed_linf_dimension(m, ord, SampleConfig{2, 16, 5});
  int x1 = ord.point_of_rank(1), x2 = ord.point_of_rank(2);
  CHECK(fe.embedding.vectors[x1][0] == 0);
  CHECK(fe.embedding.vectors[x2][1] == 0);
  for (int y = 0; y < 20; ++y) {
    if (y != x1)
      CHECK(abs_scalar(fe.embedding.vectors[x1][0] - fe.embedding.vectors[y][0]) == m.d(x1, y));
    if (y != x2)
      CHECK(abs_scalar(fe.embedding.vectors[x2][1] - fe.embedding.vectors[y][1]) == m.d(x2, y));
  }
}

TEST_CASE("dimension-mode distortion bound at a small scale, three-seed protocol") {
  int n = 64, k = 2;
  auto m = gen_metric(n, 21, 10);
  auto ord = gen_ordering(n, 22);
  auto ranks = ord.ranks();
  bool ok = false;
  for (std::uint64_t seed = 1; seed <= 3 && !ok; ++seed) {
    auto fe = embed_linf_dimension(m, ord, SampleConfig{k, 16, seed});
    auto rep = distortion_report(m, fe.embedding, ord);
    ok = true;
    for (int j = 1; j <= n && ok; ++j) {
      const auto& e = rep.per_j[j - 1];
      if (e.contraction.infinite) {
        ok = false;
        break;
      }
      long bound = j <= 2 ? 1 : 2l * k * (dimension_level(j) + 1) + 1;
      // ceil(log2 log2 j) >= level + 1 for j >= 3, so this is the tighter check
      if (e.contraction.value > bound) ok = false;
      if (e.expansion.value > 1) ok = false;
    }
  }
  CHECK(ok);
}

TEST_CASE("distortion-mode per-rank bound at a small scale, three-seed protocol") {
  int n = 32, k = 2;
  auto m = gen_metric(n, 31, 10);
  auto ord = gen_ordering(n, 32);
  bool ok = false;
  for (std::uint64_t seed = 1; seed <= 3 && !ok; ++seed) {
    auto fe = embed_linf_distortion(m, ord, SampleConfig{k, 16, seed});
    auto rep = distortion_report(m, fe.embedding, ord);
    ok = true;
    for (int j = 1; j <= n && ok; ++j) {
      const auto& e = rep.per_j[j - 1];
      if (e.contraction.infinite) {
        ok = false;
        break;
      }
      long bound = 2l * distortion_level(j, n, k) - 1;
      if (e.contraction.value > bound) ok = false;
      if (e.expansion.value > 1) ok = false;
    }
  }
  CHECK(ok);
}

TEST_CASE("degenerate sizes") {
  // n = 1: distortion mode gives dimension 0
  MetricSpace one;
  one.n = 1;
  one.dist = {Scalar(0)};
  auto fe1 = embed_linf_distortion(one, identity_ordering(1), SampleConfig{1, 16, 1});
  CHECK(fe1.embedding.dim == 0);
  // n = 2: dimension mode degenerates to anchors + E sets and stays exact
  auto m2 = validate_metric(2, {Scalar(0), Scalar(5), Scalar(5), Scalar(0)});
  auto fe2 = embed_linf_dimension(m2, identity_ordering(2), SampleConfig{1, 16, 1});
  CHECK(fe2.embedding.dim >= 2);
  CHECK(linf_distance(fe2.embedding.vectors[0], fe2.embedding.vectors[1]) == 5);
  CHECK_THROWS_AS(build_copied_space_dimension(m2, identity_ordering(2)), ValidationError);
}

TEST_CASE("an empty sampled set yields the identically-zero coordinate") {
  auto m = gen_metric(4, 2, 5);
  bool found_empty = false;
  for (std::uint64_t seed = 1; seed <= 5 && !found_empty; ++seed) {
    auto fe = embed_linf_distortion(m, identity_ordering(4), SampleConfig{1, 16, seed});
    for (size_t c = 0; c < fe.coords.size(); ++c) {
      if (fe.coords[c].set_size != 0) continue;
      found_empty = true;
      for (int x = 0; x < 4; ++x) CHECK(fe.embedding.vectors[x][c] == 0);
    }
  }
  CHECK(found_empty);  // with p = 1/N and N = 4, empty sets occur quickly
}

TEST_CASE("a sampled set containing x gives x a zero coordinate") {
  // uniform metric: every nonmember sits at distance 1 from each member,
  // so values are exactly the membership complement indicator
  int n = 6;
  std::vector<Scalar> d(n * n, Scalar(1));
  for (int i = 0; i < n; ++i) d[i * n + i] = 0;
  auto m = validate_metric(n, d);
  auto fe = embed_linf_distortion(m, identity_ordering(n), SampleConfig{1, 16, 3});
  for (size_t c = 0; c < fe.coords.size(); ++c) {
    long long zeros = 0;
    for (int x = 0; x < n; ++x) {
      const Scalar& v = fe.embedding.vectors[x][c];
      CHECK((v == 0 || v == 1));
      if (v == 0) ++zeros;
    }
    if (fe.coords[c].set_size == 0) {
      CHECK(zeros == n);
    } else {
      // members (copies collapse onto base points) are exactly the zeros
      CHECK(zeros >= 1);
      CHECK(zeros <= fe.coords[c].set_size);
    }
  }
}

TEST_CASE("manifest records one entry per coordinate with sane probabilities") {
  auto m = gen_metric(12, 6, 7);
  auto fe = embed_linf_dimension(m, identity_ordering(12), SampleConfig{2, 16, 9});
  REQUIRE(fe.coords.size() == static_cast<size_t>(fe.embedding.dim));
  CHECK(fe.coords[0].label == "anchor(1)");
  CHECK(fe.coords[1].label == "anchor(2)");
  bool saw_e = false, saw_a = false;
  for (const auto& c : fe.coords) {
    if (c.label == "E") saw_e = true;
    if (c.label.rfind("A(s=", 0) == 0) saw_a = true;
  }
  CHECK(saw_e);
  CHECK(saw_a);
}
