#include "priomet/embedding.hpp"

#include <algorithm>

#include "priomet/util.hpp"

namespace priomet {

namespace {

// Flattened int64 view of an embedding, when every coordinate is a small
// integer. The audit inner loop is ~50x faster on machine words and stays
// exact; rational inputs fall back to the mpq path.
std::optional<std::vector<long long>> int64_flatten(const Embedding& f) {
  const long long kLimit = 1ll << 62;
  std::vector<long long> flat;
  flat.reserve(static_cast<size_t>(f.n()) * f.dim);
  for (const auto& row : f.vectors) {
    for (const auto& v : row) {
      if (v.get_den() != 1 || !v.get_num().fits_slong_p()) return std::nullopt;
      long long x = v.get_num().get_si();
      if (x >= kLimit || x <= -kLimit) return std::nullopt;
      flat.push_back(x);
    }
  }
  return flat;
}

long long linf_int(const long long* a, const long long* b, int dim) {
  long long best = 0;
  for (int c = 0; c < dim; ++c) {
    long long diff = a[c] - b[c];
    if (diff < 0) diff = -diff;
    if (diff > best) best = diff;
  }
  return best;
}

Scalar linf_row(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  Scalar best = 0;
  for (size_t c = 0; c < a.size(); ++c) {
    Scalar diff = a[c] >= b[c] ? Scalar(a[c] - b[c]) : Scalar(b[c] - a[c]);
    if (diff > best) best = diff;
  }
  return best;
}

void fold_pair(DistortionReport::Entry& e, const Scalar& d, const Scalar& norm, int other) {
  if (norm == 0) {
    if (!e.contraction.infinite) {
      e.contraction = Ratio::inf();
      e.witness_contraction = other;
    }
  } else {
    Ratio c = Ratio::of(d / norm);
    if (e.contraction < c) {
      e.contraction = c;
      e.witness_contraction = other;
    }
  }
  Ratio x = Ratio::of(norm / d);
  if (e.expansion < x) {
    e.expansion = x;
    e.witness_expansion = other;
  }
}

}  // namespace

DistortionReport distortion_report(const MetricSpace& m, const Embedding& f,
                                   const PriorityOrdering& ord, unsigned threads) {
  require_invariant(f.n() == m.n && ord.n() == m.n, "distortion_report: size mismatch");
  DistortionReport rep;
  int n = m.n;
  rep.per_j.resize(n);
  for (int j = 1; j <= n; ++j) {
    rep.per_j[j - 1].rank = j;
    rep.per_j[j - 1].point = ord.point_of_rank(j);
    rep.per_j[j - 1].expansion = Ratio::of(Scalar(0));
    rep.per_j[j - 1].contraction = Ratio::of(Scalar(0));
  }
  if (n < 2) {
    rep.global = Ratio::of(Scalar(0));
    return rep;
  }

  auto mirror = m.int64_mirror();
  auto flat = mirror ? int64_flatten(f) : std::nullopt;

  // Each rank entry is computed independently over all partners of x_j,
  // so the parallel split is per rank and deterministic.
  if (flat) {
    const auto& dm = *mirror;
    const auto& fm = *flat;
    parallel_for(static_cast<size_t>(n), [&](size_t idx) {
      auto& entry = rep.per_j[idx];
      int p = entry.point;
      // track extrema as exact integer cross-products, convert once at the end
      long long be_n = 0, be_d = 1, bc_n = 0, bc_d = 1;
      bool c_inf = false;
      for (int q = 0; q < n; ++q) {
        if (q == p) continue;
        long long d = dm[static_cast<size_t>(p) * n + q];
        long long norm = linf_int(&fm[static_cast<size_t>(p) * f.dim],
                                  &fm[static_cast<size_t>(q) * f.dim], f.dim);
        if (norm == 0) {
          if (!c_inf) {
            c_inf = true;
            entry.witness_contraction = q;
          }
        } else if (!c_inf) {
          // d/norm > bc_n/bc_d  <=>  d*bc_d > bc_n*norm
          if (static_cast<__int128>(d) * bc_d > static_cast<__int128>(bc_n) * norm) {
            bc_n = d;
            bc_d = norm;
            entry.witness_contraction = q;
          }
        }
        if (static_cast<__int128>(norm) * be_d > static_cast<__int128>(be_n) * d) {
          be_n = norm;
          be_d = d;
          entry.witness_expansion = q;
        }
      }
      Scalar exp_ratio(big(be_n), big(be_d));
      exp_ratio.canonicalize();
      entry.expansion = Ratio::of(std::move(exp_ratio));
      if (c_inf) {
        entry.contraction = Ratio::inf();
      } else {
        Scalar con_ratio(big(bc_n), big(bc_d));
        con_ratio.canonicalize();
        entry.contraction = Ratio::of(std::move(con_ratio));
      }
    }, threads);
  } else {
    parallel_for(static_cast<size_t>(n), [&](size_t idx) {
      auto& entry = rep.per_j[idx];
      int p = entry.point;
      for (int q = 0; q < n; ++q) {
        if (q == p) continue;
        Scalar norm = linf_row(f.vectors[p], f.vectors[q]);
        fold_pair(entry, m.d(p, q), norm, q);
      }
    }, threads);
  }

  rep.global = Ratio::of(Scalar(0));
  for (const auto& e : rep.per_j) {
    if (rep.global < e.expansion) rep.global = e.expansion;
    if (rep.global < e.contraction) rep.global = e.contraction;
  }
  return rep;
}

DimensionReport dimension_report(const Embedding& f, const PriorityOrdering& ord) {
  DimensionReport rep;
  rep.per_j.resize(ord.n(), 0);
  for (int j = 1; j <= ord.n(); ++j) {
    const auto& row = f.vectors[ord.point_of_rank(j)];
    int beta = 0;
    for (int c = static_cast<int>(row.size()) - 1; c >= 0; --c)
      if (row[c] != 0) {
        beta = c + 1;
        break;
      }
    rep.per_j[j - 1] = beta;
  }
  return rep;
}

bool is_non_expansive(const MetricSpace& m, const Embedding& f) {
  for (int u = 0; u < m.n; ++u)
    for (int v = u + 1; v < m.n; ++v)
      if (linf_row(f.vectors[u], f.vectors[v]) > m.d(u, v)) return false;
  return true;
}

bool is_isometry(const MetricSpace& m, const Embedding& f) {
  for (int u = 0; u < m.n; ++u)
    for (int v = u + 1; v < m.n; ++v)
      if (linf_row(f.vectors[u], f.vectors[v]) != m.d(u, v)) return false;
  return true;
}

}  // namespace priomet
