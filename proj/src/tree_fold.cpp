#include "priomet/tree_fold.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>

namespace priomet {

namespace {

long ceil_log2_long(long b) {
  long e = 0;
  long v = 1;
  while (v < b) {
    v *= 2;
    ++e;
  }
  return e;
}

// Dimension accounting: 4*ceil(log2 b) + 1 expected, +3 slack
// tolerated before declaring the build broken.
void check_level_dimension(int width, long terminals) {
  long b = terminals - 1;
  long cap = b <= 0 ? 0 : 4 * ceil_log2_long(b) + 1;
  require_invariant(width <= cap + 3, "embedding dimension exceeds its accounting");
}

}  // namespace

FoldResult fold_path(const WeightedTree& t, int u, int v) {
  if (u == v)
    throw ValidationError(ErrorKind::SameVertex, "fold endpoints coincide", {u, v, -1});
  if (u < 0 || u >= t.n || v < 0 || v >= t.n)
    throw ValidationError(ErrorKind::InvalidParams, "fold endpoint out of range");

  FoldResult out;
  auto pv = t.path(u, v);
  int hops = static_cast<int>(pv.size()) - 1;

  auto adj = t.adjacency();
  auto edge_weight = [&](int a, int b) -> const Scalar& {
    for (auto [w, ei] : adj[a])
      if (w == b) return t.edges[ei].w;
    throw InvariantBreach("path edge missing from adjacency");
  };
  std::vector<Scalar> cum(hops + 1);
  cum[0] = 0;
  for (int i = 1; i <= hops; ++i) cum[i] = cum[i - 1] + edge_weight(pv[i - 1], pv[i]);
  const Scalar total = cum[hops];
  const Scalar half = total / 2;

  // Mirror-closed position set; sorted, so pos[P-1-i] = total - pos[i].
  std::set<Scalar> posset;
  for (const auto& c : cum) {
    posset.insert(c);
    posset.insert(total - c);
  }
  posset.insert(half);
  std::vector<Scalar> pos(posset.begin(), posset.end());
  int P = static_cast<int>(pos.size());
  require_invariant(P % 2 == 1 && pos[(P - 1) / 2] == half, "position set not symmetric");
  int H = (P - 1) / 2;

  // Subdivided tree: original ids preserved, Steiner mirrors appended.
  std::vector<int> vert_at(P, -1);
  {
    int pi = 0;
    for (int i = 0; i <= hops; ++i) {
      while (pos[pi] != cum[i]) ++pi;
      vert_at[pi] = pv[i];
    }
  }
  int sub_n = t.n;
  std::vector<char> sub_steiner(t.steiner);
  for (int i = 0; i < P; ++i)
    if (vert_at[i] == -1) {
      vert_at[i] = sub_n++;
      sub_steiner.push_back(1);
    }
  std::vector<char> on_path_orig(t.n, 0);
  for (int x : pv) on_path_orig[x] = 1;
  std::vector<Edge> sub_edges;
  sub_edges.reserve(t.edges.size() + P);
  for (const auto& e : t.edges)
    if (!(on_path_orig[e.u] && on_path_orig[e.v])) sub_edges.push_back(e);
  for (int i = 0; i + 1 < P; ++i)
    sub_edges.push_back({vert_at[i], vert_at[i + 1], pos[i + 1] - pos[i]});
  out.subdivided = WeightedTree{sub_n, sub_steiner, sub_edges};
  out.path_vertices.assign(vert_at.begin(), vert_at.end());
  out.path_positions = pos;
  out.path_length = total;
  out.folding_point_subdivided = vert_at[H];

  // Folded tree: off-path vertices keep their relative order, then one slot
  // per position <= half; position q merges with total - q.
  std::vector<char> sub_on_path(sub_n, 0);
  for (int x : vert_at) sub_on_path[x] = 1;
  std::vector<int> sub2fold(sub_n, -1);
  int fn = 0;
  for (int x = 0; x < sub_n; ++x)
    if (!sub_on_path[x]) sub2fold[x] = fn++;
  std::vector<int> slot_id(H + 1);
  for (int i = 0; i <= H; ++i) slot_id[i] = fn++;
  std::vector<char> f_steiner(fn, 1);
  for (int x = 0; x < sub_n; ++x)
    if (!sub_on_path[x]) f_steiner[sub2fold[x]] = sub_steiner[x];
  for (int i = 0; i < P; ++i) {
    int slot = slot_id[i <= H ? i : P - 1 - i];
    sub2fold[vert_at[i]] = slot;
    if (!sub_steiner[vert_at[i]]) f_steiner[slot] = 0;
  }

  std::vector<Edge> f_edges;
  f_edges.reserve(fn);
  std::map<std::pair<int, int>, Scalar> dedupe;
  auto push_edge = [&](int a, int b, const Scalar& w) {
    auto key = std::minmax(a, b);
    auto it = dedupe.find(key);
    if (it == dedupe.end())
      dedupe[key] = w;
    else if (w < it->second)
      it->second = w;  // parallel edges keep the shorter one
  };
  for (const auto& e : t.edges)
    if (!(on_path_orig[e.u] && on_path_orig[e.v]))
      push_edge(sub2fold[e.u], sub2fold[e.v], e.w);
  for (int i = 0; i < H; ++i) push_edge(slot_id[i], slot_id[i + 1], pos[i + 1] - pos[i]);
  for (const auto& [key, w] : dedupe) f_edges.push_back({key.first, key.second, w});
  out.folded_tree = validate_tree(fn, f_steiner, f_edges);  // Claim: folding keeps a tree
  out.folding_point = slot_id[H];
  out.sub_to_folded = sub2fold;
  out.merged.assign(sub2fold.begin(), sub2fold.begin() + t.n);
  for (int i = 0; i < H; ++i)
    if (pos[i] != total - pos[i]) out.identified_pairs.push_back({vert_at[i], vert_at[P - 1 - i]});
  return out;
}

bool crosses(const WeightedTree& t, int u, int v, const FoldResult& fold) {
  (void)t;
  require_invariant(u >= 0 && v >= 0 && u < fold.subdivided.n && v < fold.subdivided.n,
                    "crosses: vertex outside fold's tree");
  if (u == v) return false;
  auto pv = fold.subdivided.path(u, v);
  std::map<int, int> position_index;
  for (size_t i = 0; i < fold.path_vertices.size(); ++i)
    position_index[fold.path_vertices[i]] = static_cast<int>(i);
  int lo = INT_MAX, hi = -1;
  for (int x : pv) {
    auto it = position_index.find(x);
    if (it != position_index.end()) {
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
    }
  }
  if (hi < 0) return false;
  Scalar half = fold.path_length / 2;
  return fold.path_positions[lo] < half && fold.path_positions[hi] > half;
}

KFoldingRecord k_folding(const WeightedTree& t, std::vector<int> K) {
  if (K.empty()) throw ValidationError(ErrorKind::EmptyTerminalSet, "K must be nonempty");
  std::sort(K.begin(), K.end());
  K.erase(std::unique(K.begin(), K.end()), K.end());
  for (int x : K)
    if (x < 0 || x >= t.n)
      throw ValidationError(ErrorKind::InvalidParams, "terminal out of range", {x, -1, -1});

  KFoldingRecord rec;
  WeightedTree cur = t;
  std::vector<int> rep(t.n);
  std::iota(rep.begin(), rep.end(), 0);

  auto distinct_reps = [&] {
    std::set<int> s;
    for (int x : K) s.insert(rep[x]);
    return std::vector<int>(s.begin(), s.end());
  };

  for (auto reps = distinct_reps(); reps.size() > 1; reps = distinct_reps()) {
    // closest unmerged pair, ties to the smallest id pair
    int ba = -1, bb = -1;
    Scalar bd;
    for (size_t i = 0; i < reps.size(); ++i) {
      auto dist = cur.distances_from(reps[i]);
      for (size_t j = i + 1; j < reps.size(); ++j) {
        const Scalar& d = dist[reps[j]];
        if (ba == -1 || d < bd ||
            (d == bd && std::minmax(reps[i], reps[j]) < std::minmax(ba, bb))) {
          ba = reps[i];
          bb = reps[j];
          bd = d;
        }
      }
    }
    FoldResult fr = fold_path(cur, std::min(ba, bb), std::max(ba, bb));
    for (int v = 0; v < t.n; ++v) rep[v] = fr.sub_to_folded[rep[v]];
    for (int& fp : rec.folding_points) fp = fr.sub_to_folded[fp];
    rec.folding_points.push_back(fr.folding_point);
    rec.trace.push_back({std::min(ba, bb), std::max(ba, bb), fr.folding_point});
    cur = fr.folded_tree;
    rec.steps.push_back(std::move(fr));
  }
  require_invariant(rec.steps.size() <= K.size() - (K.empty() ? 0 : 1),
                    "k_folding performed too many folds");
  rec.final_tree = cur;
  rec.merged = rep;
  rec.merged_vertex = rep[K[0]];
  return rec;
}

SeparatorSplit tree_separator(const WeightedTree& t, const std::vector<int>& K) {
  std::vector<int> terms(K);
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  int m = static_cast<int>(terms.size());
  if (m == 0) throw ValidationError(ErrorKind::EmptyTerminalSet, "separator needs terminals");

  SeparatorSplit out;
  if (m == 1) {
    out.shared = terms[0];
    out.side1.resize(t.n);
    std::iota(out.side1.begin(), out.side1.end(), 0);
    out.side2 = {terms[0]};
    out.k1 = 1;
    out.k2 = 1;
    return out;
  }

  std::vector<char> is_k(t.n, 0);
  for (int x : terms) is_k[x] = 1;
  auto adj = t.adjacency();

  struct Piece {
    int kcount = 0;
    int min_id = INT_MAX;
    std::vector<int> verts;
  };
  // component structure of t minus a candidate vertex
  auto pieces_of = [&](int s) {
    std::vector<Piece> pieces;
    std::vector<char> seen(t.n, 0);
    seen[s] = 1;
    for (auto [root, ei0] : adj[s]) {
      (void)ei0;
      if (seen[root]) continue;
      Piece p;
      std::vector<int> stack{root};
      seen[root] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        p.verts.push_back(x);
        p.min_id = std::min(p.min_id, x);
        if (is_k[x]) ++p.kcount;
        for (auto [w, ei] : adj[x]) {
          (void)ei;
          if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
      pieces.push_back(std::move(p));
    }
    return pieces;
  };

  // K-centroid: minimize the max terminal count over components of removal
  int best = -1, best_max = INT_MAX;
  for (int s = 0; s < t.n; ++s) {
    int mx = 0;
    for (const auto& p : pieces_of(s)) mx = std::max(mx, p.kcount);
    if (mx < best_max) {
      best_max = mx;
      best = s;
    }
  }
  require_invariant(2 * best_max <= m, "centroid property failed");
  int s = best;
  auto pieces = pieces_of(s);
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.kcount != b.kcount) return a.kcount > b.kcount;
    return a.min_id < b.min_id;
  });

  int in_k_s = is_k[s] ? 1 : 0;
  long cap = (2l * m + 2) / 3;  // ceil(2m/3)
  std::vector<char> to_side2(pieces.size(), 0);
  int acc = 0;  // terminals accumulated into side1 (excluding s)
  if (!pieces.empty() && 3l * pieces[0].kcount >= m) {
    // one heavy piece becomes side2 on its own
    for (size_t i = 1; i < pieces.size(); ++i) acc += pieces[i].kcount;
    to_side2[0] = 1;
  } else {
    // all pieces light: push pieces to side1 until side2 fits under the cap
    long need = m - cap;
    size_t i = 0;
    for (; i < pieces.size() && acc < need; ++i) acc += pieces[i].kcount;
    for (size_t j = i; j < pieces.size(); ++j) to_side2[j] = 1;
  }
  out.shared = s;
  out.side1 = {s};
  out.side2 = {s};
  for (size_t i = 0; i < pieces.size(); ++i) {
    auto& side = to_side2[i] ? out.side2 : out.side1;
    side.insert(side.end(), pieces[i].verts.begin(), pieces[i].verts.end());
  }
  std::sort(out.side1.begin(), out.side1.end());
  std::sort(out.side2.begin(), out.side2.end());
  out.k1 = acc + in_k_s;
  out.k2 = (m - in_k_s - acc) + in_k_s;
  require_invariant(out.k1 <= cap && out.k2 <= cap, "separator split exceeds 2|K|/3 cap");
  return out;
}

namespace {

struct InducedTree {
  WeightedTree tree;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // -1 when absent
};

InducedTree induce(const WeightedTree& t, const std::vector<int>& verts) {
  InducedTree out;
  out.to_parent = verts;
  out.from_parent.assign(t.n, -1);
  for (size_t i = 0; i < verts.size(); ++i) out.from_parent[verts[i]] = static_cast<int>(i);
  out.tree.n = static_cast<int>(verts.size());
  out.tree.steiner.resize(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) out.tree.steiner[i] = t.steiner[verts[i]];
  for (const auto& e : t.edges) {
    int a = out.from_parent[e.u], b = out.from_parent[e.v];
    if (a != -1 && b != -1) out.tree.edges.push_back({a, b, e.w});
  }
  require_invariant(out.tree.edges.size() + 1 == static_cast<size_t>(out.tree.n),
                    "induced vertex set is not a subtree");
  return out;
}

struct Glued {
  WeightedTree tree;
  std::vector<int> map1, map2;
};

Glued glue_at(const WeightedTree& t1, int a1, const WeightedTree& t2, int a2) {
  Glued g;
  g.map1.resize(t1.n);
  std::iota(g.map1.begin(), g.map1.end(), 0);
  g.map2.assign(t2.n, -1);
  g.tree.n = t1.n + t2.n - 1;
  g.tree.steiner = t1.steiner;
  g.tree.steiner.resize(g.tree.n);
  int next = t1.n;
  for (int v = 0; v < t2.n; ++v) {
    if (v == a2) {
      g.map2[v] = a1;
    } else {
      g.map2[v] = next;
      g.tree.steiner[next] = t2.steiner[v];
      ++next;
    }
  }
  g.tree.steiner[a1] = t1.steiner[a1] && t2.steiner[a2];
  g.tree.edges = t1.edges;
  for (const auto& e : t2.edges) g.tree.edges.push_back({g.map2[e.u], g.map2[e.v], e.w});
  return g;
}

struct PairFoldCoord {
  FoldResult fr;
  std::vector<Scalar> coord;  // per input vertex: signed distance to the folding point
};

// Folds the a-b path and produces the base-case coordinate: +d(x, w) for
// vertices on the first half's side of the folding point x, -d(x, w)
// otherwise. Pairs whose path crosses x attain exactly their distance.
PairFoldCoord fold_pair_coord(const WeightedTree& h, int a, int b) {
  PairFoldCoord out;
  out.fr = fold_path(h, a, b);
  const FoldResult& fr = out.fr;
  auto from_x = fr.subdivided.distances_from(fr.folding_point_subdivided);

  int sn = fr.subdivided.n;
  std::vector<Scalar> attach(sn);
  std::vector<char> seen(sn, 0);
  for (size_t i = 0; i < fr.path_vertices.size(); ++i) {
    attach[fr.path_vertices[i]] = fr.path_positions[i];
    seen[fr.path_vertices[i]] = 1;
  }
  auto adj = fr.subdivided.adjacency();
  std::vector<int> stack(fr.path_vertices.begin(), fr.path_vertices.end());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, ei] : adj[v]) {
      (void)ei;
      if (!seen[w]) {
        seen[w] = 1;
        attach[w] = attach[v];
        stack.push_back(w);
      }
    }
  }
  Scalar half = fr.path_length / 2;
  out.coord.resize(h.n);
  for (int w = 0; w < h.n; ++w)
    out.coord[w] = attach[w] < half ? from_x[w] : Scalar(-from_x[w]);
  return out;
}

struct EmbedFoldOut {
  std::vector<std::vector<Scalar>> coords;  // per input vertex, rectangular
  WeightedTree folded;
  std::vector<int> rep;
  std::vector<int> folding_points;  // ids in folded
  std::vector<FoldResult> steps;
  std::vector<std::array<int, 3>> trace;
  int width = 0;
};

// Core recursion. Splits the terminals with a centroid separator, embeds
// and folds both sides, overlays the two sub-embeddings in shared
// coordinate slots (shifted to vanish at the separator), appends one
// separator coordinate, and joins the two terminal blobs with one more
// fold whose base-case coordinate gets the final slot.
EmbedFoldOut embed_fold(const WeightedTree& h, std::vector<int> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  int m = static_cast<int>(terminals.size());

  EmbedFoldOut out;
  out.coords.assign(h.n, {});
  if (m <= 1) {
    out.folded = h;
    out.rep.resize(h.n);
    std::iota(out.rep.begin(), out.rep.end(), 0);
    return out;
  }
  if (m == 2) {
    auto pf = fold_pair_coord(h, terminals[0], terminals[1]);
    out.width = 1;
    for (int w = 0; w < h.n; ++w) out.coords[w] = {pf.coord[w]};
    out.rep = pf.fr.merged;
    out.folded = pf.fr.folded_tree;
    out.folding_points = {pf.fr.folding_point};
    out.trace.push_back({terminals[0], terminals[1], pf.fr.folding_point});
    out.steps.push_back(std::move(pf.fr));
    return out;
  }

  auto sep = tree_separator(h, terminals);
  auto sub1 = induce(h, sep.side1);
  auto sub2 = induce(h, sep.side2);
  std::vector<int> m1, m2;
  for (int x : terminals) {
    if (sub1.from_parent[x] != -1) m1.push_back(sub1.from_parent[x]);
    if (sub2.from_parent[x] != -1) m2.push_back(sub2.from_parent[x]);
  }
  require_invariant(!m1.empty() && !m2.empty(), "separator left a side without terminals");

  auto r1 = embed_fold(sub1.tree, m1);
  auto r2 = embed_fold(sub2.tree, m2);

  int s_local1 = sub1.from_parent[sep.shared];
  int s_local2 = sub2.from_parent[sep.shared];
  auto dist_s = h.distances_from(sep.shared);

  Glued g = glue_at(r1.folded, r1.rep[s_local1], r2.folded, r2.rep[s_local2]);
  auto rep_in_glued = [&](int w) {
    int l1 = sub1.from_parent[w];
    if (l1 != -1) return g.map1[r1.rep[l1]];
    return g.map2[r2.rep[sub2.from_parent[w]]];
  };
  int blob1 = g.map1[r1.rep[m1[0]]];
  int blob2 = g.map2[r2.rep[m2[0]]];
  for (int x : m1) require_invariant(g.map1[r1.rep[x]] == blob1, "side1 terminals not merged");
  for (int x : m2) require_invariant(g.map2[r2.rep[x]] == blob2, "side2 terminals not merged");

  bool need_join = blob1 != blob2;
  PairFoldCoord join;
  if (need_join) join = fold_pair_coord(g.tree, std::min(blob1, blob2), std::max(blob1, blob2));

  int overlay = std::max(r1.width, r2.width);
  out.width = overlay + 1 + (need_join ? 1 : 0);
  const auto& shift1 = r1.coords[s_local1];
  const auto& shift2 = r2.coords[s_local2];
  for (int w = 0; w < h.n; ++w) {
    std::vector<Scalar> row;
    row.reserve(out.width);
    int l1 = sub1.from_parent[w];
    if (l1 != -1) {
      const auto& base = r1.coords[l1];
      for (int c = 0; c < overlay; ++c)
        row.push_back(c < r1.width ? Scalar(base[c] - shift1[c]) : Scalar(0));
      row.push_back(dist_s[w]);
    } else {
      const auto& base = r2.coords[sub2.from_parent[w]];
      for (int c = 0; c < overlay; ++c)
        row.push_back(c < r2.width ? Scalar(base[c] - shift2[c]) : Scalar(0));
      row.push_back(Scalar(-dist_s[w]));
    }
    if (need_join) row.push_back(join.coord[rep_in_glued(w)]);
    out.coords[w] = std::move(row);
  }

  out.rep.resize(h.n);
  for (int w = 0; w < h.n; ++w) {
    int rg = rep_in_glued(w);
    out.rep[w] = need_join ? join.fr.sub_to_folded[rg] : rg;
  }
  out.folded = need_join ? join.fr.folded_tree : g.tree;

  auto push_points = [&](const EmbedFoldOut& r, const std::vector<int>& gmap) {
    for (int fp : r.folding_points) {
      int x = gmap[fp];
      out.folding_points.push_back(need_join ? join.fr.sub_to_folded[x] : x);
    }
  };
  push_points(r1, g.map1);
  push_points(r2, g.map2);
  for (auto& st : r1.steps) out.steps.push_back(std::move(st));
  for (auto& st : r2.steps) out.steps.push_back(std::move(st));
  for (auto& tr : r1.trace) out.trace.push_back(tr);
  for (auto& tr : r2.trace) out.trace.push_back(tr);
  if (need_join) {
    out.folding_points.push_back(join.fr.folding_point);
    out.trace.push_back({std::min(blob1, blob2), std::max(blob1, blob2), join.fr.folding_point});
    out.steps.push_back(std::move(join.fr));
  }

  int final_rep = out.rep[terminals[0]];
  for (int x : terminals)
    require_invariant(out.rep[x] == final_rep, "terminals not fully merged");
  return out;
}

}  // namespace

TerminalEmbedResult embed_terminal_set(const WeightedTree& t, const std::vector<int>& K) {
  if (K.empty()) throw ValidationError(ErrorKind::EmptyTerminalSet, "K must be nonempty");
  for (int x : K)
    if (x < 0 || x >= t.n)
      throw ValidationError(ErrorKind::InvalidParams, "terminal out of range", {x, -1, -1});
  auto ef = embed_fold(t, K);
  check_level_dimension(ef.width, static_cast<long>(std::set<int>(K.begin(), K.end()).size()));

  TerminalEmbedResult res;
  res.embedding.dim = ef.width;
  res.embedding.vectors.resize(t.n);
  for (int w = 0; w < t.n; ++w) res.embedding.vectors[w] = std::move(ef.coords[w]);
  res.record.final_tree = std::move(ef.folded);
  res.record.merged = std::move(ef.rep);
  res.record.steps = std::move(ef.steps);
  res.record.folding_points = std::move(ef.folding_points);
  res.record.trace = std::move(ef.trace);
  res.record.merged_vertex = res.record.merged[K[0]];
  return res;
}

TreeEmbeddingResult prioritized_tree_embedding(const WeightedTree& t,
                                               const PriorityOrdering& ord) {
  auto [metric, real] = tree_metric(t);
  int n = metric.n;
  if (n < 1) throw ValidationError(ErrorKind::InvalidParams, "tree has no real vertices");

  std::vector<int> metric_index(t.n, -1);
  for (int i = 0; i < n; ++i) metric_index[real[i]] = i;
  if (ord.n() != n)
    throw ValidationError(ErrorKind::OrderingMismatch, "ordering must rank the real vertices");
  std::vector<char> seen(t.n, 0);
  for (int v : ord.perm) {
    if (v < 0 || v >= t.n || metric_index[v] == -1 || seen[v])
      throw ValidationError(ErrorKind::OrderingMismatch, "ordering must rank the real vertices");
    seen[v] = 1;
  }

  TreeEmbeddingResult out;
  out.metric = std::move(metric);
  out.real_vertices = real;
  out.metric_order.perm.resize(n);
  for (int j = 0; j < n; ++j) out.metric_order.perm[j] = metric_index[ord.perm[j]];
  out.level_of_rank.assign(n, 0);

  std::vector<std::vector<Scalar>> rows(n);
  WeightedTree cur = t;
  std::vector<int> rep(t.n);
  std::iota(rep.begin(), rep.end(), 0);

  // Level i holds ranks (2^(2^(i-1)), 2^(2^i)], with ranks 1 and 2 folded
  // into level 1; each level folds its terminals into the running blob z.
  long lo = 0;
  int level = 0;
  while (lo < n) {
    ++level;
    long hi;
    if (level >= 6) {
      hi = n;
    } else {
      long e = 1l << level;  // 2^level
      hi = e >= 62 ? n : std::min<long>(n, 1l << e);
    }
    std::vector<int> terms{rep[ord.perm[0]]};
    for (long j = lo + 1; j <= hi; ++j) terms.push_back(rep[ord.perm[j - 1]]);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    auto ef = embed_fold(cur, terms);
    check_level_dimension(ef.width, static_cast<long>(terms.size()));

    int zrep = rep[ord.perm[0]];
    std::vector<Scalar> shift = ef.coords[zrep];
    for (int i = 0; i < n; ++i) {
      int r = rep[real[i]];
      for (int c = 0; c < ef.width; ++c) rows[i].push_back(ef.coords[r][c] - shift[c]);
    }
    out.level_dims.push_back(ef.width);
    for (long j = lo + 1; j <= hi; ++j) out.level_of_rank[j - 1] = level;

    for (int v = 0; v < t.n; ++v) rep[v] = ef.rep[rep[v]];
    cur = std::move(ef.folded);
    lo = hi;
  }

  int z = rep[ord.perm[0]];
  for (int v : ord.perm) require_invariant(rep[v] == z, "levels did not merge every vertex");

  out.embedding.dim = 0;
  for (int d : out.level_dims) out.embedding.dim += d;
  out.embedding.vectors = std::move(rows);
  return out;
}

}  // namespace priomet
