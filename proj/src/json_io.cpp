#include "priomet/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "priomet/util.hpp"

namespace priomet {

namespace {

Scalar scalar_from(const Json& j) {
  if (j.is_number_integer()) return Scalar(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  throw ValidationError(ErrorKind::ParseError, "scalar must be an integer or string");
}

Json scalar_to(const Scalar& s) { return format_scalar(s); }

}  // namespace

Json metric_to_json(const MetricSpace& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(scalar_to(m.d(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"n", m.n}, {"dist", std::move(rows)}};
}

MetricSpace metric_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  const Json& rows = j.at("dist");
  if (static_cast<int>(rows.size()) != n)
    throw ValidationError(ErrorKind::ParseError, "dist must have n rows");
  std::vector<Scalar> dist;
  dist.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw ValidationError(ErrorKind::ParseError, "dist rows must have n entries");
    for (const auto& cell : row) dist.push_back(scalar_from(cell));
  }
  return validate_metric(n, std::move(dist));
}

Json graph_to_json(const WeightedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(Json::array({e.u, e.v, scalar_to(e.w)}));
  return Json{{"n", g.n}, {"edges", std::move(edges)}};
}

WeightedGraph graph_from_json(const Json& j) {
  int n = j.at("n").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), scalar_from(e.at(2))});
  return validate_graph(n, std::move(edges));
}

Json tree_to_json(const WeightedTree& t) {
  Json verts = Json::array();
  for (int v = 0; v < t.n; ++v)
    verts.push_back(Json{{"id", v}, {"steiner", static_cast<bool>(t.steiner[v])}});
  Json edges = Json::array();
  for (const auto& e : t.edges) edges.push_back(Json::array({e.u, e.v, scalar_to(e.w)}));
  return Json{{"n_real", t.real_count()}, {"vertices", std::move(verts)},
              {"edges", std::move(edges)}};
}

WeightedTree tree_from_json(const Json& j, bool strict) {
  const Json& verts = j.at("vertices");
  int n = static_cast<int>(verts.size());
  std::vector<char> steiner(n, 0);
  for (const auto& v : verts) {
    int id = v.at("id").get<int>();
    if (id < 0 || id >= n)
      throw ValidationError(ErrorKind::ParseError, "vertex ids must be 0..n-1");
    steiner[id] = v.at("steiner").get<bool>() ? 1 : 0;
  }
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), scalar_from(e.at(2))});
  auto t = validate_tree(n, std::move(steiner), std::move(edges), strict);
  if (j.contains("n_real") && j.at("n_real").get<int>() != t.real_count())
    throw ValidationError(ErrorKind::ParseError, "n_real does not match vertex flags");
  return t;
}

Json ordering_to_json(const PriorityOrdering& ord) { return Json{{"perm", ord.perm}}; }

PriorityOrdering ordering_from_json(const Json& j, int n) {
  std::vector<int> perm = j.at("perm").get<std::vector<int>>();
  return validate_ordering(std::move(perm), n);
}

Json embedding_to_json(const Embedding& f) {
  Json rows = Json::array();
  for (const auto& vec : f.vectors) {
    Json row = Json::array();
    for (const auto& v : vec) row.push_back(scalar_to(v));
    rows.push_back(std::move(row));
  }
  return Json{{"dim", f.dim}, {"vectors", std::move(rows)}};
}

Embedding embedding_from_json(const Json& j) {
  Embedding f;
  f.dim = j.at("dim").get<int>();
  for (const auto& row : j.at("vectors")) {
    std::vector<Scalar> vec;
    vec.reserve(row.size());
    for (const auto& v : row) vec.push_back(scalar_from(v));
    if (static_cast<int>(vec.size()) != f.dim)
      throw ValidationError(ErrorKind::ParseError, "embedding rows must have dim entries");
    f.vectors.push_back(std::move(vec));
  }
  return f;
}

Json alpha_to_json(const PriorityFunction& alpha) {
  Json vals = Json::array();
  for (const auto& a : alpha.alpha) vals.push_back(scalar_to(a));
  return Json{{"alpha", std::move(vals)}, {"partial_sum", scalar_to(alpha.partial_sum)}};
}

PriorityFunction alpha_from_json(const Json& j) {
  std::vector<Scalar> vals;
  for (const auto& a : j.at("alpha")) vals.push_back(scalar_from(a));
  return validate_priority_function(vals, static_cast<int>(vals.size()));
}

namespace {
Json ratio_to_json(const Ratio& r) {
  if (r.infinite) return "inf";
  return scalar_to(r.value);
}
}  // namespace

Json distortion_report_to_json(const DistortionReport& rep) {
  Json per = Json::array();
  for (const auto& e : rep.per_j)
    per.push_back(Json{{"j", e.rank},
                       {"point", e.point},
                       {"expansion", ratio_to_json(e.expansion)},
                       {"contraction", ratio_to_json(e.contraction)},
                       {"witness_expansion", e.witness_expansion},
                       {"witness_contraction", e.witness_contraction}});
  return Json{{"per_j", std::move(per)}, {"global", ratio_to_json(rep.global)}};
}

DistortionReport distortion_report_from_json(const Json& j) {
  DistortionReport rep;
  auto ratio_from = [](const Json& r) {
    if (r.is_string() && r.get<std::string>() == "inf") return Ratio::inf();
    return Ratio::of(scalar_from(r));
  };
  for (const auto& e : j.at("per_j")) {
    DistortionReport::Entry entry;
    entry.rank = e.at("j").get<int>();
    entry.point = e.at("point").get<int>();
    entry.expansion = ratio_from(e.at("expansion"));
    entry.contraction = ratio_from(e.at("contraction"));
    entry.witness_expansion = e.at("witness_expansion").get<int>();
    entry.witness_contraction = e.at("witness_contraction").get<int>();
    rep.per_j.push_back(std::move(entry));
  }
  rep.global = ratio_from(j.at("global"));
  return rep;
}

Json dimension_report_to_json(const DimensionReport& rep) {
  return Json{{"per_j", rep.per_j}};
}

DimensionReport dimension_report_from_json(const Json& j) {
  return DimensionReport{j.at("per_j").get<std::vector<int>>()};
}

Json fold_trace_to_json(const KFoldingRecord& rec) {
  Json steps = Json::array();
  for (const auto& tr : rec.trace) steps.push_back(Json::array({tr[0], tr[1], tr[2]}));
  return Json{{"trace", std::move(steps)}};
}

Json ultrametric_to_json(const UltrametricTree& u) {
  Json nodes = Json::array();
  for (size_t i = 0; i < u.nodes.size(); ++i) {
    const auto& nd = u.nodes[i];
    Json n{{"id", static_cast<int>(i)}, {"label", scalar_to(nd.label)},
           {"children", nd.children}};
    if (nd.leaf_point >= 0) n["leaf_point"] = nd.leaf_point;
    nodes.push_back(std::move(n));
  }
  return Json{{"nodes", std::move(nodes)}, {"leaf_of", u.leaf_of}};
}

UltrametricTree ultrametric_from_json(const Json& j) {
  UltrametricTree u;
  for (const auto& nd : j.at("nodes")) {
    UltrametricNode n;
    n.label = scalar_from(nd.at("label"));
    n.children = nd.at("children").get<std::vector<int>>();
    n.leaf_point = nd.contains("leaf_point") ? nd.at("leaf_point").get<int>() : -1;
    u.nodes.push_back(std::move(n));
  }
  u.leaf_of = j.at("leaf_of").get<std::vector<int>>();
  if (!u.labels_monotone())
    throw ValidationError(ErrorKind::ParseError, "ultrametric labels must not increase downward");
  return u;
}

Json spanning_tree_to_json(const SpanningTreeResult& st) {
  return Json{{"n", st.tree.n}, {"edge_indices", st.edge_indices}};
}

std::vector<int> spanning_edge_indices_from_json(const Json& j) {
  return j.at("edge_indices").get<std::vector<int>>();
}

Json coordinate_manifest_to_json(const std::vector<CoordinateInfo>& coords) {
  Json arr = Json::array();
  for (const auto& c : coords) {
    double prob = c.always ? 1.0 : static_cast<double>(c.threshold) / 18446744073709551616.0;
    arr.push_back(Json{{"label", c.label},
                       {"always", c.always},
                       {"threshold", c.threshold},
                       {"probability", prob},
                       {"set_size", c.set_size}});
  }
  return Json{{"coordinates", std::move(arr)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(ErrorKind::ParseError, "cannot write " + path);
  out << contents;
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(ErrorKind::ParseError, path + ": " + e.what());
  }
}

void store_json(const std::string& path, const Json& j) {
  write_file(path, j.dump(2) + "\n");
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Asymmetric: return "Asymmetric";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::SumAtLeastOne: return "SumAtLeastOne";
    case ErrorKind::SameVertex: return "SameVertex";
    case ErrorKind::EmptyTerminalSet: return "EmptyTerminalSet";
    case ErrorKind::OrderingMismatch: return "OrderingMismatch";
    case ErrorKind::DegenerateDiameter: return "DegenerateDiameter";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::BadWeight: return "BadWeight";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace priomet
