// priomet: generators, embedding runners, auditors, and JSON round-tripping
// for the prioritized metric-embedding library.
//
// Exit codes: 0 success / audit passed; 1 audit bound violated;
// 2 input validation failure; 3 internal invariant breach.
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "priomet/bound_expr.hpp"
#include "priomet/embedding.hpp"
#include "priomet/frechet.hpp"
#include "priomet/generate.hpp"
#include "priomet/json_io.hpp"
#include "priomet/single_tree.hpp"
#include "priomet/tree_fold.hpp"
#include "priomet/util.hpp"

using namespace priomet;

namespace {

struct ManifestBuilder {
  Json j;

  ManifestBuilder(const std::string& command) {
    j["command"] = command;
    j["inputs"] = Json::object();
    j["outputs"] = Json::object();
  }
  void input(const std::string& name, const std::string& path) {
    j["inputs"][name] = Json{{"path", path}, {"digest", fnv1a_hex(read_file(path))}};
  }
  void output(const std::string& name, const std::string& path) {
    j["outputs"][name] = Json{{"path", path}, {"digest", fnv1a_hex(read_file(path))}};
  }
};

PriorityFunction load_alpha(const std::string& source, int n) {
  if (source == "default") return default_alpha(n);
  auto pf = alpha_from_json(load_json(source));
  if (pf.n_max() < n)
    throw ValidationError(ErrorKind::InvalidParams,
                          "alpha file certifies only n <= " + std::to_string(pf.n_max()));
  return pf;
}

struct AuditRow {
  int rank;
  Scalar achieved;
  bool infinite = false;
  Enclosure allowed;
  BoundCheck verdict;
  int witness = -1;
};

// Per-rank distortion audit of explicit per-point vectors (an embedding or
// tree leaf distances). Prints the table and returns pass/fail.
bool audit_distortion_table(const MetricSpace& m, const Embedding& f,
                            const PriorityOrdering& ord, const BoundExpr& bound,
                            const PriorityFunction* alpha, int k, unsigned threads,
                            std::vector<AuditRow>* rows_out) {
  auto rep = distortion_report(m, f, ord, threads);
  bool ok = true;
  std::vector<AuditRow> rows;
  for (int j = 1; j <= m.n; ++j) {
    const auto& e = rep.per_j[j - 1];
    AuditRow row;
    row.rank = j;
    EvalContext ctx{Scalar(j), Scalar(m.n), Scalar(k), alpha};
    row.allowed = bound.eval(ctx);
    if (e.contraction.infinite) {
      row.infinite = true;
      row.verdict = BoundCheck::Fail;
      row.witness = e.witness_contraction;
    } else {
      row.achieved = std::max(e.contraction.value, e.expansion.value);
      row.verdict = check_bound(row.achieved, row.allowed);
      row.witness =
          e.contraction.value >= e.expansion.value ? e.witness_contraction : e.witness_expansion;
    }
    if (row.verdict != BoundCheck::Pass) ok = false;
    rows.push_back(std::move(row));
  }
  if (rows_out) *rows_out = rows;
  for (const auto& r : rows) {
    std::cout << "j=" << r.rank << " achieved="
              << (r.infinite ? std::string("inf") : format_scalar(r.achieved))
              << " allowed=" << format_scalar(r.allowed.lo)
              << (r.verdict == BoundCheck::Pass
                      ? " PASS"
                      : r.verdict == BoundCheck::Fail ? " FAIL" : " INDETERMINATE");
    if (r.verdict != BoundCheck::Pass && r.witness >= 0)
      std::cout << " witness_pair=(" << r.witness << ")";
    std::cout << "\n";
  }
  return ok;
}

bool audit_dimension_table(const Embedding& f, const PriorityOrdering& ord,
                           const BoundExpr& bound, const PriorityFunction* alpha, int k,
                           long n_for_bound) {
  auto rep = dimension_report(f, ord);
  bool ok = true;
  for (int j = 1; j <= ord.n(); ++j) {
    EvalContext ctx{Scalar(j), Scalar(n_for_bound), Scalar(k), alpha};
    Enclosure allowed = bound.eval(ctx);
    BoundCheck verdict = check_bound(Scalar(rep.per_j[j - 1]), allowed);
    if (verdict != BoundCheck::Pass) ok = false;
    std::cout << "j=" << j << " beta=" << rep.per_j[j - 1]
              << " allowed=" << format_scalar(allowed.lo)
              << (verdict == BoundCheck::Pass
                      ? " PASS"
                      : verdict == BoundCheck::Fail ? " FAIL" : " INDETERMINATE")
              << "\n";
  }
  return ok;
}

Embedding tree_distance_embedding(const MetricSpace& leaf_metric) {
  // rows of the tree's leaf metric: an exact view of tree distances whose
  // linf row differences reproduce them (Frechet row map on an ultrametric
  // or tree metric is an isometry of that metric)
  Embedding f;
  f.dim = leaf_metric.n;
  for (int i = 0; i < leaf_metric.n; ++i) {
    std::vector<Scalar> row(leaf_metric.n);
    for (int j = 0; j < leaf_metric.n; ++j) row[j] = leaf_metric.d(i, j);
    f.vectors.push_back(std::move(row));
  }
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prioritized metric embeddings: generators, embedders, auditors"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  std::string gen_kind, gen_out;
  int gen_n = 10;
  std::uint64_t gen_seed = 0;
  long gen_wmax = 100;
  bool gen_rational = false;
  double gen_extra = 1.0;
  gen->add_option("--kind", gen_kind, "metric|graph|tree|ordering")->required();
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--weight-max", gen_wmax);
  gen->add_flag("--rational-weights", gen_rational);
  gen->add_option("--extra", gen_extra, "extra edges per vertex (graphs)");
  gen->add_option("--out", gen_out)->required();

  // ---- validate ----
  auto* val = app.add_subcommand("validate", "validate an artifact file");
  std::string val_kind, val_input;
  int val_n = 0;
  val->add_option("--kind", val_kind, "metric|graph|tree|ordering")->required();
  val->add_option("--input", val_input)->required();
  val->add_option("--n", val_n, "expected size (orderings)");

  // ---- embed ----
  auto* emb = app.add_subcommand("embed", "run an embedding");
  std::string emb_mode, emb_input, emb_ordering, emb_out, emb_manifest, emb_alpha = "default";
  int emb_k = 2, emb_c = 16;
  std::uint64_t emb_seed = 0;
  emb->add_option("--mode", emb_mode, "tree|linf-distortion|linf-dimension|ultrametric|spanning-tree")
      ->required();
  emb->add_option("--input", emb_input)->required();
  emb->add_option("--ordering", emb_ordering)->required();
  emb->add_option("--k", emb_k);
  emb->add_option("--c", emb_c);
  emb->add_option("--seed", emb_seed);
  emb->add_option("--alpha", emb_alpha, "'default' or a JSON file");
  emb->add_option("--out", emb_out)->required();
  emb->add_option("--manifest", emb_manifest);

  // ---- audit ----
  auto* aud = app.add_subcommand("audit", "audit artifacts against a bound");
  std::string aud_kind = "distortion", aud_input, aud_ordering, aud_bound;
  std::string aud_embedding, aud_ultrametric, aud_spanning, aud_mode, aud_alpha = "default";
  int aud_k = 2, aud_c = 16, aud_retries = 3;
  std::uint64_t aud_seed = 0;
  unsigned aud_threads = 0;
  aud->add_option("--kind", aud_kind, "distortion|dimension");
  aud->add_option("--input", aud_input, "metric (or graph for spanning trees)")->required();
  aud->add_option("--ordering", aud_ordering)->required();
  aud->add_option("--bound", aud_bound, "expression over j, n, k, alpha(j)")->required();
  aud->add_option("--embedding", aud_embedding);
  aud->add_option("--ultrametric", aud_ultrametric);
  aud->add_option("--spanning", aud_spanning);
  aud->add_option("--mode", aud_mode, "re-embed mode for the seed-retry protocol");
  aud->add_option("--k", aud_k);
  aud->add_option("--c", aud_c);
  aud->add_option("--seed", aud_seed);
  aud->add_option("--retries", aud_retries);
  aud->add_option("--alpha", aud_alpha);
  aud->add_option("--threads", aud_threads);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Json out;
      if (gen_kind == "metric")
        out = metric_to_json(gen_metric(gen_n, gen_seed, gen_wmax));
      else if (gen_kind == "graph")
        out = graph_to_json(gen_graph(gen_n, gen_seed, gen_wmax, gen_rational, gen_extra));
      else if (gen_kind == "tree")
        out = tree_to_json(gen_tree(gen_n, gen_seed, gen_wmax));
      else if (gen_kind == "ordering")
        out = ordering_to_json(gen_ordering(gen_n, gen_seed));
      else
        throw ValidationError(ErrorKind::InvalidParams, "unknown gen kind " + gen_kind);
      store_json(gen_out, out);
      return 0;
    }

    if (*val) {
      Json in = load_json(val_input);
      if (val_kind == "metric")
        metric_from_json(in);
      else if (val_kind == "graph")
        graph_from_json(in);
      else if (val_kind == "tree")
        tree_from_json(in, true);
      else if (val_kind == "ordering")
        ordering_from_json(in, val_n ? val_n : static_cast<int>(in.at("perm").size()));
      else
        throw ValidationError(ErrorKind::InvalidParams, "unknown validate kind " + val_kind);
      std::cout << "valid " << val_kind << "\n";
      return 0;
    }

    if (*emb) {
      ManifestBuilder mb("embed");
      mb.j["mode"] = emb_mode;
      mb.j["seed"] = emb_seed;
      mb.j["params"] = Json{{"k", emb_k}, {"c", emb_c}, {"alpha", emb_alpha}};
      mb.input("input", emb_input);
      mb.input("ordering", emb_ordering);

      if (emb_mode == "tree") {
        auto t = tree_from_json(load_json(emb_input));
        auto ord = ordering_from_json(load_json(emb_ordering), t.n);
        auto res = prioritized_tree_embedding(t, ord);
        store_json(emb_out, embedding_to_json(res.embedding));
      } else if (emb_mode == "linf-distortion" || emb_mode == "linf-dimension") {
        auto m = metric_from_json(load_json(emb_input));
        auto ord = ordering_from_json(load_json(emb_ordering), m.n);
        SampleConfig cfg{emb_k, emb_c, emb_seed};
        auto fe = emb_mode == "linf-distortion" ? embed_linf_distortion(m, ord, cfg)
                                                : embed_linf_dimension(m, ord, cfg);
        store_json(emb_out, embedding_to_json(fe.embedding));
        store_json(emb_out + ".coords.json", coordinate_manifest_to_json(fe.coords));
        mb.output("coords", emb_out + ".coords.json");
      } else if (emb_mode == "ultrametric") {
        auto m = metric_from_json(load_json(emb_input));
        auto ord = ordering_from_json(load_json(emb_ordering), m.n);
        auto pf = load_alpha(emb_alpha, m.n);
        auto u = build_ultrametric(m, ord, pf);
        store_json(emb_out, ultrametric_to_json(u));
      } else if (emb_mode == "spanning-tree") {
        auto g = graph_from_json(load_json(emb_input));
        auto ord = ordering_from_json(load_json(emb_ordering), g.n);
        auto pf = load_alpha(emb_alpha, g.n);
        auto st = petal_decomposition_spanning_tree(g, ord, pf);
        store_json(emb_out, spanning_tree_to_json(st));
      } else {
        throw ValidationError(ErrorKind::InvalidParams, "unknown embed mode " + emb_mode);
      }
      mb.output("out", emb_out);
      if (!emb_manifest.empty()) store_json(emb_manifest, mb.j);
      return 0;
    }

    if (*aud) {
      auto bound = BoundExpr::parse(aud_bound);
      std::optional<PriorityFunction> alpha;
      MetricSpace metric;
      PriorityOrdering ord;
      int bound_k = aud_k;

      WeightedGraph graph;  // only for spanning-tree audits
      bool graph_input = !aud_spanning.empty();
      if (graph_input) {
        graph = graph_from_json(load_json(aud_input));
        metric = shortest_path_metric(graph);
      } else {
        metric = metric_from_json(load_json(aud_input));
      }
      ord = ordering_from_json(load_json(aud_ordering), metric.n);
      if (aud_bound.find("alpha") != std::string::npos || aud_alpha != "default")
        alpha = load_alpha(aud_alpha, metric.n);
      const PriorityFunction* alpha_ptr = alpha ? &*alpha : nullptr;

      auto run_one = [&](const Embedding& f) {
        if (aud_kind == "dimension")
          return audit_dimension_table(f, ord, bound, alpha_ptr, bound_k, metric.n);
        return audit_distortion_table(metric, f, ord, bound, alpha_ptr, bound_k, aud_threads,
                                      nullptr);
      };

      bool ok = false;
      if (!aud_embedding.empty()) {
        ok = run_one(embedding_from_json(load_json(aud_embedding)));
      } else if (!aud_ultrametric.empty()) {
        auto u = ultrametric_from_json(load_json(aud_ultrametric));
        ok = run_one(tree_distance_embedding(u.leaf_metric()));
      } else if (graph_input) {
        auto idx = spanning_edge_indices_from_json(load_json(aud_spanning));
        std::vector<Edge> tedges;
        for (int ei : idx) {
          if (ei < 0 || ei >= static_cast<int>(graph.edges.size()))
            throw ValidationError(ErrorKind::InvalidParams, "spanning edge index out of range");
          tedges.push_back(graph.edges[ei]);
        }
        auto tree = validate_tree(graph.n, std::vector<char>(graph.n, 0), tedges);
        WeightedGraph tg{graph.n, tree.edges};
        ok = run_one(tree_distance_embedding(shortest_path_metric(tg)));
      } else if (!aud_mode.empty()) {
        // seed-retry protocol: re-embed until the audit passes
        for (int attempt = 0; attempt < aud_retries && !ok; ++attempt) {
          SampleConfig cfg{aud_k, aud_c, aud_seed + static_cast<std::uint64_t>(attempt)};
          std::cout << "attempt " << attempt + 1 << " seed=" << cfg.seed << "\n";
          auto fe = aud_mode == "linf-distortion" ? embed_linf_distortion(metric, ord, cfg)
                                                  : embed_linf_dimension(metric, ord, cfg);
          ok = run_one(fe.embedding);
        }
      } else {
        throw ValidationError(ErrorKind::InvalidParams,
                              "audit needs --embedding, --ultrametric, --spanning, or --mode");
      }
      std::cout << (ok ? "AUDIT PASS" : "AUDIT FAIL") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: malformed artifact: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantBreach& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
