// JSON (de)serialization for every artifact the CLI reads or writes.
// Scalars travel as strings: integers as "n", other rationals as "p/q";
// parsers additionally accept decimal strings like "2.5".
#pragma once

#include <string>

#include <json.hpp>

#include "priomet/embedding.hpp"
#include "priomet/frechet.hpp"
#include "priomet/graph.hpp"
#include "priomet/metric.hpp"
#include "priomet/priority.hpp"
#include "priomet/single_tree.hpp"
#include "priomet/tree_fold.hpp"

namespace priomet {

using Json = nlohmann::ordered_json;

Json metric_to_json(const MetricSpace& m);
MetricSpace metric_from_json(const Json& j);  // validates

Json graph_to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const Json& j);  // validates

Json tree_to_json(const WeightedTree& t);
WeightedTree tree_from_json(const Json& j, bool strict = false);  // validates

Json ordering_to_json(const PriorityOrdering& ord);
PriorityOrdering ordering_from_json(const Json& j, int n);  // validates

Json embedding_to_json(const Embedding& f);
Embedding embedding_from_json(const Json& j);

Json alpha_to_json(const PriorityFunction& alpha);
PriorityFunction alpha_from_json(const Json& j);  // re-certifies

Json distortion_report_to_json(const DistortionReport& rep);
DistortionReport distortion_report_from_json(const Json& j);
Json dimension_report_to_json(const DimensionReport& rep);
DimensionReport dimension_report_from_json(const Json& j);

/// Ordered list of (u, v, folding_point) triples.
Json fold_trace_to_json(const KFoldingRecord& rec);

Json ultrametric_to_json(const UltrametricTree& u);
UltrametricTree ultrametric_from_json(const Json& j);

Json spanning_tree_to_json(const SpanningTreeResult& st);
std::vector<int> spanning_edge_indices_from_json(const Json& j);

Json coordinate_manifest_to_json(const std::vector<CoordinateInfo>& coords);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
Json load_json(const std::string& path);
void store_json(const std::string& path, const Json& j);

}  // namespace priomet
