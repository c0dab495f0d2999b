// Seeded instance generators for tests, audits, and the CLI.
// Distributions: random tree = uniform attachment with integer weights
// 1..wmax; random graph = random spanning tree plus extra random edges,
// connected by construction; random metric = shortest-path metric of such
// a graph with integer weights.
#pragma once

#include <cstdint>

#include "priomet/graph.hpp"
#include "priomet/metric.hpp"

namespace priomet {

WeightedTree gen_tree(int n, std::uint64_t seed, long wmax = 100);

/// extra_per_vertex extra edges per vertex on top of the spanning tree;
/// rational weights use denominators 1..4.
WeightedGraph gen_graph(int n, std::uint64_t seed, long wmax = 100, bool rational = false,
                        double extra_per_vertex = 1.0);

MetricSpace gen_metric(int n, std::uint64_t seed, long wmax = 100);

PriorityOrdering gen_ordering(int n, std::uint64_t seed);

}  // namespace priomet
