#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"

namespace graphzeta::fixtures {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
Graph complete(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph petersen();

/// Random spanning tree plus extra edges until `num_edges` is reached.
Graph random_connected(std::size_t num_vertices, std::size_t num_edges, std::uint64_t seed);

/// Four vertices, five edges, distinct weights.
Graph weighted_kite();

struct NamedGraph {
  std::string name;
  Graph graph;
  LaplacianKind kind;
};

/// P2, C3, C6, K4, K3,3, Petersen, a random connected graph on 8 vertices and the
/// weighted kite (generalized kind).
std::vector<NamedGraph> standard_set();

}  // namespace graphzeta::fixtures
