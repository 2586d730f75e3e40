#include "graphzeta/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "graphzeta/error.hpp"

namespace graphzeta {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (hi << 32U) | lo;
}

std::string edge_name(std::size_t k, const EdgeSpec& e) {
  return "edge " + std::to_string(k) + " (" + std::to_string(e.u) + ", " +
         std::to_string(e.v) + ")";
}

}  // namespace

std::optional<std::size_t> Graph::edge_index(VertexId a, VertexId b) const {
  if (a == b) return std::nullopt;
  const auto it = index_.find(pair_key(a, b));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Graph::degree(VertexId i, LaplacianKind kind) const {
  return kind == LaplacianKind::Standard ? static_cast<double>(degrees_.valency.at(i))
                                         : degrees_.weighted_valency.at(i);
}

std::optional<std::size_t> Graph::regular_degree() const {
  if (degrees_.valency.empty()) return std::nullopt;
  const std::size_t v = degrees_.valency.front();
  for (std::size_t d : degrees_.valency)
    if (d != v) return std::nullopt;
  return v;
}

ComplexMatrix Graph::adjacency(LaplacianKind kind) const {
  ComplexMatrix c(num_vertices_, num_vertices_);
  for (const Edge& e : edges_) {
    const double w = kind == LaplacianKind::Standard ? 1.0 : e.weight;
    c(e.lo, e.hi) = w;
    c(e.hi, e.lo) = w;
  }
  return c;
}

Graph build_graph(const GraphSpec& spec) {
  using Kind = ValidationError::Kind;
  if (spec.num_vertices == 0) {
    throw ValidationError(Kind::EmptyGraph, "graph must have at least one vertex");
  }
  if (spec.num_vertices > 0xFFFFFFFFULL) {
    throw ValidationError(Kind::InvalidArgument, "too many vertices");
  }

  Graph g;
  g.num_vertices_ = spec.num_vertices;
  g.edges_.reserve(spec.edges.size());
  g.degrees_.valency.assign(spec.num_vertices, 0);
  g.degrees_.weighted_valency.assign(spec.num_vertices, 0.0);

  for (std::size_t k = 0; k < spec.edges.size(); ++k) {
    const EdgeSpec& e = spec.edges[k];
    if (e.u >= spec.num_vertices || e.v >= spec.num_vertices) {
      throw ValidationError(Kind::VertexOutOfRange,
                            edge_name(k, e) + ": endpoint outside [0, " +
                                std::to_string(spec.num_vertices) + ")");
    }
    if (e.u == e.v) {
      throw ValidationError(Kind::SelfLoop, edge_name(k, e) + ": self-loop");
    }
    double w = 1.0;
    if (e.weight) {
      w = *e.weight;
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw ValidationError(Kind::NonPositiveWeight,
                              edge_name(k, e) + ": weight must be finite and > 0");
      }
      g.has_weights_ = true;
    }
    if (!g.index_.emplace(pair_key(e.u, e.v), k).second) {
      throw ValidationError(Kind::DuplicateEdge, edge_name(k, e) + ": duplicate edge");
    }
    g.edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), w});
    ++g.degrees_.valency[e.u];
    ++g.degrees_.valency[e.v];
    g.degrees_.weighted_valency[e.u] += w;
    g.degrees_.weighted_valency[e.v] += w;
  }

  std::vector<std::vector<VertexId>> nbr(spec.num_vertices);
  for (const Edge& e : g.edges_) {
    nbr[e.lo].push_back(e.hi);
    nbr[e.hi].push_back(e.lo);
  }
  std::vector<bool> seen(spec.num_vertices, false);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const VertexId i = frontier.front();
    frontier.pop();
    for (VertexId j : nbr[i]) {
      if (!seen[j]) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  g.connected_ = reached == spec.num_vertices;
  return g;
}

DirectedBondSpace::DirectedBondSpace(const Graph& g)
    : outgoing_(g.num_vertices()), incoming_(g.num_vertices()) {
  const std::size_t n = 2 * g.num_edges();
  if (n > 0xFFFFFFFFULL) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "too many bonds");
  }
  origin_.reserve(n);
  terminus_.reserve(n);
  weight_.reserve(n);
  for (const Edge& e : g.edges()) {
    origin_.push_back(e.lo);
    terminus_.push_back(e.hi);
    origin_.push_back(e.hi);
    terminus_.push_back(e.lo);
    weight_.push_back(e.weight);
    weight_.push_back(e.weight);
  }
  for (BondId d = 0; d < n; ++d) {
    outgoing_[origin_[d]].push_back(d);
    incoming_[terminus_[d]].push_back(d);
  }
}

DirectedBondSpace directed_bonds(const Graph& g) { return DirectedBondSpace(g); }

std::size_t rank(const Graph& g) {
  if (!g.connected()) {
    throw ValidationError(ValidationError::Kind::Disconnected,
                          "rank B - V + 1 requires a connected graph");
  }
  return g.num_edges() + 1 - g.num_vertices();
}

}  // namespace graphzeta
