#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "graphzeta/matrix.hpp"

namespace graphzeta {

using VertexId = std::size_t;
using BondId = std::uint32_t;

/// Which Laplacian a computation refers to: L = D - C, or the weighted L~ = D~ - C~.
enum class LaplacianKind { Standard, Generalized };

struct EdgeSpec {
  VertexId u = 0;
  VertexId v = 0;
  std::optional<double> weight;
};

/// Unvalidated graph description, as read from a file or written by hand.
struct GraphSpec {
  std::size_t num_vertices = 0;
  std::vector<EdgeSpec> edges;
};

/// Undirected edge with endpoints normalised so that lo < hi.
struct Edge {
  VertexId lo;
  VertexId hi;
  double weight;
};

struct VertexDegrees {
  std::vector<std::size_t> valency;
  std::vector<double> weighted_valency;
};

/// Validated simple undirected graph. Immutable.
class Graph {
 public:
  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const VertexDegrees& degrees() const noexcept { return degrees_; }

  /// True when any edge carried an explicit weight.
  bool has_weights() const noexcept { return has_weights_; }
  bool connected() const noexcept { return connected_; }

  std::optional<std::size_t> edge_index(VertexId a, VertexId b) const;
  bool adjacent(VertexId a, VertexId b) const { return edge_index(a, b).has_value(); }

  /// v_i for the standard kind, u_i for the generalized kind.
  double degree(VertexId i, LaplacianKind kind) const;

  /// Common valency when every vertex has the same one.
  std::optional<std::size_t> regular_degree() const;

  /// Connectivity matrix C (0/1), or C~ with edge weights.
  ComplexMatrix adjacency(LaplacianKind kind = LaplacianKind::Standard) const;

 private:
  friend Graph build_graph(const GraphSpec& spec);

  std::size_t num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  VertexDegrees degrees_;
  bool has_weights_ = false;
  bool connected_ = false;
};

/// Validates a spec: rejects self-loops, duplicate edges, non-positive weights,
/// out-of-range endpoints. Connectivity is computed once by BFS.
Graph build_graph(const GraphSpec& spec);

/// Directed-bond coordinates: edge k (input order, lo < hi) yields bonds
/// 2k = lo -> hi and 2k+1 = hi -> lo.
class DirectedBondSpace {
 public:
  explicit DirectedBondSpace(const Graph& g);

  std::size_t size() const noexcept { return origin_.size(); }
  VertexId origin(BondId d) const { return origin_[d]; }
  VertexId terminus(BondId d) const { return terminus_[d]; }
  static BondId reversal(BondId d) noexcept { return d ^ 1U; }
  static std::size_t edge_of(BondId d) noexcept { return d >> 1U; }
  double weight(BondId d) const { return weight_[d]; }

  /// Bonds d' with o(d') = t(d), including the reversal of d.
  std::span<const BondId> successors(BondId d) const { return outgoing(terminus_[d]); }
  std::span<const BondId> outgoing(VertexId i) const { return outgoing_[i]; }
  std::span<const BondId> incoming(VertexId i) const { return incoming_[i]; }

  bool follows(BondId next, BondId prev) const { return origin_[next] == terminus_[prev]; }

 private:
  std::vector<VertexId> origin_;
  std::vector<VertexId> terminus_;
  std::vector<double> weight_;
  std::vector<std::vector<BondId>> outgoing_;
  std::vector<std::vector<BondId>> incoming_;
};

DirectedBondSpace directed_bonds(const Graph& g);

/// r = B - V + 1. Requires a connected graph.
std::size_t rank(const Graph& g);

}  // namespace graphzeta
