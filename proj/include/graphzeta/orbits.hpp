#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/matrix.hpp"

namespace graphzeta {

/// A primitive periodic orbit in canonical rotation (lexicographically minimal).
struct PrimitiveOrbit {
  std::span<const BondId> bonds;
  std::size_t backscatter = 0;

  std::size_t period() const noexcept { return bonds.size(); }
  bool no_backtrack() const noexcept { return backscatter == 0; }
};

/// All primitive orbits up to a maximum period, sorted by period and then
/// lexicographically. Orbits of one period share a contiguous bond buffer.
class OrbitCatalog {
 public:
  std::size_t max_length() const noexcept { return max_length_; }
  std::size_t size() const noexcept { return backscatter_.size(); }
  bool non_backtracking_only() const noexcept { return non_backtracking_only_; }

  PrimitiveOrbit operator[](std::size_t k) const;

  /// Index range [first, last) of the orbits with period n.
  std::pair<std::size_t, std::size_t> range(std::size_t n) const;

  /// |P(n)|, or |C(n)| for a non-backtracking catalog.
  std::size_t count(std::size_t n) const;
  /// |C(n)|: orbits of period n without back-scattering.
  std::size_t count_non_backtracking(std::size_t n) const;

 private:
  friend OrbitCatalog enumerate_orbits(const DirectedBondSpace&, std::size_t,
                                       const struct EnumerationOptions&);

  std::size_t max_length_ = 0;
  bool non_backtracking_only_ = false;
  std::vector<std::vector<BondId>> by_length_;
  std::vector<std::uint32_t> backscatter_;
  std::vector<std::size_t> first_of_length_;
  std::vector<std::size_t> non_backtracking_;
};

struct EnumerationOptions {
  std::size_t max_orbits = 10'000'000;
  bool non_backtracking_only = false;
};

/// Depth-first search from every start bond s over bonds >= s, closing on s.
/// A walk is kept only if it is primitive and its own minimal rotation.
/// Throws ResourceError when the catalog would exceed `max_orbits`.
OrbitCatalog enumerate_orbits(const DirectedBondSpace& bonds, std::size_t max_length,
                              const EnumerationOptions& options = {});

/// Exact |P(n)| (or |C(n)|) for n = 0..max_length from traces of the bond transition
/// matrix: |P(n)| = (1/n) sum_{d|n} mu(n/d) tr(T^d). Saturates at UINT64_MAX.
std::vector<std::uint64_t> primitive_orbit_counts(const DirectedBondSpace& bonds,
                                                  std::size_t max_length,
                                                  bool non_backtracking = false);

/// a_p = prod_k U_{d_{k+1}, d_k} around the orbit.
Complex orbit_amplitude(const PrimitiveOrbit& p, const ComplexMatrix& u);
Complex orbit_amplitude(const PrimitiveOrbit& p, const Graph& g, Complex lambda,
                        LaplacianKind kind = LaplacianKind::Standard);

/// sum_{m | n} m sum_{p in P(m)} a_p^{n/m}, which equals tr U^n.
Complex trace_power_via_orbits(const OrbitCatalog& catalog, const ComplexMatrix& u, std::size_t n);

/// One JSON object per line: {"n": ..., "beta": ..., "bonds": [...]}.
std::string catalog_to_jsonl(const OrbitCatalog& catalog);

}  // namespace graphzeta
