#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/matrix.hpp"

namespace graphzeta {

inline constexpr double kStochasticTolerance = 1e-10;
inline constexpr double kNonMixingThreshold = 1e-9;

/// Transition matrix on directed bonds, M_{d',d} = |U_{d',d}|^2.
struct ClassicalMap {
  ComplexMatrix matrix;
  Complex lambda;
  /// True when the map is stochastic as stored (M itself, or M# / (v - 1)).
  bool normalized = true;
};

/// |U(lambda)|^2 entrywise for real lambda. Throws NumericError when the result is not
/// bi-stochastic within kStochasticTolerance.
ClassicalMap build_M(const Graph& g, Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

/// Largest deviation of a row or column sum from 1.
double bistochastic_defect(const ComplexMatrix& m);

/// rho_n = M^n rho_0. Throws ValidationError for an invalid initial distribution and
/// NumericError if an iterate leaves the probability simplex.
std::vector<double> evolve(const ClassicalMap& map, std::span<const double> rho0, std::size_t steps);

struct MixingGap {
  double gap = 0.0;
  /// Largest modulus after removing one eigenvalue 1.
  double second_modulus = 0.0;
  /// False when another eigenvalue lies within kNonMixingThreshold of the unit circle.
  bool mixing = true;
  /// Eigenvector of the eigenvalue 1 scaled to a probability vector.
  std::vector<double> equilibrium;
  std::vector<Complex> eigenvalues;
};

MixingGap mixing_gap(const ClassicalMap& map);

/// |U|^2 at lambda = v + i(v - 2) (z = v - 1), cross-checked against the non-backtracking
/// matrix to 1e-12. Requires a v-regular graph with v > 2.
ClassicalMap build_M_sharp(const Graph& g, bool normalize = true);

/// {+-1/(v-1) with multiplicity r - 1} together with m_j^+- for every Laplacian eigenvalue.
std::vector<Complex> m_sharp_spectrum_via_laplacian(const Graph& g);

/// det(I - mu M).
Complex classical_secular_Z_M(const ClassicalMap& map, Complex mu);

/// (1 - (mu/(v-1))^2)^{r-1} det(I (1 + mu^2/(v-1)) - mu C/(v-1)).
Complex m_sharp_secular_via_laplacian(const Graph& g, Complex mu);

/// JSON list of {"re", "im", "modulus"}.
std::string spectrum_to_json(std::span<const Complex> eigenvalues);
/// gap, second_modulus, mixing.
std::string gap_summary_json(const MixingGap& gap);

}  // namespace graphzeta
