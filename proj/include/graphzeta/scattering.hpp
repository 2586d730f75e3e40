#pragma once

#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/matrix.hpp"

namespace graphzeta {

/// Radius around the points lambda = v(1 +- i) inside which the vertex phase is refused.
inline constexpr double kPoleGuard = 1e-12;

/// e^{i alpha} = (1 + i(1 - lambda/v)) / (1 - i(1 - lambda/v)).
/// Throws NumericError within kPoleGuard of lambda = v(1+i) (pole) or v(1-i) (zero).
Complex vertex_phase(double degree, Complex lambda);

/// Scattering matrix at one vertex. Rows are the outgoing bonds (o(d) = i),
/// columns the incoming bonds (t(d') = i), both in ascending bond order.
struct VertexScatteringMatrix {
  VertexId vertex = 0;
  std::vector<BondId> outgoing;
  std::vector<BondId> incoming;
  ComplexMatrix entries;
  Complex lambda;
  Complex phase;
};

VertexScatteringMatrix vertex_sigma(const Graph& g, VertexId i, Complex lambda,
                                    LaplacianKind kind = LaplacianKind::Standard);

/// Single scattering element sigma^{(t(from))}_{to, from}; zero unless `to` follows `from`.
Complex sigma_entry(const Graph& g, const DirectedBondSpace& bonds, BondId to, BondId from,
                    Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

struct EvolutionOperator {
  ComplexMatrix matrix;
  Complex lambda;
  LaplacianKind kind = LaplacianKind::Standard;
};

/// U_{d',d} = sigma^{(t(d))}_{d',d} when o(d') = t(d), else 0.
EvolutionOperator build_U(const Graph& g, const DirectedBondSpace& bonds, Complex lambda,
                          LaplacianKind kind = LaplacianKind::Standard);
EvolutionOperator build_U(const Graph& g, Complex lambda,
                          LaplacianKind kind = LaplacianKind::Standard);

/// det U = (-1)^V prod_j e^{i alpha_j}.
Complex det_U_closed(const Graph& g, Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

/// prod_j (-i) e^{-i alpha_j / 2}, with e^{-i alpha_j/2} the principal inverse square
/// root of the vertex phase. A square root of 1/det U that keeps Z_S real on the axis.
Complex half_phase_product(const Graph& g, Complex lambda,
                           LaplacianKind kind = LaplacianKind::Standard);

/// det(I - U(lambda)).
Complex det_I_minus_U(const Graph& g, Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

/// Z_S = 2^{-B} (det U)^{-1/2} det(I - U), real on the real axis, tending to 1 as |lambda| grows.
Complex secular_Z_S(const Graph& g, Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

struct SecularZero {
  double lambda;
  std::size_t multiplicity;
};

struct ZeroScanOptions {
  /// Initial grid step is (hi - lo) / (step_divisor * V).
  double step_divisor = 50.0;
  /// Eigenvalues of U within this distance of 1 count towards the multiplicity.
  double multiplicity_tolerance = 1e-6;
  double refine_tolerance = 1e-10;
  int max_rescans = 6;
};

/// Real zeros of Z_S on [-0.5, 2 max_i v_i + 0.5] with multiplicities.
/// Candidates are sign changes of Z_S and local minima of |Z_S| on a grid; each is refined
/// by minimising the smallest eigenphase |arg mu_k| of U, which vanishes linearly at a zero.
std::vector<SecularZero> secular_zeros(const Graph& g, LaplacianKind kind = LaplacianKind::Standard,
                                       const ZeroScanOptions& options = {});

struct ReconstructedModes {
  /// Orthonormal vertex vectors, one per null direction of I - U(lambda).
  std::vector<std::vector<Complex>> psi;
  /// Singular values of I - U(lambda) in ascending order.
  std::vector<double> singular_values;
};

/// Builds eigenvectors of L from the stationary bond amplitudes a = U(lambda) a:
/// psi_i = (1/v_i) sum_{o(b)=i} (a_b e^{i pi/4} + a_{b^} e^{-i pi/4}) / sqrt(w_b), where the
/// weight factor applies to the generalized kind only.
/// Throws NumericError when I - U has no singular value below `threshold`.
ReconstructedModes reconstruct_eigenvector(const Graph& g, double lambda,
                                           LaplacianKind kind = LaplacianKind::Standard,
                                           double threshold = 1e-6);

}  // namespace graphzeta
