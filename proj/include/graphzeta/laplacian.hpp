#pragma once

#include "graphzeta/graph.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/matrix.hpp"

namespace graphzeta {

struct LaplacianOperator {
  ComplexMatrix matrix;
  LaplacianKind kind = LaplacianKind::Standard;
  VertexDegrees degrees;
};

/// L = D - C, or L~ = D~ - C~ for the generalized kind (requires weights).
LaplacianOperator build_laplacian(const Graph& g, LaplacianKind kind = LaplacianKind::Standard);

/// Ascending real spectrum. Throws NumericError if the operator is not
/// positive semi-definite or has no zero eigenvalue.
SpectralResult laplacian_spectrum(const LaplacianOperator& op, bool want_vectors = false);

/// Multiplicity of the zero eigenvalue in a spectrum of `op`.
std::size_t zero_multiplicity(const LaplacianOperator& op, const SpectralResult& spectrum);

/// det(lambda I - L).
Complex char_poly_value(const LaplacianOperator& op, Complex lambda);

/// |L psi - lambda psi|.
double eigen_residual(const LaplacianOperator& op, std::span<const Complex> psi, double lambda);

}  // namespace graphzeta
