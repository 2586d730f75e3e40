#include "graphzeta/laplacian.hpp"

#include <algorithm>
#include <cmath>

#include "graphzeta/error.hpp"

namespace graphzeta {

namespace {

double zero_tolerance(const LaplacianOperator& op) {
  return 1e-10 * std::max(1.0, op.matrix.max_abs());
}

}  // namespace

LaplacianOperator build_laplacian(const Graph& g, LaplacianKind kind) {
  if (kind == LaplacianKind::Generalized && !g.has_weights()) {
    throw ValidationError(ValidationError::Kind::MissingWeights,
                          "generalized Laplacian requested for a graph without weights");
  }
  LaplacianOperator op{ComplexMatrix(g.num_vertices(), g.num_vertices()), kind, g.degrees()};
  for (const Edge& e : g.edges()) {
    const double w = kind == LaplacianKind::Standard ? 1.0 : e.weight;
    op.matrix(e.lo, e.hi) -= w;
    op.matrix(e.hi, e.lo) -= w;
    op.matrix(e.lo, e.lo) += w;
    op.matrix(e.hi, e.hi) += w;
  }
  return op;
}

SpectralResult laplacian_spectrum(const LaplacianOperator& op, bool want_vectors) {
  SpectralResult s = eig_symmetric(op.matrix, want_vectors);
  const double tol = zero_tolerance(op);
  const double lowest = s.eigenvalues.front().real();
  if (lowest < -tol) throw NumericError("Laplacian is not positive semi-definite");
  if (std::abs(lowest) >= tol) throw NumericError("Laplacian spectrum has no zero eigenvalue");
  return s;
}

std::size_t zero_multiplicity(const LaplacianOperator& op, const SpectralResult& spectrum) {
  const double tol = zero_tolerance(op);
  return static_cast<std::size_t>(
      std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                    [tol](const Complex& z) { return std::abs(z) < tol; }));
}

Complex char_poly_value(const LaplacianOperator& op, Complex lambda) {
  ComplexMatrix m = ComplexMatrix::identity(op.matrix.rows());
  m *= lambda;
  m -= op.matrix;
  return determinant(m);
}

double eigen_residual(const LaplacianOperator& op, std::span<const Complex> psi, double lambda) {
  std::vector<Complex> r = op.matrix * psi;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= lambda * psi[i];
  return norm2(r);
}

}  // namespace graphzeta
