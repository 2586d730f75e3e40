#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "graphzeta/matrix.hpp"

namespace graphzeta {

inline constexpr double kDefaultClusterTolerance = 1e-7;

struct EigenCluster {
  Complex value;
  std::size_t multiplicity;
};

/// Eigenvalues (and optionally eigenvectors, stored as columns) of a square matrix.
struct SpectralResult {
  std::vector<Complex> eigenvalues;
  std::optional<ComplexMatrix> eigenvectors;
  /// max_k |A x_k - x_k lambda_k| over computed pairs; 0 when no vectors were requested.
  double residual = 0.0;
  double cluster_tolerance = kDefaultClusterTolerance;

  /// Eigenvalues grouped by proximity (consecutive in the sorted order).
  std::vector<EigenCluster> clusters() const;
  std::vector<double> real_values() const;
};

/// LU factorisation with partial pivoting, PA = LU.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a);

  Complex determinant() const;
  std::vector<Complex> solve(std::span<const Complex> b) const;
  /// Smallest |pivot|, a cheap singularity indicator.
  double min_pivot() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
};

Complex determinant(const ComplexMatrix& a);

/// Real symmetric eigensolver (cyclic Jacobi). Eigenvalues ascending, imaginary parts exactly 0.
SpectralResult eig_symmetric(const ComplexMatrix& a, bool want_vectors = false,
                             double cluster_tolerance = kDefaultClusterTolerance);

/// Complex Hermitian eigensolver through the real symmetric embedding [[A,-B],[B,A]].
SpectralResult eig_hermitian(const ComplexMatrix& a, bool want_vectors = false,
                             double cluster_tolerance = kDefaultClusterTolerance);

/// General complex eigenvalues: Householder Hessenberg reduction followed by
/// single-shift QR with deflation. Sorted by modulus descending, then argument ascending.
SpectralResult eig_general(const ComplexMatrix& a,
                           double cluster_tolerance = kDefaultClusterTolerance);

double spectral_radius(const ComplexMatrix& a);

struct NullSpace {
  /// Orthonormal basis vectors.
  std::vector<std::vector<Complex>> basis;
  /// Singular values of A in ascending order.
  std::vector<double> singular_values;
};

/// Right singular directions of A whose singular value is below `threshold`,
/// computed from the Hermitian eigenproblem of A^dagger A.
NullSpace null_space(const ComplexMatrix& a, double threshold);

/// Inverse iteration for the eigenvector of A closest to `shift`. Unit norm.
std::vector<Complex> eigenvector_near(const ComplexMatrix& a, Complex shift,
                                      int iterations = 4);

/// Greedy multiset matching: sort `a` by (modulus, argument), pair each entry with the
/// closest unused entry of `b`, return the largest pair distance.
double multiset_distance(std::vector<Complex> a, std::vector<Complex> b);

/// Orders complex numbers by modulus, then by argument.
bool modulus_argument_less(const Complex& x, const Complex& y);

}  // namespace graphzeta
