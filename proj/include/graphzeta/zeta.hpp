#pragma once

#include <cstddef>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/matrix.hpp"
#include "graphzeta/orbits.hpp"

namespace graphzeta {

/// Product side and determinant side of a zeta identity, with truncation diagnostics.
struct ZetaEvaluation {
  Complex value;
  Complex det_value;
  std::size_t truncation_length = 0;
  /// |product_N - product_{N-1}| / |product_N|.
  double convergence_gap = 0.0;
  /// |value - det_value| / |det_value|.
  double relative_error = 0.0;
  /// Spectral radius of the transfer operator behind the product.
  double spectral_radius = 0.0;
  /// False when the product is evaluated outside its guaranteed convergence region.
  bool converges = true;
};

/// det(lambda I - L) / prod_j (v_j + i(v_j - lambda)), with u_j for the generalized kind.
Complex zeta_S_det(const Graph& g, Complex lambda, LaplacianKind kind = LaplacianKind::Standard);

/// prod_{p: n_p <= N} (1 - a_p(lambda)) against det(I - U(lambda)).
ZetaEvaluation zeta_S_product(const OrbitCatalog& catalog, const Graph& g, Complex lambda,
                              std::size_t truncation, LaplacianKind kind = LaplacianKind::Standard);

/// Non-backtracking bond matrix W: W_{d',d} = 1 when d' follows d and d' != reversal(d).
ComplexMatrix non_backtracking_matrix(const DirectedBondSpace& bonds);

/// Inverse Ihara zeta (1 - u^2)^{r-1} det(I - uC + u^2 Q), Q = D - I.
Complex ihara_zeta_det(const Graph& g, Complex u);

/// prod_{n <= N} (1 - u^n)^{|C(n)|} against the determinant form.
ZetaEvaluation ihara_zeta_product(const OrbitCatalog& catalog, const Graph& g, Complex u,
                                  std::size_t truncation);

struct IharaSeries {
  /// N_m in -log zeta(u)^{-1} = sum_m N_m u^m / m, index m = 0..max_n.
  std::vector<double> closed_walks;
  /// Moebius inversion of N_m: |C(n)|.
  std::vector<double> primitive;
};

/// Taylor coefficients of -log ihara_zeta_det(u) from a `points`-point discrete Fourier
/// transform of log values on the circle |u| = radius.
IharaSeries ihara_log_series(const Graph& g, std::size_t max_n, double radius = 0.1,
                             std::size_t points = 64);

/// Y_{d',d} = eta_{d',d} when d' follows d and d' != reversal(d), else 0.
ComplexMatrix stark_Y(const DirectedBondSpace& bonds, const ComplexMatrix& eta);

/// det(I - Y) against prod_{c in C, n_c <= N} (1 - f_c), f_c the cyclic product of eta.
/// Orbits with back-scattering in `catalog` are skipped.
ZetaEvaluation stark_zeta(const DirectedBondSpace& bonds, const ComplexMatrix& eta,
                          const OrbitCatalog& catalog, std::size_t truncation);

/// Regular graphs: (2z/(z+1))^V det(C + iv (z-1)/(z+1) I).
Complex zeta_S_regular_z(const Graph& g, Complex z);

/// lambda = v(1 + i(z-1)/(z+1)), the inverse of z = e^{i alpha(lambda)}.
Complex lambda_from_z(double v, Complex z);

struct FunctionalEquationCheck {
  double defect = 0.0;
  /// True when z or 1/z lies within 1e-9 of the branch cut of z^{V/2}.
  bool near_branch_cut = false;
};

/// |gamma(1/z) - conj(gamma(conj z))| with gamma(z) = z^{V/2} / zeta_S_regular_z(z).
FunctionalEquationCheck functional_equation_check(const Graph& g, Complex z);

}  // namespace graphzeta
