#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/orbits.hpp"

namespace graphzeta {

inline constexpr double kMinSmoothing = 1e-3;
inline constexpr double kDefaultSmoothing = 0.3;
inline constexpr double kDerivativeStep = 1e-5;

struct OrbitCutoffs {
  /// Longest primitive period included.
  std::size_t max_length = 0;
  /// Largest repetition index r.
  std::size_t max_repetition = 0;
};

/// Smoothed spectral density and its trace-formula decomposition on a real grid.
struct DensityEvaluation {
  std::vector<double> lambda_grid;
  double epsilon = kDefaultSmoothing;
  std::vector<double> exact_density;
  /// Lorentzian term at the smoothing width epsilon.
  std::vector<double> weyl_term;
  std::vector<double> orbit_term;
  /// (1/pi) Im d/dlambda log Z_S(lambda - i epsilon).
  std::vector<double> reference_density;
  /// exact - (weyl + orbit).
  std::vector<double> residual;
  OrbitCutoffs cutoffs;

  double peak_density = 0.0;
  double max_residual = 0.0;
  /// max |exact - reference|.
  double max_reference_deviation = 0.0;
};

/// `steps` equally spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

/// d_eps(lambda) = (1/pi) sum_j eps / ((lambda - lambda_j)^2 + eps^2).
/// Fills lambda_grid, epsilon and exact_density only.
DensityEvaluation smoothed_density_exact(const LaplacianOperator& op, std::span<const double> grid,
                                         double epsilon);

/// (1/pi) sum_j (v_j + eps) / ((lambda - v_j)^2 + (v_j + eps)^2); u_j for the generalized kind.
/// At eps = 0 this is (1/pi) sum_j (1/v_j) / (1 + (1 - lambda/v_j)^2).
std::vector<double> weyl_term(const Graph& g, std::span<const double> grid,
                              LaplacianKind kind = LaplacianKind::Standard, double epsilon = 0.0);

/// -(1/pi) Im d/dlambda sum_{r <= R} sum_{p: n_p <= N} a_p(lambda - i eps)^r / r,
/// with a central difference of step kDerivativeStep.
std::vector<double> orbit_term(const OrbitCatalog& catalog, const Graph& g,
                               std::span<const double> grid, double epsilon, OrbitCutoffs cutoffs,
                               LaplacianKind kind = LaplacianKind::Standard);

/// (1/pi) Im d/dlambda log f(lambda - i eps) by central difference, for f = Z_S.
std::vector<double> secular_log_derivative(const Graph& g, std::span<const double> grid,
                                           double epsilon,
                                           LaplacianKind kind = LaplacianKind::Standard);

/// All curves, the residual and the reference deviation. Enumerates orbits up to N.
DensityEvaluation trace_formula_report(const Graph& g, std::span<const double> grid,
                                       double epsilon, OrbitCutoffs cutoffs,
                                       LaplacianKind kind = LaplacianKind::Standard);
DensityEvaluation trace_formula_report(const OrbitCatalog& catalog, const Graph& g,
                                       std::span<const double> grid, double epsilon,
                                       OrbitCutoffs cutoffs,
                                       LaplacianKind kind = LaplacianKind::Standard);

/// Columns lambda, exact, weyl, orbit, residual.
std::string density_to_csv(const DensityEvaluation& report);
/// Cutoffs, epsilon, peak density, max residual, max reference deviation.
std::string density_summary_json(const DensityEvaluation& report);

}  // namespace graphzeta
