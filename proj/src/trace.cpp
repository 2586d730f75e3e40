#include "graphzeta/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "graphzeta/error.hpp"
#include "graphzeta/format.hpp"
#include "graphzeta/scattering.hpp"

namespace graphzeta {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= kMinSmoothing) || !std::isfinite(epsilon)) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "smoothing width must be finite and >= " + format_double(kMinSmoothing));
  }
}

/// sum_p sum_{r <= R} a_p^r / r over orbits with n_p <= N.
Complex orbit_log_sum(const OrbitCatalog& catalog, const ComplexMatrix& u, OrbitCutoffs cutoffs) {
  const std::size_t last = catalog.range(cutoffs.max_length).second;
  Complex total{0.0, 0.0};
  for (std::size_t k = 0; k < last; ++k) {
    const Complex a = orbit_amplitude(catalog[k], u);
    Complex power = a;
    Complex sum{0.0, 0.0};
    for (std::size_t r = 1; r <= cutoffs.max_repetition; ++r) {
      sum += power / static_cast<double>(r);
      power *= a;
    }
    total += sum;
  }
  return total;
}

}  // namespace

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0 || !(hi >= lo)) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "grid needs steps >= 1 and hi >= lo");
  }
  if (steps == 1) return {lo};
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  }
  return grid;
}

DensityEvaluation smoothed_density_exact(const LaplacianOperator& op, std::span<const double> grid,
                                         double epsilon) {
  check_epsilon(epsilon);
  const std::vector<double> spectrum = laplacian_spectrum(op).real_values();
  DensityEvaluation out;
  out.lambda_grid.assign(grid.begin(), grid.end());
  out.epsilon = epsilon;
  out.exact_density.reserve(grid.size());
  for (double lam : grid) {
    double d = 0.0;
    for (double lj : spectrum) d += epsilon / ((lam - lj) * (lam - lj) + epsilon * epsilon);
    out.exact_density.push_back(d / std::numbers::pi);
  }
  out.peak_density = out.exact_density.empty()
                         ? 0.0
                         : *std::max_element(out.exact_density.begin(), out.exact_density.end());
  return out;
}

std::vector<double> weyl_term(const Graph& g, std::span<const double> grid, LaplacianKind kind,
                              double epsilon) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double lam : grid) {
    double w = 0.0;
    for (VertexId j = 0; j < g.num_vertices(); ++j) {
      const double v = g.degree(j, kind);
      const double s = v + epsilon;
      w += s / ((lam - v) * (lam - v) + s * s);
    }
    out.push_back(w / std::numbers::pi);
  }
  return out;
}

std::vector<double> orbit_term(const OrbitCatalog& catalog, const Graph& g,
                               std::span<const double> grid, double epsilon, OrbitCutoffs cutoffs,
                               LaplacianKind kind) {
  check_epsilon(epsilon);
  if (catalog.max_length() < cutoffs.max_length) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog depth " + std::to_string(catalog.max_length()) +
                              " is below the cutoff " + std::to_string(cutoffs.max_length));
  }
  if (catalog.non_backtracking_only()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "trace formula needs the full orbit catalog");
  }
  const DirectedBondSpace bonds(g);
  const double h = kDerivativeStep;
  std::vector<double> out;
  out.reserve(grid.size());
  for (double lam : grid) {
    const Complex up{lam + h, -epsilon};
    const Complex down{lam - h, -epsilon};
    const Complex plus = orbit_log_sum(catalog, build_U(g, bonds, up, kind).matrix, cutoffs);
    const Complex minus = orbit_log_sum(catalog, build_U(g, bonds, down, kind).matrix, cutoffs);
    out.push_back(-((plus - minus) / (2.0 * h)).imag() / std::numbers::pi);
  }
  return out;
}

std::vector<double> secular_log_derivative(const Graph& g, std::span<const double> grid,
                                           double epsilon, LaplacianKind kind) {
  check_epsilon(epsilon);
  const double h = kDerivativeStep;
  std::vector<double> out;
  out.reserve(grid.size());
  for (double lam : grid) {
    const Complex up = secular_Z_S(g, Complex{lam + h, -epsilon}, kind);
    const Complex down = secular_Z_S(g, Complex{lam - h, -epsilon}, kind);
    // Im log(up/down) is the phase increment, free of branch jumps for small h.
    out.push_back(std::arg(up / down) / (2.0 * h) / std::numbers::pi);
  }
  return out;
}

DensityEvaluation trace_formula_report(const Graph& g, std::span<const double> grid,
                                       double epsilon, OrbitCutoffs cutoffs, LaplacianKind kind) {
  const OrbitCatalog catalog = enumerate_orbits(DirectedBondSpace(g), cutoffs.max_length);
  return trace_formula_report(catalog, g, grid, epsilon, cutoffs, kind);
}

DensityEvaluation trace_formula_report(const OrbitCatalog& catalog, const Graph& g,
                                       std::span<const double> grid, double epsilon,
                                       OrbitCutoffs cutoffs, LaplacianKind kind) {
  DensityEvaluation out = smoothed_density_exact(build_laplacian(g, kind), grid, epsilon);
  out.cutoffs = cutoffs;
  out.weyl_term = weyl_term(g, grid, kind, epsilon);
  out.orbit_term = orbit_term(catalog, g, grid, epsilon, cutoffs, kind);
  out.reference_density = secular_log_derivative(g, grid, epsilon, kind);
  out.residual.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.residual[k] = out.exact_density[k] - (out.weyl_term[k] + out.orbit_term[k]);
    out.max_residual = std::max(out.max_residual, std::abs(out.residual[k]));
    out.max_reference_deviation = std::max(
        out.max_reference_deviation, std::abs(out.exact_density[k] - out.reference_density[k]));
  }
  return out;
}

std::string density_to_csv(const DensityEvaluation& report) {
  std::string out = "lambda,exact,weyl,orbit,residual\n";
  for (std::size_t k = 0; k < report.lambda_grid.size(); ++k) {
    const auto cell = [&](const std::vector<double>& col) {
      return k < col.size() ? format_double(col[k]) : std::string();
    };
    out += format_double(report.lambda_grid[k]) + ',' + cell(report.exact_density) + ',' +
           cell(report.weyl_term) + ',' + cell(report.orbit_term) + ',' + cell(report.residual) +
           '\n';
  }
  return out;
}

std::string density_summary_json(const DensityEvaluation& report) {
  nlohmann::json j;
  j["epsilon"] = report.epsilon;
  j["max_length"] = report.cutoffs.max_length;
  j["max_repetition"] = report.cutoffs.max_repetition;
  j["grid_points"] = report.lambda_grid.size();
  j["peak_density"] = report.peak_density;
  j["max_residual"] = report.max_residual;
  j["max_reference_deviation"] = report.max_reference_deviation;
  return j.dump(2);
}

}  // namespace graphzeta
