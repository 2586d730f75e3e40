#include "graphzeta/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "graphzeta/error.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/scattering.hpp"
#include "graphzeta/zeta.hpp"

namespace graphzeta {

namespace {

double sharp_valency(const Graph& g) {
  const auto v = g.regular_degree();
  if (!v) throw ValidationError(ValidationError::Kind::NotRegular, "M# needs a regular graph");
  if (*v <= 2) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "M# needs valency v > 2");
  }
  return static_cast<double>(*v);
}

ComplexMatrix squared_modulus(const ComplexMatrix& u) {
  ComplexMatrix m(u.rows(), u.cols());
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) m(r, c) = std::norm(u(r, c));
  return m;
}

}  // namespace

double bistochastic_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += m(r, c).real();
    worst = std::max(worst, std::abs(s - 1.0));
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += m(r, c).real();
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

ClassicalMap build_M(const Graph& g, Complex lambda, LaplacianKind kind) {
  if (lambda.imag() != 0.0) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "M(lambda) needs real lambda; use build_M_sharp for the special point");
  }
  ClassicalMap out{squared_modulus(build_U(g, lambda, kind).matrix), lambda, true};
  const double defect = bistochastic_defect(out.matrix);
  if (!(defect < kStochasticTolerance)) {
    throw NumericError("M(lambda) is not bi-stochastic: defect " + std::to_string(defect));
  }
  return out;
}

std::vector<double> evolve(const ClassicalMap& map, std::span<const double> rho0, std::size_t steps) {
  const std::size_t n = map.matrix.rows();
  if (rho0.size() != n) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "initial distribution has " + std::to_string(rho0.size()) +
                              " entries, expected " + std::to_string(n));
  }
  for (double x : rho0) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ValidationError(ValidationError::Kind::InvalidArgument,
                            "initial distribution must be non-negative");
    }
  }
  if (std::abs(std::accumulate(rho0.begin(), rho0.end(), 0.0) - 1.0) > 1e-12) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "initial distribution must sum to 1");
  }
  std::vector<double> rho(rho0.begin(), rho0.end());
  std::vector<double> next(n);
  for (std::size_t step = 0; step < steps; ++step) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += map.matrix(r, c).real() * rho[c];
      if (s < 0.0) throw NumericError("evolution produced a negative probability");
      next[r] = s;
      total += s;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw NumericError("evolution lost l1 norm at step " + std::to_string(step + 1));
    }
    rho.swap(next);
  }
  return rho;
}

MixingGap mixing_gap(const ClassicalMap& map) {
  if (!map.normalized) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "mixing gap needs a normalized map");
  }
  MixingGap out;
  out.eigenvalues = eig_general(map.matrix).eigenvalues;
  if (out.eigenvalues.empty()) return out;
  std::size_t unit = 0;
  for (std::size_t k = 1; k < out.eigenvalues.size(); ++k)
    if (std::abs(out.eigenvalues[k] - 1.0) < std::abs(out.eigenvalues[unit] - 1.0)) unit = k;
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k)
    if (k != unit) out.second_modulus = std::max(out.second_modulus, std::abs(out.eigenvalues[k]));
  out.gap = 1.0 - out.second_modulus;
  out.mixing = out.second_modulus <= 1.0 - kNonMixingThreshold;

  // A slightly displaced shift keeps the inverse-iteration matrix invertible.
  const std::vector<Complex> v = eigenvector_near(map.matrix, Complex{1.0 + 1e-9, 0.0}, 8);
  Complex total{0.0, 0.0};
  for (const Complex& x : v) total += x;
  out.equilibrium.reserve(v.size());
  for (const Complex& x : v) out.equilibrium.push_back((x / total).real());
  return out;
}

ClassicalMap build_M_sharp(const Graph& g, bool normalize) {
  const double v = sharp_valency(g);
  const DirectedBondSpace bonds(g);
  const Complex lambda{v, v - 2.0};
  ComplexMatrix m = squared_modulus(build_U(g, bonds, lambda).matrix);
  const ComplexMatrix w = non_backtracking_matrix(bonds);
  if (!((m - w).max_abs() < 1e-12)) {
    throw NumericError("|U|^2 at the special point differs from the non-backtracking matrix");
  }
  if (normalize) m *= Complex{1.0 / (v - 1.0), 0.0};
  return {std::move(m), lambda, normalize};
}

std::vector<Complex> m_sharp_spectrum_via_laplacian(const Graph& g) {
  const double v = sharp_valency(g);
  const std::size_t r = rank(g);
  const double q = v - 1.0;
  std::vector<Complex> out;
  for (std::size_t k = 0; k + 1 < r; ++k) {
    out.emplace_back(1.0 / q, 0.0);
    out.emplace_back(-1.0 / q, 0.0);
  }
  for (double lj : laplacian_spectrum(build_laplacian(g)).real_values()) {
    const double b = v - lj;
    const Complex root = std::sqrt(Complex{b * b - 4.0 * q, 0.0});
    out.push_back((b + root) / (2.0 * q));
    out.push_back((b - root) / (2.0 * q));
  }
  return out;
}

Complex classical_secular_Z_M(const ClassicalMap& map, Complex mu) {
  return determinant(ComplexMatrix::identity(map.matrix.rows()) - mu * map.matrix);
}

Complex m_sharp_secular_via_laplacian(const Graph& g, Complex mu) {
  const double v = sharp_valency(g);
  const std::size_t r = rank(g);
  const Complex u = mu / (v - 1.0);
  const std::size_t n = g.num_vertices();
  const ComplexMatrix a = (1.0 + mu * u) * ComplexMatrix::identity(n) - u * g.adjacency();
  return std::pow(1.0 - u * u, static_cast<int>(r) - 1) * determinant(a);
}

std::string spectrum_to_json(std::span<const Complex> eigenvalues) {
  nlohmann::json j = nlohmann::json::array();
  for (const Complex& z : eigenvalues) {
    j.push_back({{"re", z.real()}, {"im", z.imag()}, {"modulus", std::abs(z)}});
  }
  return j.dump(2);
}

std::string gap_summary_json(const MixingGap& gap) {
  nlohmann::json j;
  j["gap"] = gap.gap;
  j["second_modulus"] = gap.second_modulus;
  j["mixing"] = gap.mixing;
  j["size"] = gap.eigenvalues.size();
  return j.dump(2);
}

}  // namespace graphzeta
