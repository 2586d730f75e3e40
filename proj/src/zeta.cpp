#include "graphzeta/zeta.hpp"

#include <cmath>
#include <numbers>

#include "graphzeta/error.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/scattering.hpp"

namespace graphzeta {

namespace {

constexpr Complex kI{0.0, 1.0};
// Eigenvalues of modulus above 1 - kUnitTolerance count as lying on the unit circle.
constexpr double kUnitTolerance = 1e-9;

double regular_valency(const Graph& g) {
  const auto v = g.regular_degree();
  if (!v) throw ValidationError(ValidationError::Kind::NotRegular, "graph is not regular");
  return static_cast<double>(*v);
}

double relative(Complex a, Complex b) {
  const double scale = std::abs(b);
  return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

int moebius(std::size_t n) {
  int mu = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

Complex zeta_S_det(const Graph& g, Complex lambda, LaplacianKind kind) {
  Complex denom = 1.0;
  for (VertexId j = 0; j < g.num_vertices(); ++j) {
    const double v = g.degree(j, kind);
    const Complex f = v + kI * (v - lambda);
    if (std::abs(f) < kPoleGuard * std::max(1.0, v)) {
      throw NumericError("lambda at a pole v(1-i) of zeta_S");
    }
    denom *= f;
  }
  return char_poly_value(build_laplacian(g, kind), lambda) / denom;
}

ZetaEvaluation zeta_S_product(const OrbitCatalog& catalog, const Graph& g, Complex lambda,
                              std::size_t truncation, LaplacianKind kind) {
  if (truncation > catalog.max_length() || catalog.non_backtracking_only()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog does not cover the requested truncation");
  }
  const ComplexMatrix u = build_U(g, lambda, kind).matrix;
  ZetaEvaluation ev;
  ev.truncation_length = truncation;
  Complex product = 1.0;
  Complex previous = 1.0;
  for (std::size_t n = 2; n <= truncation; ++n) {
    previous = product;
    const auto [first, last] = catalog.range(n);
    for (std::size_t k = first; k < last; ++k) product *= 1.0 - orbit_amplitude(catalog[k], u);
  }
  ev.value = product;
  ev.convergence_gap = relative(previous, product);
  ComplexMatrix a = ComplexMatrix::identity(u.rows());
  a -= u;
  ev.det_value = determinant(a);
  ev.relative_error = relative(ev.value, ev.det_value);
  ev.spectral_radius = spectral_radius(u);
  ev.converges = lambda.imag() < 0.0 && ev.spectral_radius < 1.0 - kUnitTolerance;
  return ev;
}

ComplexMatrix non_backtracking_matrix(const DirectedBondSpace& bonds) {
  ComplexMatrix w(bonds.size(), bonds.size());
  for (BondId d = 0; d < bonds.size(); ++d)
    for (BondId e : bonds.successors(d))
      if (e != DirectedBondSpace::reversal(d)) w(e, d) = 1.0;
  return w;
}

Complex ihara_zeta_det(const Graph& g, Complex u) {
  const std::size_t n = g.num_vertices();
  ComplexMatrix m = g.adjacency();
  m *= -u;
  for (std::size_t i = 0; i < n; ++i) {
    const double q = static_cast<double>(g.degrees().valency[i]) - 1.0;
    m(i, i) += 1.0 + u * u * q;
  }
  const double r = static_cast<double>(rank(g));
  return std::pow(1.0 - u * u, r - 1.0) * determinant(m);
}

ZetaEvaluation ihara_zeta_product(const OrbitCatalog& catalog, const Graph& g, Complex u,
                                  std::size_t truncation) {
  if (truncation > catalog.max_length()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog does not cover the requested truncation");
  }
  ZetaEvaluation ev;
  ev.truncation_length = truncation;
  Complex product = 1.0;
  Complex previous = 1.0;
  for (std::size_t n = 2; n <= truncation; ++n) {
    previous = product;
    product *= std::pow(1.0 - std::pow(u, static_cast<int>(n)),
                        static_cast<double>(catalog.count_non_backtracking(n)));
  }
  ev.value = product;
  ev.convergence_gap = relative(previous, product);
  ev.det_value = ihara_zeta_det(g, u);
  ev.relative_error = relative(ev.value, ev.det_value);
  ev.spectral_radius = std::abs(u) * spectral_radius(non_backtracking_matrix(DirectedBondSpace(g)));
  ev.converges = ev.spectral_radius < 1.0 - kUnitTolerance;
  return ev;
}

IharaSeries ihara_log_series(const Graph& g, std::size_t max_n, double radius, std::size_t points) {
  if (points <= max_n || !(radius > 0.0)) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "log-series transform needs radius > 0 and more points than terms");
  }
  std::vector<Complex> logs(points);
  for (std::size_t k = 0; k < points; ++k) {
    const Complex u = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                             static_cast<double>(points));
    logs[k] = std::log(ihara_zeta_det(g, u));
  }
  IharaSeries s;
  s.closed_walks.assign(max_n + 1, 0.0);
  s.primitive.assign(max_n + 1, 0.0);
  for (std::size_t m = 1; m <= max_n; ++m) {
    Complex c{};
    for (std::size_t k = 0; k < points; ++k) {
      c += logs[k] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * m) /
                                         static_cast<double>(points));
    }
    c /= static_cast<double>(points);
    s.closed_walks[m] = -(c * static_cast<double>(m) / std::pow(radius, static_cast<double>(m))).real();
  }
  for (std::size_t n = 1; n <= max_n; ++n) {
    double sum = 0.0;
    for (std::size_t d = 1; d <= n; ++d)
      if (n % d == 0) sum += moebius(n / d) * s.closed_walks[d];
    s.primitive[n] = sum / static_cast<double>(n);
  }
  return s;
}

ComplexMatrix stark_Y(const DirectedBondSpace& bonds, const ComplexMatrix& eta) {
  if (eta.rows() != bonds.size() || eta.cols() != bonds.size()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "eta must be 2B x 2B");
  }
  ComplexMatrix y(bonds.size(), bonds.size());
  for (BondId d = 0; d < bonds.size(); ++d)
    for (BondId e : bonds.successors(d))
      if (e != DirectedBondSpace::reversal(d)) y(e, d) = eta(e, d);
  return y;
}

ZetaEvaluation stark_zeta(const DirectedBondSpace& bonds, const ComplexMatrix& eta,
                          const OrbitCatalog& catalog, std::size_t truncation) {
  if (truncation > catalog.max_length()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog does not cover the requested truncation");
  }
  const ComplexMatrix y = stark_Y(bonds, eta);
  ZetaEvaluation ev;
  ev.truncation_length = truncation;
  Complex product = 1.0;
  Complex previous = 1.0;
  for (std::size_t n = 2; n <= truncation; ++n) {
    previous = product;
    const auto [first, last] = catalog.range(n);
    for (std::size_t k = first; k < last; ++k) {
      const PrimitiveOrbit c = catalog[k];
      if (!c.no_backtrack()) continue;
      product *= 1.0 - orbit_amplitude(c, y);
    }
  }
  ev.value = product;
  ev.convergence_gap = relative(previous, product);
  ComplexMatrix a = ComplexMatrix::identity(y.rows());
  a -= y;
  ev.det_value = determinant(a);
  ev.relative_error = relative(ev.value, ev.det_value);
  ev.spectral_radius = spectral_radius(y);
  ev.converges = ev.spectral_radius < 1.0 - kUnitTolerance;
  return ev;
}

Complex lambda_from_z(double v, Complex z) { return v * (1.0 + kI * (z - 1.0) / (z + 1.0)); }

Complex zeta_S_regular_z(const Graph& g, Complex z) {
  const double v = regular_valency(g);
  if (std::abs(z + 1.0) < kPoleGuard) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "z = -1 is excluded");
  }
  const Complex y = (z - 1.0) / (z + 1.0);
  ComplexMatrix m = g.adjacency();
  for (std::size_t i = 0; i < g.num_vertices(); ++i) m(i, i) += kI * v * y;
  return std::pow(2.0 * z / (z + 1.0), static_cast<int>(g.num_vertices())) * determinant(m);
}

FunctionalEquationCheck functional_equation_check(const Graph& g, Complex z) {
  if (std::abs(z) < kPoleGuard || std::abs(z + 1.0) < kPoleGuard) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "z = 0 and z = -1 are excluded");
  }
  const double half_v = static_cast<double>(g.num_vertices()) / 2.0;
  auto gamma = [&](Complex w) { return std::pow(w, half_v) / zeta_S_regular_z(g, w); };
  FunctionalEquationCheck check;
  check.near_branch_cut = std::abs(std::abs(std::arg(z)) - std::numbers::pi) < 1e-9;
  check.defect = std::abs(gamma(1.0 / z) - std::conj(gamma(std::conj(z))));
  return check;
}

}  // namespace graphzeta
