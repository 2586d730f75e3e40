#include "graphzeta/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphzeta/error.hpp"
#include "graphzeta/linalg.hpp"

namespace graphzeta {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<Complex> vertex_phases(const Graph& g, Complex lambda, LaplacianKind kind) {
  std::vector<Complex> phases(g.num_vertices());
  for (VertexId j = 0; j < g.num_vertices(); ++j) phases[j] = vertex_phase(g.degree(j, kind), lambda);
  return phases;
}

double coupling(const DirectedBondSpace& bonds, BondId to, BondId from, LaplacianKind kind) {
  return kind == LaplacianKind::Standard ? 1.0 : std::sqrt(bonds.weight(to) * bonds.weight(from));
}

Complex element(Complex phase, double degree, bool back, double coupling) {
  return kI * ((back ? 1.0 : 0.0) - (1.0 + phase) / degree * coupling);
}

void require_kind(const Graph& g, LaplacianKind kind) {
  if (kind == LaplacianKind::Generalized && !g.has_weights()) {
    throw ValidationError(ValidationError::Kind::MissingWeights,
                          "generalized scattering requested for a graph without weights");
  }
}

// Smallest eigenphase |arg mu| of U(lambda); vanishes exactly at the zeros of Z_S.
double min_eigenphase(const Graph& g, const DirectedBondSpace& bonds, double lambda,
                      LaplacianKind kind) {
  const SpectralResult s = eig_general(build_U(g, bonds, lambda, kind).matrix);
  double best = std::numbers::pi;
  for (const Complex& mu : s.eigenvalues) best = std::min(best, std::abs(std::arg(mu)));
  return best;
}

std::size_t unit_multiplicity(const Graph& g, const DirectedBondSpace& bonds, double lambda,
                              LaplacianKind kind, double tol) {
  const SpectralResult s = eig_general(build_U(g, bonds, lambda, kind).matrix);
  return static_cast<std::size_t>(std::count_if(
      s.eigenvalues.begin(), s.eigenvalues.end(),
      [tol](const Complex& mu) { return std::abs(1.0 - mu) < tol; }));
}

double golden_minimum(const Graph& g, const DirectedBondSpace& bonds, LaplacianKind kind,
                      double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = min_eigenphase(g, bonds, c, kind);
  double fd = min_eigenphase(g, bonds, d, kind);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = min_eigenphase(g, bonds, c, kind);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = min_eigenphase(g, bonds, d, kind);
    }
  }
  return 0.5 * (a + b);
}

std::vector<SecularZero> scan_once(const Graph& g, const DirectedBondSpace& bonds,
                                   LaplacianKind kind, double lo, double hi, double step,
                                   const ZeroScanOptions& options) {
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  std::vector<double> x(n);
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = lo + step * static_cast<double>(k);
    f[k] = secular_Z_S(g, x[k], kind).real();
  }

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (f[k] == 0.0 || (f[k] < 0.0) != (f[k + 1] < 0.0)) {
      brackets.emplace_back(x[k > 0 ? k - 1 : k], x[std::min(k + 2, n - 1)]);
    }
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (std::abs(f[k]) <= std::abs(f[k - 1]) && std::abs(f[k]) <= std::abs(f[k + 1])) {
      brackets.emplace_back(x[k - 1], x[k + 1]);
    }
  }

  std::vector<SecularZero> zeros;
  for (const auto& [a, b] : brackets) {
    const double z = golden_minimum(g, bonds, kind, a, b, options.refine_tolerance);
    const std::size_t m = unit_multiplicity(g, bonds, z, kind, options.multiplicity_tolerance);
    if (m > 0) zeros.push_back({z, m});
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const SecularZero& p, const SecularZero& q) { return p.lambda < q.lambda; });

  std::vector<SecularZero> merged;
  for (const SecularZero& z : zeros) {
    if (!merged.empty() && z.lambda - merged.back().lambda < 1e-7) {
      merged.back().multiplicity = std::max(merged.back().multiplicity, z.multiplicity);
    } else {
      merged.push_back(z);
    }
  }
  return merged;
}

}  // namespace

Complex vertex_phase(double degree, Complex lambda) {
  if (!(degree > 0.0)) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "vertex phase undefined for an isolated vertex");
  }
  const Complex x = 1.0 - lambda / degree;
  const Complex num = 1.0 + kI * x;
  const Complex den = 1.0 - kI * x;
  if (std::abs(den) < kPoleGuard) throw NumericError("lambda at a pole v(1+i) of the vertex phase");
  if (std::abs(num) < kPoleGuard) throw NumericError("lambda at a zero v(1-i) of the vertex phase");
  return num / den;
}

VertexScatteringMatrix vertex_sigma(const Graph& g, VertexId i, Complex lambda,
                                    LaplacianKind kind) {
  require_kind(g, kind);
  if (i >= g.num_vertices()) {
    throw ValidationError(ValidationError::Kind::VertexOutOfRange, "vertex out of range");
  }
  const DirectedBondSpace bonds(g);
  VertexScatteringMatrix s;
  s.vertex = i;
  s.lambda = lambda;
  s.outgoing.assign(bonds.outgoing(i).begin(), bonds.outgoing(i).end());
  s.incoming.assign(bonds.incoming(i).begin(), bonds.incoming(i).end());
  const double degree = g.degree(i, kind);
  s.phase = vertex_phase(degree, lambda);
  s.entries = ComplexMatrix(s.outgoing.size(), s.incoming.size());
  for (std::size_t r = 0; r < s.outgoing.size(); ++r) {
    for (std::size_t c = 0; c < s.incoming.size(); ++c) {
      const BondId d = s.outgoing[r];
      const BondId dp = s.incoming[c];
      s.entries(r, c) = element(s.phase, degree, d == DirectedBondSpace::reversal(dp),
                                coupling(bonds, d, dp, kind));
    }
  }
  return s;
}

Complex sigma_entry(const Graph& g, const DirectedBondSpace& bonds, BondId to, BondId from,
                    Complex lambda, LaplacianKind kind) {
  require_kind(g, kind);
  if (!bonds.follows(to, from)) return {};
  const VertexId j = bonds.terminus(from);
  const double degree = g.degree(j, kind);
  return element(vertex_phase(degree, lambda), degree, to == DirectedBondSpace::reversal(from),
                 coupling(bonds, to, from, kind));
}

EvolutionOperator build_U(const Graph& g, const DirectedBondSpace& bonds, Complex lambda,
                          LaplacianKind kind) {
  require_kind(g, kind);
  const std::vector<Complex> phases = vertex_phases(g, lambda, kind);
  EvolutionOperator u{ComplexMatrix(bonds.size(), bonds.size()), lambda, kind};
  for (BondId d = 0; d < bonds.size(); ++d) {
    const VertexId j = bonds.terminus(d);
    const double degree = g.degree(j, kind);
    for (BondId dp : bonds.successors(d)) {
      u.matrix(dp, d) = element(phases[j], degree, dp == DirectedBondSpace::reversal(d),
                                coupling(bonds, dp, d, kind));
    }
  }
  return u;
}

EvolutionOperator build_U(const Graph& g, Complex lambda, LaplacianKind kind) {
  return build_U(g, DirectedBondSpace(g), lambda, kind);
}

Complex det_U_closed(const Graph& g, Complex lambda, LaplacianKind kind) {
  Complex p = g.num_vertices() % 2 == 0 ? 1.0 : -1.0;
  for (const Complex& e : vertex_phases(g, lambda, kind)) p *= e;
  return p;
}

Complex half_phase_product(const Graph& g, Complex lambda, LaplacianKind kind) {
  Complex p = 1.0;
  for (const Complex& e : vertex_phases(g, lambda, kind)) p *= -kI / std::sqrt(e);
  return p;
}

Complex det_I_minus_U(const Graph& g, Complex lambda, LaplacianKind kind) {
  ComplexMatrix a = ComplexMatrix::identity(2 * g.num_edges());
  a -= build_U(g, lambda, kind).matrix;
  return determinant(a);
}

Complex secular_Z_S(const Graph& g, Complex lambda, LaplacianKind kind) {
  const double scale = std::ldexp(1.0, -static_cast<int>(g.num_edges()));
  return scale * half_phase_product(g, lambda, kind) * det_I_minus_U(g, lambda, kind);
}

std::vector<SecularZero> secular_zeros(const Graph& g, LaplacianKind kind,
                                       const ZeroScanOptions& options) {
  require_kind(g, kind);
  const DirectedBondSpace bonds(g);
  double top = 0.0;
  for (VertexId i = 0; i < g.num_vertices(); ++i) top = std::max(top, g.degree(i, kind));
  const double lo = -0.5;
  const double hi = 2.0 * top + 0.5;
  double step = (hi - lo) / (options.step_divisor * static_cast<double>(g.num_vertices()));

  std::vector<SecularZero> zeros;
  for (int attempt = 0; attempt <= options.max_rescans; ++attempt, step /= 2.0) {
    zeros = scan_once(g, bonds, kind, lo, hi, step, options);
    std::size_t total = 0;
    for (const SecularZero& z : zeros) total += z.multiplicity;
    if (total == g.num_vertices()) break;
  }
  return zeros;
}

ReconstructedModes reconstruct_eigenvector(const Graph& g, double lambda, LaplacianKind kind,
                                           double threshold) {
  const DirectedBondSpace bonds(g);
  ComplexMatrix a = ComplexMatrix::identity(bonds.size());
  a -= build_U(g, bonds, lambda, kind).matrix;
  const NullSpace ns = null_space(a, threshold);
  if (ns.basis.empty()) {
    throw NumericError("I - U(lambda) has no null direction; lambda is not in the spectrum");
  }

  const Complex in = std::polar(1.0, std::numbers::pi / 4.0);
  const Complex out = std::conj(in);
  ReconstructedModes modes;
  modes.singular_values = ns.singular_values;
  for (const std::vector<Complex>& amp : ns.basis) {
    std::vector<Complex> psi(g.num_vertices());
    for (VertexId i = 0; i < g.num_vertices(); ++i) {
      Complex s{};
      for (BondId b : bonds.outgoing(i)) {
        const double scale = kind == LaplacianKind::Standard ? 1.0 : 1.0 / std::sqrt(bonds.weight(b));
        s += scale * (amp[b] * in + amp[DirectedBondSpace::reversal(b)] * out);
      }
      psi[i] = s / static_cast<double>(g.degrees().valency[i]);
    }
    for (const std::vector<Complex>& q : modes.psi) {
      Complex dot{};
      for (std::size_t k = 0; k < psi.size(); ++k) dot += std::conj(q[k]) * psi[k];
      for (std::size_t k = 0; k < psi.size(); ++k) psi[k] -= dot * q[k];
    }
    const double norm = norm2(psi);
    if (norm < 1e-8) continue;
    std::size_t peak = 0;
    for (std::size_t k = 1; k < psi.size(); ++k)
      if (std::abs(psi[k]) > std::abs(psi[peak]) + 1e-12) peak = k;
    const Complex phase = std::abs(psi[peak]) / psi[peak] / norm;
    for (Complex& z : psi) z *= phase;
    modes.psi.push_back(std::move(psi));
  }
  return modes;
}

}  // namespace graphzeta
