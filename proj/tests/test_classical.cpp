#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphzeta/classical.hpp"
#include "graphzeta/error.hpp"
#include "graphzeta/fixtures.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/orbits.hpp"
#include "graphzeta/random.hpp"
#include "graphzeta/scattering.hpp"
#include "oracle.hpp"

using namespace graphzeta;
using oracle::relative_error;

namespace {

std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  for (double& x : p) x = rng.uniform();
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return p;
}

std::vector<Complex> eigen_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<oracle::EMatrix> solver(oracle::to_eigen(m), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_CASE("M(lambda) is bi-stochastic on the real axis") {
  Rng rng(1101);
  for (const auto& f : fixtures::standard_set()) {
    CAPTURE(f.name);
    CHECK(bistochastic_defect(build_M(f.graph, 0.0, f.kind).matrix) < 1e-10);
    for (int t = 0; t < 50; ++t) {
      const double lam = rng.uniform(-5.0, 15.0);
      const ClassicalMap m = build_M(f.graph, lam, f.kind);
      CHECK(bistochastic_defect(m.matrix) < 1e-10);
      for (std::size_t r = 0; r < m.matrix.rows(); ++r)
        for (std::size_t c = 0; c < m.matrix.cols(); ++c) CHECK(m.matrix(r, c).real() >= 0.0);
    }
  }
  CHECK_THROWS_AS(build_M(fixtures::cycle(3), Complex{1.0, -0.1}), ValidationError);
}

TEST_CASE("M examples") {
  const ClassicalMap p2 = build_M(fixtures::path(2), 0.7);
  CHECK(std::abs(p2.matrix(0, 0)) < 1e-15);
  CHECK(std::abs(p2.matrix(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(p2.matrix(1, 0) - 1.0) < 1e-15);
  CHECK(std::abs(p2.matrix(1, 1)) < 1e-15);

  const ClassicalMap c3 = build_M(fixtures::cycle(3), 1.0);
  const MixingGap g = mixing_gap(c3);
  for (double x : g.equilibrium) CHECK(std::abs(x - 1.0 / 6.0) < 1e-10);
  CHECK(std::abs(g.eigenvalues.front() - 1.0) < 1e-10);
}

TEST_CASE("evolve stays on the probability simplex") {
  const ClassicalMap p2 = build_M(fixtures::path(2), 0.3);
  const std::vector<double> start{1.0, 0.0};
  const auto one = evolve(p2, start, 1);
  CHECK(std::abs(one[0]) < 1e-15);
  CHECK(std::abs(one[1] - 1.0) < 1e-15);

  Rng rng(1202);
  for (const auto& f : fixtures::standard_set()) {
    CAPTURE(f.name);
    const ClassicalMap m = build_M(f.graph, rng.uniform(0.0, 6.0), f.kind);
    const std::size_t n = m.matrix.rows();
    const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    for (double x : evolve(m, uniform, 5)) CHECK(std::abs(x - 1.0 / static_cast<double>(n)) < 1e-14);
    std::vector<double> rho = random_distribution(rng, n);
    for (int step = 0; step < 20; ++step) {
      rho = evolve(m, rho, 1);
      for (double x : rho) CHECK(x >= 0.0);
      CHECK(std::abs(std::accumulate(rho.begin(), rho.end(), 0.0) - 1.0) < 1e-12);
    }
  }

  const std::vector<double> negative{1.5, -0.5};
  CHECK_THROWS_AS(evolve(p2, negative, 1), ValidationError);
  const std::vector<double> short_sum{0.4, 0.4};
  CHECK_THROWS_AS(evolve(p2, short_sum, 1), ValidationError);
  const std::vector<double> wrong_size{1.0};
  CHECK_THROWS_AS(evolve(p2, wrong_size, 1), ValidationError);
}

TEST_CASE("C3 relaxation is bounded by the second modulus") {
  Rng rng(1303);
  const ClassicalMap m = build_M(fixtures::cycle(3), 1.3);
  const MixingGap g = mixing_gap(m);
  REQUIRE(g.mixing);
  const std::vector<double> rho0 = random_distribution(rng, 6);
  const auto rho = evolve(m, rho0, 50);
  double dev = 0.0;
  for (double x : rho) dev = std::max(dev, std::abs(x - 1.0 / 6.0));
  // Scale by the initial deviation and a conditioning allowance for the non-normal map.
  double dev0 = 0.0;
  for (double x : rho0) dev0 = std::max(dev0, std::abs(x - 1.0 / 6.0));
  CHECK(dev < 10.0 * dev0 * std::pow(g.second_modulus, 50) + 1e-15);
}

TEST_CASE("mixing gap examples") {
  const MixingGap p2 = mixing_gap(build_M(fixtures::path(2), 0.5));
  CHECK(std::abs(p2.second_modulus - 1.0) < 1e-12);
  CHECK_FALSE(p2.mixing);

  const MixingGap k4 = mixing_gap(build_M_sharp(fixtures::complete(4)));
  CHECK(std::abs(k4.second_modulus - 1.0 / std::sqrt(2.0)) < 1e-8);
  CHECK(k4.mixing);
  CHECK(std::abs(k4.gap - (1.0 - 1.0 / std::sqrt(2.0))) < 1e-8);
  for (double x : k4.equilibrium) CHECK(std::abs(x - 1.0 / 12.0) < 1e-10);

  CHECK_THROWS_AS(mixing_gap(build_M_sharp(fixtures::complete(4), false)), ValidationError);
}

TEST_CASE("M sharp structure") {
  const Graph k4 = fixtures::complete(4);
  const DirectedBondSpace b(k4);
  const ClassicalMap raw = build_M_sharp(k4, false);
  const ClassicalMap m = build_M_sharp(k4);
  CHECK(m.lambda == Complex{3.0, 1.0});
  for (BondId d = 0; d < b.size(); ++d) {
    CHECK(raw.matrix(DirectedBondSpace::reversal(d), d) == Complex{0.0, 0.0});
    int halves = 0;
    for (BondId r = 0; r < b.size(); ++r) {
      const double x = m.matrix(r, d).real();
      if (std::abs(x - 0.5) < 1e-12) ++halves;
      else CHECK(std::abs(x) < 1e-12);
    }
    CHECK(halves == 2);
  }
  CHECK(bistochastic_defect(m.matrix) < 1e-12);

  const ClassicalMap pet = build_M_sharp(fixtures::petersen());
  CHECK(pet.matrix.rows() == 30);
  CHECK(bistochastic_defect(pet.matrix) < 1e-12);

  CHECK_THROWS_AS(build_M_sharp(fixtures::cycle(6)), ValidationError);
  CHECK_THROWS_AS(build_M_sharp(fixtures::path(3)), ValidationError);
}

TEST_CASE("M sharp spectrum from the Laplacian") {
  const auto k4 = m_sharp_spectrum_via_laplacian(fixtures::complete(4));
  REQUIRE(k4.size() == 12);
  const Complex c{-0.25, std::sqrt(7.0) / 4.0};
  const std::vector<Complex> expected{1.0, 0.5, 0.5, 0.5, -0.5, -0.5, c, c, c, std::conj(c), std::conj(c), std::conj(c)};
  CHECK(multiset_distance(k4, expected) < 1e-12);

  for (const Graph& g : {fixtures::complete(4), fixtures::petersen(), fixtures::complete_bipartite(3, 3)}) {
    const auto formula = m_sharp_spectrum_via_laplacian(g);
    const auto direct = mixing_gap(build_M_sharp(g)).eigenvalues;
    CHECK(multiset_distance(formula, direct) < 1e-8);
    CHECK(multiset_distance(formula, eigen_eigenvalues(build_M_sharp(g).matrix)) < 1e-8);
    // Zero Laplacian eigenvalue gives the pair {1, 1/(v-1)}.
    const double q = static_cast<double>(*g.regular_degree()) - 1.0;
    CHECK(std::count_if(formula.begin(), formula.end(), [](Complex z) { return std::abs(z - 1.0) < 1e-12; }) >= 1);
    CHECK(std::count_if(formula.begin(), formula.end(), [&](Complex z) { return std::abs(z - 1.0 / q) < 1e-12; }) >= 1);
  }
}

TEST_CASE("non-mixing exactly when a second unimodular m appears") {
  for (const Graph& g : {fixtures::complete(4), fixtures::petersen(), fixtures::complete_bipartite(3, 3)}) {
    const auto formula = m_sharp_spectrum_via_laplacian(g);
    const auto unit = std::count_if(formula.begin(), formula.end(),
                                    [](Complex z) { return std::abs(std::abs(z) - 1.0) < 1e-9; });
    CHECK(mixing_gap(build_M_sharp(g)).mixing == (unit == 1));
  }
  CHECK_FALSE(mixing_gap(build_M_sharp(fixtures::complete_bipartite(3, 3))).mixing);
}

TEST_CASE("classical secular function") {
  const ClassicalMap k4 = build_M_sharp(fixtures::complete(4));
  CHECK(classical_secular_Z_M(k4, 0.0) == Complex{1.0, 0.0});
  CHECK(std::abs(classical_secular_Z_M(k4, 1.0)) < 1e-12);
  Rng rng(1404);
  for (const Graph& g : {fixtures::complete(4), fixtures::petersen()}) {
    const ClassicalMap m = build_M_sharp(g);
    for (int t = 0; t < 20; ++t) {
      const Complex mu = rng.complex(-1.5, 1.5, -1.5, 1.5);
      const Complex direct = oracle::EMatrix(oracle::EMatrix::Identity(m.matrix.rows(), m.matrix.cols()) -
                                             mu * oracle::to_eigen(m.matrix))
                                 .determinant();
      CHECK(relative_error(classical_secular_Z_M(m, mu), direct) < 1e-10);
      CHECK(relative_error(m_sharp_secular_via_laplacian(g, mu), direct) < 1e-8);
    }
  }
}

TEST_CASE("classical traces are orbit sums of squared amplitudes") {
  const Graph c3 = fixtures::cycle(3);
  const DirectedBondSpace b(c3);
  const OrbitCatalog cat = enumerate_orbits(b, 6);
  Rng rng(1505);
  for (int t = 0; t < 5; ++t) {
    const double lam = rng.uniform(-1.0, 5.0);
    const ComplexMatrix u = build_U(c3, b, lam).matrix;
    const ClassicalMap m = build_M(c3, lam);
    for (std::size_t n = 1; n <= 6; ++n) {
      Complex via_u{0.0, 0.0};
      for (std::size_t p = 1; p <= n; ++p) {
        if (n % p) continue;
        const auto [first, last] = cat.range(p);
        for (std::size_t k = first; k < last; ++k)
          via_u += static_cast<double>(p) * std::pow(std::norm(orbit_amplitude(cat[k], u)), static_cast<int>(n / p));
      }
      const Complex direct = trace(matrix_power(m.matrix, static_cast<unsigned>(n)));
      CHECK(std::abs(via_u - direct) < 1e-10);
      CHECK(std::abs(trace_power_via_orbits(cat, m.matrix, n) - direct) < 1e-10);
    }
    // log det(I - mu M) = -sum_n mu^n tr M^n / n; the series through n = 6 at |mu| = 0.1.
    const Complex mu{0.1, 0.0};
    Complex series{0.0, 0.0};
    for (std::size_t n = 1; n <= 6; ++n)
      series -= std::pow(mu, static_cast<int>(n)) * trace_power_via_orbits(cat, m.matrix, n) / static_cast<double>(n);
    CHECK(std::abs(series - std::log(classical_secular_Z_M(m, mu))) < 1e-6);
  }
}

TEST_CASE("classical JSON export") {
  const MixingGap g = mixing_gap(build_M_sharp(fixtures::complete(4)));
  const std::string spectrum = spectrum_to_json(g.eigenvalues);
  CHECK(std::count(spectrum.begin(), spectrum.end(), '{') == 12);
  CHECK(spectrum.find("\"modulus\"") != std::string::npos);
  const std::string summary = gap_summary_json(g);
  CHECK(summary.find("\"second_modulus\": 0.7071067811") != std::string::npos);
  CHECK(summary.find("\"mixing\": true") != std::string::npos);
}
