#include <doctest.h>

#include "graphzeta/error.hpp"
#include "graphzeta/fixtures.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/random.hpp"
#include "oracle.hpp"

using namespace graphzeta;

TEST_CASE("build_laplacian examples") {
  const LaplacianOperator p2 = build_laplacian(fixtures::path(2));
  CHECK(p2.matrix == ComplexMatrix{{1.0, -1.0}, {-1.0, 1.0}});

  const Graph w5 = build_graph({2, {{0, 1, 5.0}}});
  CHECK(build_laplacian(w5, LaplacianKind::Generalized).matrix ==
        ComplexMatrix{{5.0, -5.0}, {-5.0, 5.0}});

  const LaplacianOperator k4 = build_laplacian(fixtures::complete(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(k4.matrix(i, j) == Complex{i == j ? 3.0 : -1.0});

  CHECK_THROWS_AS(build_laplacian(fixtures::path(2), LaplacianKind::Generalized), ValidationError);
}

TEST_CASE("laplacian_spectrum examples") {
  const SpectralResult p2 = laplacian_spectrum(build_laplacian(fixtures::path(2)));
  CHECK(std::abs(p2.eigenvalues[0]) < 1e-10);
  CHECK(std::abs(p2.eigenvalues[1] - 2.0) < 1e-12);

  const SpectralResult k4 = laplacian_spectrum(build_laplacian(fixtures::complete(4)));
  CHECK(std::abs(k4.eigenvalues[0]) < 1e-10);
  for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(k4.eigenvalues[k] - 4.0) < 1e-12);

  for (double w : {0.25, 5.0, 17.0}) {
    const Graph g = build_graph({2, {{0, 1, w}}});
    const SpectralResult s = laplacian_spectrum(build_laplacian(g, LaplacianKind::Generalized));
    CHECK(std::abs(s.eigenvalues[1] - 2.0 * w) < 1e-12 * w);
  }
}

TEST_CASE("char_poly_value examples") {
  const LaplacianOperator p2 = build_laplacian(fixtures::path(2));
  CHECK(std::abs(char_poly_value(p2, 1.0) + 1.0) < 1e-14);
  const LaplacianOperator k4 = build_laplacian(fixtures::complete(4));
  CHECK(std::abs(char_poly_value(k4, 2.0) + 16.0) < 1e-12);
  for (double lam : {0.0, 4.0}) CHECK(std::abs(char_poly_value(k4, lam)) < 1e-8);
}

TEST_CASE("operator invariants on every fixture") {
  Rng rng(3);
  for (const auto& f : fixtures::standard_set()) {
    CAPTURE(f.name);
    const LaplacianOperator op = build_laplacian(f.graph, f.kind);
    const std::size_t n = op.matrix.rows();
    for (std::size_t i = 0; i < n; ++i) {
      Complex row{};
      for (std::size_t j = 0; j < n; ++j) {
        row += op.matrix(i, j);
        CHECK(op.matrix(i, j) == op.matrix(j, i));
      }
      CHECK(std::abs(row) < 1e-12);
      CHECK(op.matrix(i, i).real() == f.graph.degree(i, f.kind));
    }

    const SpectralResult s = laplacian_spectrum(op);
    CHECK(s.eigenvalues.front().real() > -1e-10);
    CHECK(zero_multiplicity(op, s) == 1);

    // Independent oracle: Eigen's spectrum, product formula.
    Eigen::SelfAdjointEigenSolver<oracle::EMatrix> es(oracle::to_eigen(op.matrix));
    for (int trial = 0; trial < 10; ++trial) {
      const Complex lam = rng.complex(-3, 12, -2, 2);
      Complex prod = 1.0;
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) prod *= lam - es.eigenvalues()(k);
      CHECK(oracle::relative_error(char_poly_value(op, lam), prod) < 1e-8);
    }
  }
}

TEST_CASE("zero eigenvalue is simple exactly when connected") {
  const Graph two = build_graph({5, {{0, 1, std::nullopt}, {1, 2, std::nullopt}, {3, 4, std::nullopt}}});
  const LaplacianOperator op = build_laplacian(two);
  CHECK(zero_multiplicity(op, laplacian_spectrum(op)) == 2);
  const LaplacianOperator c6 = build_laplacian(fixtures::cycle(6));
  CHECK(zero_multiplicity(c6, laplacian_spectrum(c6)) == 1);
}

TEST_CASE("generalized operator with unit weights equals the standard one") {
  GraphSpec spec{4, {}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) spec.edges.push_back({i, j, 1.0});
  const Graph g = build_graph(spec);
  CHECK(build_laplacian(g, LaplacianKind::Generalized).matrix ==
        build_laplacian(g, LaplacianKind::Standard).matrix);
}
