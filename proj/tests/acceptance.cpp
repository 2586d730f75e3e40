#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "graphzeta/classical.hpp"
#include "graphzeta/fixtures.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/orbits.hpp"
#include "graphzeta/random.hpp"
#include "graphzeta/scattering.hpp"
#include "graphzeta/trace.hpp"
#include "graphzeta/verify.hpp"
#include "graphzeta/zeta.hpp"

using namespace graphzeta;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& note) {
    passed = passed && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + note);
  }
  void info(const std::string& note) { notes.push_back("     " + note); }
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string cnum(Complex z) { return "(" + num(z.real()) + ", " + num(z.imag()) + ")"; }

Rng rng_for(int criterion) { return Rng(20240611ULL + static_cast<std::uint64_t>(criterion)); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

void check_line(Outcome& out, const std::string& graph, const CheckResult& c) {
  out.require(c.passed, graph + " " + c.name + ": " + num(c.measured) + " < " + num(c.tolerance));
}

Outcome spectral_equivalence() {
  Outcome out;
  for (const auto& f : fixtures::standard_set()) check_line(out, f.name, check_spectral_equivalence(f.graph, f.kind));
  return out;
}

Outcome unitarity_and_det() {
  Outcome out;
  Rng rng = rng_for(2);
  const UBuilder b = default_U_builder();
  for (const auto& f : fixtures::standard_set()) {
    check_line(out, f.name, check_unitarity(f.graph, f.kind, rng, 100, b));
    // The closed form as printed: det U = prod_j (1 + i(1 - lambda/v_j)) / (1 - i(1 - lambda/v_j)).
    const DirectedBondSpace bonds(f.graph);
    double printed = 0.0;
    double signed_form = 0.0;
    const double sign = f.graph.num_vertices() % 2 ? -1.0 : 1.0;
    for (int t = 0; t < 30; ++t) {
      const Complex lam = rng.complex(-1.0, 8.0, -2.0, 2.0);
      Complex closed{1.0, 0.0};
      for (VertexId j = 0; j < f.graph.num_vertices(); ++j) closed *= vertex_phase(f.graph.degree(j, f.kind), lam);
      const Complex det = determinant(build_U(f.graph, bonds, lam, f.kind).matrix);
      printed = std::max(printed, rel(det, closed));
      signed_form = std::max(signed_form, rel(det, sign * closed));
    }
    out.require(printed < 1e-9, f.name + " det U vs printed closed form: " + num(printed) + " < 1e-09");
    if (!(printed < 1e-9)) out.info(f.name + " with the factor (-1)^V: " + num(signed_form));
  }
  return out;
}

Outcome identity_ratio() {
  Outcome out;
  Rng rng = rng_for(3);
  for (const auto& f : fixtures::standard_set()) {
    const CheckResult c = check_literal_identity_ratio(f.graph, f.kind, rng, 30, default_U_builder());
    check_line(out, f.name, c);
    const auto get = [&](const std::string& key) {
      for (const auto& [k, v] : c.extra)
        if (k == key) return v;
      return std::nan("");
    };
    out.info(f.name + " ratio with prod (v - i(v - lambda)) is constant " +
             cnum({get("conjugate_form_constant_re"), get("conjugate_form_constant_im")}) +
             " = 2^" + std::to_string(f.graph.num_edges()) + " i^" + std::to_string(f.graph.num_vertices()) +
             ", spread " + num(get("conjugate_form_relative_spread")));
  }
  return out;
}

Outcome trace_powers() {
  Outcome out;
  Rng rng = rng_for(4);
  for (const auto& f : fixtures::standard_set())
    check_line(out, f.name, check_trace_powers(f.graph, f.kind, rng, 20, 8, default_U_builder()));
  return out;
}

Outcome zeta_product() {
  Outcome out;
  Rng rng = rng_for(5);
  for (const auto& f : fixtures::standard_set()) {
    if (f.graph.num_edges() > 6) continue;
    const OrbitCatalog catalog = enumerate_orbits(DirectedBondSpace(f.graph), 16);
    double worst = 0.0;
    double gap = 0.0;
    for (int t = 0; t < 3; ++t) {
      const Complex lam{rng.uniform(0.0, 2.0 * static_cast<double>(f.graph.num_edges())), -1.0};
      const ZetaEvaluation ev = zeta_S_product(catalog, f.graph, lam, 16, f.kind);
      worst = std::max(worst, ev.relative_error);
      gap = std::max(gap, ev.convergence_gap);
    }
    out.require(worst < 1e-5, f.name + " product vs det(I - U) at N=16: " + num(worst) + " < 1e-05");
    if (!(worst < 1e-5)) out.info(f.name + " convergence gap at N=16: " + num(gap) + "; U keeps eigenvalues +-i");
  }
  return out;
}

Outcome ihara() {
  Outcome out;
  Rng rng = rng_for(6);
  for (const auto& f : fixtures::standard_set()) check_line(out, f.name, check_ihara(f.graph, rng, 10));

  const Graph k4 = fixtures::complete(4);
  const DirectedBondSpace bonds(k4);
  const OrbitCatalog catalog = enumerate_orbits(bonds, 3, {.max_orbits = 1000, .non_backtracking_only = true});
  const double series = ihara_log_series(k4, 3).primitive[3];
  ComplexMatrix ones(bonds.size(), bonds.size());
  for (std::size_t r = 0; r < bonds.size(); ++r)
    for (std::size_t c = 0; c < bonds.size(); ++c) ones(r, c) = 1.0;
  const ComplexMatrix y = stark_Y(bonds, ones);
  // tr Y^3 = 3 |C(3)| + |C(1)|, and C(1) is empty.
  const double stark = (trace(matrix_power(y, 3)).real() - trace(y).real()) / 3.0;
  out.require(catalog.count_non_backtracking(3) == 8, "K4 |C(3)| by enumeration: " + std::to_string(catalog.count_non_backtracking(3)));
  out.require(std::abs(series - 8.0) < 1e-6, "K4 |C(3)| by determinant log-series: " + num(series));
  out.require(std::abs(stark - 8.0) < 1e-9, "K4 |C(3)| by Stark reduction: " + num(stark));
  return out;
}

Outcome stark() {
  Outcome out;
  Rng rng = rng_for(7);
  for (const auto& [name, g] : {std::pair{"C3", fixtures::cycle(3)}, std::pair{"K4", fixtures::complete(4)}}) {
    const DirectedBondSpace bonds(g);
    const OrbitCatalog catalog =
        enumerate_orbits(bonds, 15, {.max_orbits = 10'000'000, .non_backtracking_only = true});
    double worst = 0.0;
    double radius = 0.0;
    for (int t = 0; t < 10;) {
      ComplexMatrix eta(bonds.size(), bonds.size());
      for (std::size_t r = 0; r < bonds.size(); ++r)
        for (std::size_t c = 0; c < bonds.size(); ++c) eta(r, c) = rng.uniform(0.0, 0.2);
      const ZetaEvaluation ev = stark_zeta(bonds, eta, catalog, 15);
      if (!(ev.spectral_radius < 0.8)) continue;
      worst = std::max(worst, ev.relative_error);
      radius = std::max(radius, ev.spectral_radius);
      ++t;
    }
    out.require(worst < 1e-6, std::string(name) + " det(I - Y) vs product, N=15, eta in [0, 0.2): " + num(worst) +
                                  " < 1e-06 (max rho(Y) " + num(radius) + ")");
  }
  return out;
}

Outcome functional_equation() {
  Outcome out;
  Rng rng = rng_for(8);
  for (const auto& [name, g] : {std::pair{"K4", fixtures::complete(4)}, std::pair{"Petersen", fixtures::petersen()}})
    check_line(out, name, check_functional_equation(g, rng, 20));
  return out;
}

Outcome trace_formula() {
  Outcome out;
  for (const auto& [name, g] : {std::pair{"C3", fixtures::cycle(3)}, std::pair{"K4", fixtures::complete(4)}}) {
    const auto spectrum = laplacian_spectrum(build_laplacian(g)).real_values();
    const auto grid = linear_grid(spectrum.front() - 1.0, spectrum.back() + 1.0, 41);
    const OrbitCatalog catalog = enumerate_orbits(DirectedBondSpace(g), 14);
    std::vector<DensityEvaluation> runs;
    for (OrbitCutoffs c : {OrbitCutoffs{6, 2}, OrbitCutoffs{10, 4}, OrbitCutoffs{14, 6}})
      runs.push_back(trace_formula_report(catalog, g, grid, 0.3, c));
    const DensityEvaluation& last = runs.back();
    out.require(last.max_reference_deviation < 1e-8,
                std::string(name) + " density vs (1/pi) Im d/dlambda log Z_S(lambda - i eps): " +
                    num(last.max_reference_deviation) + " < 1e-08");
    double det_form = 0.0;
    const LaplacianOperator op = build_laplacian(g);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double h = kDerivativeStep;
      const Complex up = char_poly_value(op, {grid[k] + h, -0.3});
      const Complex down = char_poly_value(op, {grid[k] - h, -0.3});
      det_form = std::max(det_form, std::abs(std::arg(up / down) / (2.0 * h) / std::numbers::pi - last.exact_density[k]));
    }
    out.info(std::string(name) + " same identity with det(lambda I - L) in place of Z_S: " + num(det_form));
    bool monotone = true;
    std::string trend;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      if (k > 0 && runs[k].max_residual > runs[k - 1].max_residual) monotone = false;
      trend += (k ? " -> " : "") + num(runs[k].max_residual);
    }
    out.require(monotone, std::string(name) + " residual decreases over N=6,10,14 / R=2,4,6: " + trend);
    const double fraction = last.max_residual / last.peak_density;
    out.require(fraction < 0.05, std::string(name) + " residual at N=14, R=6: " + num(100.0 * fraction) +
                                     "% of peak " + num(last.peak_density) + " < 5%");
  }
  return out;
}

Outcome classical() {
  Outcome out;
  Rng rng = rng_for(10);
  for (const auto& f : fixtures::standard_set()) check_line(out, f.name, check_bistochastic(f.graph, f.kind, rng, 50));
  const Graph k4 = fixtures::complete(4);
  const MixingGap gap = mixing_gap(build_M_sharp(k4));
  const double dist = multiset_distance(m_sharp_spectrum_via_laplacian(k4), gap.eigenvalues);
  out.require(dist < 1e-8, "K4 M# spectrum vs Laplacian formula: " + num(dist) + " < 1e-08");
  const double second = std::abs(gap.second_modulus - 1.0 / std::sqrt(2.0));
  out.require(second < 1e-8, "K4 second modulus - 1/sqrt(2): " + num(second) + " < 1e-08");
  for (const auto& [name, g] : {std::pair{"K4", k4}, std::pair{"Petersen", fixtures::petersen()}}) {
    check_line(out, name, check_connect(g, rng, 20));
    const auto ev = mixing_gap(build_M_sharp(g)).eigenvalues;
    const double q = static_cast<double>(*g.regular_degree()) - 1.0;
    const auto near = [&](Complex target) {
      return std::any_of(ev.begin(), ev.end(), [&](Complex z) { return std::abs(z - target) < 1e-8; });
    };
    out.require(near(1.0) && near(1.0 / q), std::string(name) + " eigenvalues 1 and 1/(v-1) present");
  }
  return out;
}

Outcome reconstruction() {
  Outcome out;
  for (const auto& f : fixtures::standard_set()) check_line(out, f.name, check_reconstruction(f.graph, f.kind));
  return out;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"spectral equivalence of Z_S zeros and the Laplacian spectrum", spectral_equivalence},
      {"unitarity of U and the closed form of det U", unitarity_and_det},
      {"identity ratio det(I-U) prod(v+i(v-lambda)) / det(lambda-L) is constant", identity_ratio},
      {"orbit sums equal tr U^n", trace_powers},
      {"S-zeta orbit product converges to det(I-U)", zeta_product},
      {"Ihara product, determinant and |C(3)| on K4", ihara},
      {"Stark zeta product against det(I-Y)", stark},
      {"functional equation of the regular z-form", functional_equation},
      {"trace formula", trace_formula},
      {"classical dynamics", classical},
      {"eigenvector reconstruction from bond amplitudes", reconstruction},
  };
  return all;
}

bool report(std::size_t k) {
  const Criterion& c = criteria()[k - 1];
  Outcome out;
  try {
    out = c.run();
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  std::printf("criterion %zu: %s  %s\n", k, out.passed ? "PASS" : "FAIL", c.title);
  for (const std::string& note : out.notes) std::printf("    %s\n", note.c_str());
  std::fflush(stdout);
  return out.passed;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::fprintf(stderr, "usage: acceptance [criterion 1-%zu]\n", criteria().size());
    return 2;
  }
  if (argc == 2) {
    char* end = nullptr;
    const long k = std::strtol(argv[1], &end, 10);
    if (*end != '\0' || k < 1 || k > static_cast<long>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
      return 2;
    }
    return report(static_cast<std::size_t>(k)) ? 0 : 1;
  }
  bool all = true;
  for (std::size_t k = 1; k <= criteria().size(); ++k) all = report(k) && all;
  return all ? 0 : 1;
}
