#include "graphzeta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "graphzeta/classical.hpp"
#include "graphzeta/error.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/orbits.hpp"
#include "graphzeta/scattering.hpp"
#include "graphzeta/zeta.hpp"

namespace graphzeta {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_degree(const Graph& g, LaplacianKind kind) {
  double m = 0.0;
  for (VertexId j = 0; j < g.num_vertices(); ++j) m = std::max(m, g.degree(j, kind));
  return m;
}

/// Random complex lambda kept away from the poles v_j (1 +- i) of the vertex phases.
Complex sample_lambda(const Graph& g, LaplacianKind kind, Rng& rng, double im_lo, double im_hi) {
  const double hi = 2.0 * max_degree(g, kind) + 1.0;
  for (;;) {
    const Complex lam = rng.complex(-1.0, hi, im_lo, im_hi);
    bool clear = true;
    for (VertexId j = 0; j < g.num_vertices() && clear; ++j) {
      const double v = g.degree(j, kind);
      clear = std::abs(lam - Complex{v, v}) > 1e-3 && std::abs(lam - Complex{v, -v}) > 1e-3;
    }
    if (clear) return lam;
  }
}

double relative(Complex a, Complex b) {
  const double s = std::abs(b);
  return s == 0.0 ? std::abs(a - b) : std::abs(a - b) / s;
}

CheckResult start(std::string name, double tolerance) {
  CheckResult r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  return r;
}

CheckResult finish(CheckResult r) {
  r.passed = r.measured < r.tolerance;
  return r;
}

CheckResult skip(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = true;
  r.skipped = std::move(why);
  return r;
}

struct RatioSamples {
  std::vector<Complex> conjugate_form;
  std::vector<Complex> literal_form;
};

RatioSamples ratio_samples(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                           const UBuilder& builder) {
  const DirectedBondSpace bonds(g);
  const LaplacianOperator op = build_laplacian(g, kind);
  RatioSamples out;
  for (int t = 0; t < samples; ++t) {
    const double sign = t % 2 ? 1.0 : -1.0;
    const Complex lam = sample_lambda(g, kind, rng, 0.1 * sign, 2.0 * sign);
    const ComplexMatrix u = builder(g, bonds, lam, kind);
    const Complex d = determinant(ComplexMatrix::identity(u.rows()) - u);
    Complex conj_prod{1.0, 0.0};
    Complex lit_prod{1.0, 0.0};
    for (VertexId j = 0; j < g.num_vertices(); ++j) {
      const double v = g.degree(j, kind);
      conj_prod *= v - kI * (v - lam);
      lit_prod *= v + kI * (v - lam);
    }
    const Complex p = char_poly_value(op, lam);
    out.conjugate_form.push_back(d * conj_prod / p);
    out.literal_form.push_back(d * lit_prod / p);
  }
  return out;
}

/// Standard deviation over |mean|, and the mean.
std::pair<double, Complex> relative_spread(const std::vector<Complex>& xs) {
  Complex mean{0.0, 0.0};
  for (const Complex& x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (const Complex& x : xs) var += std::norm(x - mean);
  const double sd = std::sqrt(var / static_cast<double>(xs.size()));
  return {std::abs(mean) == 0.0 ? INFINITY : sd / std::abs(mean), mean};
}

}  // namespace

UBuilder default_U_builder() {
  return [](const Graph& g, const DirectedBondSpace& bonds, Complex lam, LaplacianKind kind) {
    return build_U(g, bonds, lam, kind).matrix;
  };
}

UBuilder corrupted_sigma_builder(VertexId vertex, double delta) {
  return [vertex, delta](const Graph& g, const DirectedBondSpace& bonds, Complex lam,
                         LaplacianKind kind) {
    ComplexMatrix u = build_U(g, bonds, lam, kind).matrix;
    if (vertex >= g.num_vertices()) return u;
    for (BondId in : bonds.incoming(vertex))
      for (BondId out : bonds.outgoing(vertex))
        if (out != DirectedBondSpace::reversal(in)) u(out, in) *= 1.0 + delta;
    return u;
  };
}

CheckResult check_spectral_equivalence(const Graph& g, LaplacianKind kind) {
  CheckResult r = start("spectral_equivalence", 1e-7);
  const std::vector<double> spectrum = laplacian_spectrum(build_laplacian(g, kind)).real_values();
  std::vector<double> zeros;
  for (const SecularZero& z : secular_zeros(g, kind))
    for (std::size_t m = 0; m < z.multiplicity; ++m) zeros.push_back(z.lambda);
  if (zeros.size() != spectrum.size()) {
    r.measured = INFINITY;
  } else {
    for (std::size_t k = 0; k < zeros.size(); ++k)
      r.measured = std::max(r.measured, std::abs(zeros[k] - spectrum[k]));
  }
  r.extra.emplace_back("zeros_found", static_cast<double>(zeros.size()));
  return finish(std::move(r));
}

CheckResult check_unitarity(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                            const UBuilder& builder) {
  CheckResult r = start("unitarity", 1e-10);
  const DirectedBondSpace bonds(g);
  const double hi = 2.0 * max_degree(g, kind) + 2.0;
  for (int t = 0; t < samples; ++t) {
    const ComplexMatrix u = builder(g, bonds, rng.uniform(-2.0, hi), kind);
    r.measured = std::max(r.measured, unitarity_defect(u));
  }
  return finish(std::move(r));
}

CheckResult check_det_U(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                        const UBuilder& builder) {
  CheckResult r = start("det_U_closed_form", 1e-9);
  const DirectedBondSpace bonds(g);
  for (int t = 0; t < samples; ++t) {
    const Complex lam = sample_lambda(g, kind, rng, -2.0, 2.0);
    r.measured = std::max(r.measured, relative(determinant(builder(g, bonds, lam, kind)),
                                               det_U_closed(g, lam, kind)));
  }
  return finish(std::move(r));
}

CheckResult check_identity_ratio(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                                 const UBuilder& builder) {
  CheckResult r = start("identity_ratio", 1e-8);
  const RatioSamples s = ratio_samples(g, kind, rng, samples, builder);
  const auto [spread, mean] = relative_spread(s.conjugate_form);
  r.measured = spread;
  const double expected_abs = std::pow(2.0, static_cast<double>(g.num_edges()));
  const Complex expected = expected_abs * std::pow(kI, static_cast<int>(g.num_vertices() % 4));
  r.extra = {{"constant_re", mean.real()},
             {"constant_im", mean.imag()},
             {"deviation_from_2^B_i^V", std::abs(mean - expected) / expected_abs},
             {"literal_form_relative_spread", relative_spread(s.literal_form).first}};
  return finish(std::move(r));
}

CheckResult check_literal_identity_ratio(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                                         const UBuilder& builder) {
  CheckResult r = start("identity_ratio_literal", 1e-8);
  const RatioSamples s = ratio_samples(g, kind, rng, samples, builder);
  const auto [spread, mean] = relative_spread(s.literal_form);
  r.measured = spread;
  const auto [cspread, cmean] = relative_spread(s.conjugate_form);
  r.extra = {{"mean_re", mean.real()},
             {"mean_im", mean.imag()},
             {"conjugate_form_constant_re", cmean.real()},
             {"conjugate_form_constant_im", cmean.imag()},
             {"conjugate_form_relative_spread", cspread}};
  return finish(std::move(r));
}

CheckResult check_trace_powers(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                               std::size_t max_n, const UBuilder& builder) {
  CheckResult r = start("trace_powers", 1e-8);
  const DirectedBondSpace bonds(g);
  const OrbitCatalog catalog = enumerate_orbits(bonds, max_n);
  for (int t = 0; t < samples; ++t) {
    const ComplexMatrix u = builder(g, bonds, sample_lambda(g, kind, rng, -1.0, 0.0), kind);
    ComplexMatrix power = u;
    for (std::size_t n = 2; n <= max_n; ++n) {
      power = power * u;
      r.measured = std::max(r.measured, relative(trace_power_via_orbits(catalog, u, n), trace(power)));
    }
  }
  return finish(std::move(r));
}

CheckResult check_ihara(const Graph& g, Rng& rng, int samples) {
  CheckResult r = start("ihara_product", 1e-6);
  const OrbitCatalog catalog = enumerate_orbits(
      DirectedBondSpace(g), 12, {.max_orbits = 10'000'000, .non_backtracking_only = true});
  for (int t = 0; t < samples; ++t) {
    const Complex u = std::polar(rng.uniform(0.0, 0.1), rng.uniform(-std::numbers::pi, std::numbers::pi));
    r.measured = std::max(r.measured, ihara_zeta_product(catalog, g, u, 12).relative_error);
  }
  return finish(std::move(r));
}

CheckResult check_functional_equation(const Graph& g, Rng& rng, int samples) {
  if (!g.regular_degree()) return skip("functional_equation", "graph is not regular");
  CheckResult r = start("functional_equation", 1e-8);
  int used = 0;
  while (used < samples) {
    const double modulus = used % 2 ? 1.0 : rng.uniform(0.5, 2.0);
    const Complex z = std::polar(modulus, rng.uniform(-3.0, 3.0));
    const FunctionalEquationCheck c = functional_equation_check(g, z);
    if (c.near_branch_cut) continue;
    r.measured = std::max(r.measured, c.defect);
    ++used;
  }
  return finish(std::move(r));
}

CheckResult check_connect(const Graph& g, Rng& rng, int samples) {
  const auto v = g.regular_degree();
  if (!v || *v <= 2) return skip("classical_connect", "needs a regular graph with v > 2");
  CheckResult r = start("classical_connect", 1e-8);
  const ClassicalMap m = build_M_sharp(g);
  for (int t = 0; t < samples; ++t) {
    const Complex mu = rng.complex(-1.5, 1.5, -1.5, 1.5);
    r.measured = std::max(r.measured, relative(classical_secular_Z_M(m, mu), m_sharp_secular_via_laplacian(g, mu)));
  }
  return finish(std::move(r));
}

CheckResult check_bistochastic(const Graph& g, LaplacianKind kind, Rng& rng, int samples) {
  CheckResult r = start("bistochastic", 1e-10);
  const double hi = 2.0 * max_degree(g, kind) + 2.0;
  for (int t = 0; t < samples; ++t) {
    r.measured = std::max(r.measured, bistochastic_defect(build_M(g, rng.uniform(-2.0, hi), kind).matrix));
  }
  return finish(std::move(r));
}

CheckResult check_reconstruction(const Graph& g, LaplacianKind kind) {
  CheckResult r = start("eigenvector_reconstruction", 1e-7);
  const LaplacianOperator op = build_laplacian(g, kind);
  const SpectralResult spectrum = laplacian_spectrum(op);
  for (double lam : spectrum.real_values()) {
    const ReconstructedModes modes = reconstruct_eigenvector(g, lam, kind);
    for (const auto& psi : modes.psi) {
      r.measured = std::max(r.measured, eigen_residual(op, psi, lam) / norm2(psi));
    }
  }
  return finish(std::move(r));
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const CheckResult& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

VerifyReport verify_graph(const Graph& g, LaplacianKind kind, const VerifyOptions& options) {
  if (!g.connected()) {
    throw ValidationError(ValidationError::Kind::Disconnected, "verify needs a connected graph");
  }
  Rng rng(options.seed);
  const UBuilder& b = options.builder;
  VerifyReport report;
  report.checks.push_back(check_spectral_equivalence(g, kind));
  report.checks.push_back(check_unitarity(g, kind, rng, 100, b));
  report.checks.push_back(check_det_U(g, kind, rng, 30, b));
  report.checks.push_back(check_identity_ratio(g, kind, rng, 30, b));
  report.checks.push_back(check_trace_powers(g, kind, rng, 5, 8, b));
  report.checks.push_back(check_ihara(g, rng, 5));
  report.checks.push_back(check_functional_equation(g, rng, 20));
  report.checks.push_back(check_connect(g, rng, 20));
  report.checks.push_back(check_bistochastic(g, kind, rng, 50));
  report.checks.push_back(check_reconstruction(g, kind));
  return report;
}

std::string verify_report_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : report.checks) {
    nlohmann::json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    if (!c.skipped.empty()) {
      j["skipped"] = c.skipped;
    } else {
      j["measured"] = c.measured;
      j["tolerance"] = c.tolerance;
    }
    for (const auto& [k, v] : c.extra) j[k] = v;
    checks.push_back(std::move(j));
  }
  nlohmann::json out;
  out["passed"] = report.all_passed();
  out["failures"] = report.failures();
  out["checks"] = std::move(checks);
  return out.dump(2);
}

}  // namespace graphzeta
