#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "graphzeta/graph.hpp"
#include "graphzeta/matrix.hpp"
#include "graphzeta/random.hpp"

namespace graphzeta {

/// Produces U(lambda). Checks take it as a parameter so a corrupted operator can be injected.
using UBuilder =
    std::function<ComplexMatrix(const Graph&, const DirectedBondSpace&, Complex, LaplacianKind)>;

UBuilder default_U_builder();

/// Multiplies every transmission entry of vertex `vertex` by (1 + delta).
UBuilder corrupted_sigma_builder(VertexId vertex, double delta);

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst measured defect.
  double measured = 0.0;
  double tolerance = 0.0;
  /// Check-specific values, e.g. the measured identity-ratio constant.
  std::vector<std::pair<std::string, double>> extra;
  /// Set when the check does not apply to the graph; such checks count as passed.
  std::string skipped;
};

/// Zeros of Z_S against the Laplacian spectrum, max deviation < 1e-7.
CheckResult check_spectral_equivalence(const Graph& g, LaplacianKind kind);

/// ||U U^dagger - I||_max < 1e-10 at `samples` random real lambda.
CheckResult check_unitarity(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                            const UBuilder& builder);

/// det U against (-1)^V prod_j e^{i alpha_j}, relative error < 1e-9 at random complex lambda.
CheckResult check_det_U(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                        const UBuilder& builder);

/// det(I - U) prod_j (v_j - i(v_j - lambda)) / det(lambda I - L): relative standard deviation
/// < 1e-8. Reports the constant (2^B i^V) and the relative spread of the form with
/// prod_j (v_j + i(v_j - lambda)).
CheckResult check_identity_ratio(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                                 const UBuilder& builder);

/// Same samples, the form with prod_j (v_j + i(v_j - lambda)); passes only if that is constant.
CheckResult check_literal_identity_ratio(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                                         const UBuilder& builder);

/// Orbit sums against tr U^n for n = 2..max_n at random lambda with Im lambda <= 0.
CheckResult check_trace_powers(const Graph& g, LaplacianKind kind, Rng& rng, int samples,
                               std::size_t max_n, const UBuilder& builder);

/// Ihara product against the determinant at random |u| <= 0.1, N = 12.
CheckResult check_ihara(const Graph& g, Rng& rng, int samples);

/// Functional-equation defect < 1e-8 at random z on and off the unit circle (regular graphs).
CheckResult check_functional_equation(const Graph& g, Rng& rng, int samples);

/// Classical secular function of M# against the Laplacian form (regular, v > 2).
CheckResult check_connect(const Graph& g, Rng& rng, int samples);

/// Bi-stochasticity of M(lambda) at random real lambda.
CheckResult check_bistochastic(const Graph& g, LaplacianKind kind, Rng& rng, int samples);

/// ||L psi - lambda psi|| < 1e-7 ||psi|| for every reconstructed eigenvector.
CheckResult check_reconstruction(const Graph& g, LaplacianKind kind);

struct VerifyOptions {
  std::uint64_t seed = 1;
  UBuilder builder = default_U_builder();
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::vector<std::string> failures() const;
};

/// Every identity check that applies to the graph.
VerifyReport verify_graph(const Graph& g, LaplacianKind kind, const VerifyOptions& options = {});

std::string verify_report_json(const VerifyReport& report);

}  // namespace graphzeta
