#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphzeta/classical.hpp"
#include "graphzeta/error.hpp"
#include "graphzeta/format.hpp"
#include "graphzeta/graph_io.hpp"
#include "graphzeta/laplacian.hpp"
#include "graphzeta/linalg.hpp"
#include "graphzeta/orbits.hpp"
#include "graphzeta/random.hpp"
#include "graphzeta/scattering.hpp"
#include "graphzeta/trace.hpp"
#include "graphzeta/verify.hpp"
#include "graphzeta/zeta.hpp"

namespace gz = graphzeta;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitResource = 3;

struct RunConfig {
  std::string graph_path;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string out_path;
  std::string kind = "auto";

  std::string lambda;
  std::string u;
  std::string z;
  double epsilon = gz::kDefaultSmoothing;
  std::string grid;
  std::size_t max_len = 0;
  std::size_t max_rep = 4;
  std::size_t max_orbits = 10'000'000;
  double scale = 0.1;
  bool zeros = false;
  bool non_backtracking = false;
  bool list = false;
  bool sharp = false;
  std::string inject_fault;
};

gz::ValidationError bad_option(const std::string& what) {
  return gz::ValidationError(gz::ValidationError::Kind::InvalidArgument, what);
}

double parse_real(const std::string& text, const std::string& option) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(x)) {
    throw bad_option(option + ": cannot read '" + text + "' as a number");
  }
  return x;
}

/// "re" or "re,im".
gz::Complex parse_complex(const std::string& text, const std::string& option) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(text, option), 0.0};
  return {parse_real(text.substr(0, comma), option), parse_real(text.substr(comma + 1), option)};
}

json complex_json(gz::Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

gz::LaplacianKind resolve_kind(const RunConfig& cfg, const gz::Graph& g) {
  if (cfg.kind == "standard") return gz::LaplacianKind::Standard;
  if (cfg.kind == "generalized") return gz::LaplacianKind::Generalized;
  return g.has_weights() ? gz::LaplacianKind::Generalized : gz::LaplacianKind::Standard;
}

const char* kind_name(gz::LaplacianKind kind) {
  return kind == gz::LaplacianKind::Standard ? "standard" : "generalized";
}

gz::Graph load(const RunConfig& cfg) {
  if (cfg.graph_path.empty()) throw bad_option("--graph is required");
  gz::Graph g = gz::load_graph(cfg.graph_path);
  if (!g.connected()) std::cerr << "warning: graph is disconnected\n";
  return g;
}

json graph_summary(const gz::Graph& g, gz::LaplacianKind kind) {
  json j{{"num_vertices", g.num_vertices()},
         {"num_edges", g.num_edges()},
         {"connected", g.connected()},
         {"kind", kind_name(kind)}};
  if (g.connected()) j["rank"] = gz::rank(g);
  return j;
}

std::size_t require_length(const RunConfig& cfg, std::size_t fallback) {
  return cfg.max_len == 0 ? fallback : cfg.max_len;
}

struct Output {
  std::string text;
  int code = kExitOk;
};

Output dump(const RunConfig& cfg, const json& j, const std::string& csv) {
  if (cfg.format == "csv") return {csv, kExitOk};
  return {j.dump(2) + "\n", kExitOk};
}

Output cmd_spectrum(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::LaplacianKind kind = resolve_kind(cfg, g);
  const std::vector<double> spectrum =
      gz::laplacian_spectrum(gz::build_laplacian(g, kind)).real_values();
  json j{{"graph", graph_summary(g, kind)}, {"eigenvalues", spectrum}};
  std::vector<double> zeros;
  if (cfg.zeros) {
    json list = json::array();
    for (const gz::SecularZero& z : gz::secular_zeros(g, kind)) {
      list.push_back({{"lambda", z.lambda}, {"multiplicity", z.multiplicity}});
      for (std::size_t m = 0; m < z.multiplicity; ++m) zeros.push_back(z.lambda);
    }
    j["zeros"] = list;
    double dev = zeros.size() == spectrum.size() ? 0.0 : INFINITY;
    for (std::size_t k = 0; k < zeros.size() && k < spectrum.size(); ++k)
      dev = std::max(dev, std::abs(zeros[k] - spectrum[k]));
    j["max_deviation"] = dev;
  }
  std::string csv = cfg.zeros ? "index,eigenvalue,zero\n" : "index,eigenvalue\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    csv += std::to_string(k) + ',' + gz::format_double(spectrum[k]);
    if (cfg.zeros) csv += ',' + (k < zeros.size() ? gz::format_double(zeros[k]) : std::string());
    csv += '\n';
  }
  return dump(cfg, j, csv);
}

Output cmd_verify(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::LaplacianKind kind = resolve_kind(cfg, g);
  gz::VerifyOptions options{.seed = cfg.seed};
  if (!cfg.inject_fault.empty()) {
    const gz::Complex f = parse_complex(cfg.inject_fault, "--inject-fault");
    if (f.real() < 0.0 || f.real() != std::floor(f.real())) throw bad_option("--inject-fault: vertex must be a non-negative integer");
    options.builder = gz::corrupted_sigma_builder(static_cast<gz::VertexId>(f.real()), f.imag());
  }
  const gz::VerifyReport report = gz::verify_graph(g, kind, options);
  std::string csv = "check,passed,measured,tolerance\n";
  for (const gz::CheckResult& c : report.checks) {
    csv += c.name + ',' + (c.passed ? "true" : "false") + ',' +
           (c.skipped.empty() ? gz::format_double(c.measured) : std::string("skipped")) + ',' +
           gz::format_double(c.tolerance) + '\n';
  }
  Output out{cfg.format == "csv" ? csv : gz::verify_report_json(report) + "\n", kExitOk};
  if (!report.all_passed()) {
    for (const std::string& name : report.failures()) std::cerr << "check failed: " << name << '\n';
    out.code = kExitCheckFailed;
  }
  return out;
}

Output cmd_orbits(const RunConfig& cfg) {
  if (cfg.max_len == 0) throw bad_option("orbits: --max-len is required");
  const gz::Graph g = load(cfg);
  const gz::DirectedBondSpace bonds(g);
  const gz::OrbitCatalog catalog = gz::enumerate_orbits(
      bonds, cfg.max_len, {.max_orbits = cfg.max_orbits, .non_backtracking_only = cfg.non_backtracking});
  if (cfg.list) return {gz::catalog_to_jsonl(catalog), kExitOk};
  json counts = json::array();
  std::string csv = "n,primitive,non_backtracking\n";
  for (std::size_t n = 1; n <= cfg.max_len; ++n) {
    counts.push_back({{"n", n}, {"primitive", catalog.count(n)}, {"non_backtracking", catalog.count_non_backtracking(n)}});
    csv += std::to_string(n) + ',' + std::to_string(catalog.count(n)) + ',' +
           std::to_string(catalog.count_non_backtracking(n)) + '\n';
  }
  json j{{"graph", graph_summary(g, gz::LaplacianKind::Standard)},
         {"max_length", cfg.max_len},
         {"non_backtracking_only", cfg.non_backtracking},
         {"total", catalog.size()},
         {"counts", counts}};
  return dump(cfg, j, csv);
}

json evaluation_json(const gz::ZetaEvaluation& ev) {
  return {{"product", complex_json(ev.value)},
          {"determinant", complex_json(ev.det_value)},
          {"truncation_length", ev.truncation_length},
          {"relative_error", ev.relative_error},
          {"convergence_gap", ev.convergence_gap},
          {"spectral_radius", ev.spectral_radius},
          {"converges", ev.converges}};
}

std::string evaluation_csv(const gz::ZetaEvaluation& ev) {
  using gz::format_double;
  return "product_re,product_im,det_re,det_im,relative_error,spectral_radius\n" +
         format_double(ev.value.real()) + ',' + format_double(ev.value.imag()) + ',' +
         format_double(ev.det_value.real()) + ',' + format_double(ev.det_value.imag()) + ',' +
         format_double(ev.relative_error) + ',' + format_double(ev.spectral_radius) + '\n';
}

Output cmd_zeta(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::LaplacianKind kind = resolve_kind(cfg, g);
  json j{{"graph", graph_summary(g, kind)}};
  std::string csv;
  if (!cfg.z.empty()) {
    const gz::Complex z = parse_complex(cfg.z, "--z");
    const gz::FunctionalEquationCheck fe = gz::functional_equation_check(g, z);
    j["z"] = complex_json(z);
    j["zeta_S_z"] = complex_json(gz::zeta_S_regular_z(g, z));
    j["functional_equation_defect"] = fe.defect;
    j["near_branch_cut"] = fe.near_branch_cut;
    csv = "defect\n" + gz::format_double(fe.defect) + '\n';
  }
  if (!cfg.lambda.empty()) {
    const gz::Complex lam = parse_complex(cfg.lambda, "--lambda");
    const std::size_t n = require_length(cfg, 8);
    const gz::OrbitCatalog catalog =
        gz::enumerate_orbits(gz::DirectedBondSpace(g), n, {.max_orbits = cfg.max_orbits});
    j["lambda"] = complex_json(lam);
    j["zeta_S_det"] = complex_json(gz::zeta_S_det(g, lam, kind));
    j["secular_Z_S"] = complex_json(gz::secular_Z_S(g, lam, kind));
    const gz::ZetaEvaluation ev = gz::zeta_S_product(catalog, g, lam, n, kind);
    j["orbit_product"] = evaluation_json(ev);
    csv = evaluation_csv(ev);
  }
  if (cfg.lambda.empty() && cfg.z.empty()) throw bad_option("zeta: give --lambda or --z");
  return dump(cfg, j, csv);
}

Output cmd_ihara(const RunConfig& cfg) {
  if (cfg.u.empty()) throw bad_option("ihara: --u is required");
  const gz::Graph g = load(cfg);
  const gz::Complex u = parse_complex(cfg.u, "--u");
  const std::size_t n = require_length(cfg, 12);
  const gz::OrbitCatalog catalog = gz::enumerate_orbits(
      gz::DirectedBondSpace(g), n, {.max_orbits = cfg.max_orbits, .non_backtracking_only = true});
  const gz::ZetaEvaluation ev = gz::ihara_zeta_product(catalog, g, u, n);
  const gz::IharaSeries series = gz::ihara_log_series(g, std::min<std::size_t>(n, 8));
  json counts = json::array();
  for (std::size_t m = 1; m < series.primitive.size(); ++m) {
    counts.push_back({{"n", m},
                      {"enumerated", catalog.count_non_backtracking(m)},
                      {"log_series", series.primitive[m]}});
  }
  json j{{"graph", graph_summary(g, gz::LaplacianKind::Standard)},
         {"u", complex_json(u)},
         {"evaluation", evaluation_json(ev)},
         {"counts", counts}};
  return dump(cfg, j, evaluation_csv(ev));
}

Output cmd_stark(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::DirectedBondSpace bonds(g);
  const std::size_t n = require_length(cfg, 10);
  gz::Rng rng(cfg.seed);
  gz::ComplexMatrix eta(bonds.size(), bonds.size());
  for (std::size_t r = 0; r < bonds.size(); ++r)
    for (std::size_t c = 0; c < bonds.size(); ++c) eta(r, c) = rng.uniform(0.0, cfg.scale);
  const gz::OrbitCatalog catalog = gz::enumerate_orbits(
      bonds, n, {.max_orbits = cfg.max_orbits, .non_backtracking_only = true});
  const gz::ZetaEvaluation ev = gz::stark_zeta(bonds, eta, catalog, n);
  json j{{"graph", graph_summary(g, gz::LaplacianKind::Standard)},
         {"eta_scale", cfg.scale},
         {"seed", cfg.seed},
         {"evaluation", evaluation_json(ev)}};
  return dump(cfg, j, evaluation_csv(ev));
}

Output cmd_trace(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::LaplacianKind kind = resolve_kind(cfg, g);
  std::vector<double> grid;
  if (cfg.grid.empty()) {
    const auto s = gz::laplacian_spectrum(gz::build_laplacian(g, kind)).real_values();
    grid = gz::linear_grid(s.front() - 1.0, s.back() + 1.0, 121);
  } else {
    const auto a = cfg.grid.find(':');
    const auto b = a == std::string::npos ? a : cfg.grid.find(':', a + 1);
    if (b == std::string::npos) throw bad_option("--grid: expected min:max:steps");
    const double steps = parse_real(cfg.grid.substr(b + 1), "--grid");
    if (steps < 1 || steps != std::floor(steps)) throw bad_option("--grid: steps must be a positive integer");
    grid = gz::linear_grid(parse_real(cfg.grid.substr(0, a), "--grid"),
                           parse_real(cfg.grid.substr(a + 1, b - a - 1), "--grid"),
                           static_cast<std::size_t>(steps));
  }
  const gz::OrbitCutoffs cutoffs{require_length(cfg, 10), cfg.max_rep};
  const gz::OrbitCatalog catalog =
      gz::enumerate_orbits(gz::DirectedBondSpace(g), cutoffs.max_length, {.max_orbits = cfg.max_orbits});
  const gz::DensityEvaluation rep = gz::trace_formula_report(catalog, g, grid, cfg.epsilon, cutoffs, kind);
  if (cfg.format == "csv") return {gz::density_to_csv(rep), kExitOk};
  return {gz::density_summary_json(rep) + "\n", kExitOk};
}

Output cmd_classical(const RunConfig& cfg) {
  const gz::Graph g = load(cfg);
  const gz::LaplacianKind kind = resolve_kind(cfg, g);
  json j{{"graph", graph_summary(g, kind)}};
  gz::ClassicalMap map;
  if (cfg.sharp) {
    map = gz::build_M_sharp(g);
  } else {
    if (cfg.lambda.empty()) throw bad_option("classical: give --lambda or --sharp");
    map = gz::build_M(g, parse_complex(cfg.lambda, "--lambda"), kind);
    j["bistochastic_defect"] = gz::bistochastic_defect(map.matrix);
  }
  const gz::MixingGap gap = gz::mixing_gap(map);
  j["map"] = cfg.sharp ? "M_sharp/(v-1)" : "M";
  j["lambda"] = complex_json(map.lambda);
  j["gap"] = json::parse(gz::gap_summary_json(gap));
  j["spectrum"] = json::parse(gz::spectrum_to_json(gap.eigenvalues));
  if (cfg.sharp) {
    j["laplacian_formula_distance"] =
        gz::multiset_distance(gz::m_sharp_spectrum_via_laplacian(g), gap.eigenvalues);
  }
  std::string csv = "re,im,modulus\n";
  for (const gz::Complex& z : gap.eigenvalues) {
    csv += gz::format_double(z.real()) + ',' + gz::format_double(z.imag()) + ',' +
           gz::format_double(std::abs(z)) + '\n';
  }
  return dump(cfg, j, csv);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw bad_option("cannot write " + cfg.out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum graph spectra, periodic orbits and zeta functions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--graph", cfg.graph_path, "Graph file (JSON or edge list)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized sweeps");
  app.add_option("--out", cfg.out_path, "Output file (default stdout)");
  app.add_option("--kind", cfg.kind, "Laplacian: standard, generalized, or auto (generalized when weighted)")
      ->check(CLI::IsMember({"auto", "standard", "generalized"}));

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian eigenvalues, optionally with Z_S zeros");
  spectrum->add_flag("--zeros", cfg.zeros, "Also scan the secular function for zeros");

  auto* verify = app.add_subcommand("verify", "Run the identity suite; exit 2 on any failure");
  verify->add_option("--inject-fault", cfg.inject_fault, "vertex,delta")->group("");

  auto* orbits = app.add_subcommand("orbits", "Primitive periodic orbit counts or catalog");
  orbits->add_option("--max-len", cfg.max_len, "Longest period");
  orbits->add_flag("--non-backtracking", cfg.non_backtracking, "Only orbits without back-scattering");
  orbits->add_flag("--list", cfg.list, "Emit the catalog as JSON lines");
  orbits->add_option("--max-orbits", cfg.max_orbits, "Catalog size cap");

  auto* zeta = app.add_subcommand("zeta", "S-zeta function: determinant, product and z-form");
  zeta->add_option("--lambda", cfg.lambda, "re[,im]");
  zeta->add_option("--z", cfg.z, "re[,im] for the regular-graph z-form");
  zeta->add_option("--max-len", cfg.max_len, "Orbit cutoff N (default 8)");
  zeta->add_option("--max-orbits", cfg.max_orbits, "Catalog size cap");

  auto* ihara = app.add_subcommand("ihara", "Ihara zeta: product against determinant");
  ihara->add_option("--u", cfg.u, "re[,im]");
  ihara->add_option("--max-len", cfg.max_len, "Orbit cutoff N (default 12)");
  ihara->add_option("--max-orbits", cfg.max_orbits, "Catalog size cap");

  auto* stark = app.add_subcommand("stark", "Stark edge zeta with random eta from the seed");
  stark->add_option("--scale", cfg.scale, "eta entries uniform in [0, scale)");
  stark->add_option("--max-len", cfg.max_len, "Orbit cutoff N (default 10)");
  stark->add_option("--max-orbits", cfg.max_orbits, "Catalog size cap");

  auto* trace = app.add_subcommand("trace", "Smoothed density, Weyl and orbit terms");
  trace->add_option("--epsilon", cfg.epsilon, "Smoothing width (>= 1e-3)");
  trace->add_option("--grid", cfg.grid, "min:max:steps");
  trace->add_option("--max-len", cfg.max_len, "Orbit cutoff N (default 10)");
  trace->add_option("--max-rep", cfg.max_rep, "Repetition cutoff R");
  trace->add_option("--max-orbits", cfg.max_orbits, "Catalog size cap");

  auto* classical = app.add_subcommand("classical", "Classical map |U|^2 and its mixing gap");
  classical->add_option("--lambda", cfg.lambda, "Real spectral parameter");
  classical->add_flag("--sharp", cfg.sharp, "Use the non-backtracking map M#/(v-1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    Output out;
    if (*spectrum) out = cmd_spectrum(cfg);
    else if (*verify) out = cmd_verify(cfg);
    else if (*orbits) out = cmd_orbits(cfg);
    else if (*zeta) out = cmd_zeta(cfg);
    else if (*ihara) out = cmd_ihara(cfg);
    else if (*stark) out = cmd_stark(cfg);
    else if (*trace) out = cmd_trace(cfg);
    else if (*classical) out = cmd_classical(cfg);
    emit(cfg, out.text);
    return out.code;
  } catch (const gz::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const gz::ResourceError& e) {
    std::cerr << "error: " << e.what() << " (complete through length " << e.length_reached() << ")\n";
    return kExitResource;
  } catch (const gz::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
}
