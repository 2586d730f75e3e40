#include "graphzeta/orbits.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include <json.hpp>

#include "graphzeta/error.hpp"
#include "graphzeta/scattering.hpp"

namespace graphzeta {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
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

bool allowed(const DirectedBondSpace& bonds, BondId next, BondId prev, bool non_backtracking) {
  return bonds.follows(next, prev) && !(non_backtracking && next == DirectedBondSpace::reversal(prev));
}

bool is_canonical_primitive(std::span<const BondId> w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t k = p; k < n && periodic; ++k) periodic = w[k] == w[k - p];
    if (periodic) return false;
  }
  for (std::size_t j = 1; j < n; ++j) {
    if (w[j] != w[0]) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const BondId a = w[(j + k) % n];
      if (a != w[k]) {
        if (a < w[k]) return false;
        break;
      }
    }
  }
  return true;
}

std::uint32_t count_backscatter(std::span<const BondId> w) {
  std::uint32_t beta = 0;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[(k + 1) % w.size()] == DirectedBondSpace::reversal(w[k])) ++beta;
  return beta;
}

struct Search {
  const DirectedBondSpace& bonds;
  std::size_t max_length;
  bool non_backtracking;
  BondId start = 0;
  std::vector<std::size_t> dist;
  std::vector<BondId> walk;
  std::vector<std::vector<BondId>> found;  // per length, walks concatenated

  // dist[d]: fewest bonds from d until s may follow, using bonds >= s only.
  void distances() {
    const std::size_t nb = bonds.size();
    constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max() / 2;
    dist.assign(nb, kFar);
    std::queue<BondId> q;
    for (BondId d = start; d < nb; ++d) {
      if (allowed(bonds, start, d, non_backtracking)) {
        dist[d] = 1;
        q.push(d);
      }
    }
    while (!q.empty()) {
      const BondId d = q.front();
      q.pop();
      // predecessors p of d: d follows p, i.e. t(p) = o(d).
      for (BondId p : bonds.incoming(bonds.origin(d))) {
        if (p < start || dist[p] <= dist[d] + 1 || !allowed(bonds, d, p, non_backtracking)) continue;
        dist[p] = dist[d] + 1;
        q.push(p);
      }
    }
  }

  void extend() {
    const BondId cur = walk.back();
    const std::size_t k = walk.size();
    if (k >= 2 && allowed(bonds, start, cur, non_backtracking) && is_canonical_primitive(walk)) {
      found[k].insert(found[k].end(), walk.begin(), walk.end());
    }
    if (k == max_length) return;
    for (BondId next : bonds.successors(cur)) {
      if (next < start || !allowed(bonds, next, cur, non_backtracking)) continue;
      if (k + dist[next] > max_length) continue;
      walk.push_back(next);
      extend();
      walk.pop_back();
    }
  }
};

}  // namespace

PrimitiveOrbit OrbitCatalog::operator[](std::size_t k) const {
  const auto it = std::upper_bound(first_of_length_.begin(), first_of_length_.end(), k);
  const auto n = static_cast<std::size_t>(it - first_of_length_.begin()) - 1;
  const std::span<const BondId> all(by_length_[n]);
  return {all.subspan((k - first_of_length_[n]) * n, n), backscatter_[k]};
}

std::pair<std::size_t, std::size_t> OrbitCatalog::range(std::size_t n) const {
  if (n > max_length_) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog does not reach period " + std::to_string(n));
  }
  return {first_of_length_[n], first_of_length_[n + 1]};
}

std::size_t OrbitCatalog::count(std::size_t n) const {
  const auto [a, b] = range(n);
  return b - a;
}

std::size_t OrbitCatalog::count_non_backtracking(std::size_t n) const {
  range(n);
  return non_backtracking_[n];
}

std::vector<std::uint64_t> primitive_orbit_counts(const DirectedBondSpace& bonds,
                                                  std::size_t max_length, bool non_backtracking) {
  const std::size_t nb = bonds.size();
  std::vector<std::uint64_t> t(nb * nb, 0);
  for (BondId d = 0; d < nb; ++d)
    for (BondId e : bonds.successors(d))
      if (allowed(bonds, e, d, non_backtracking)) t[e * nb + d] = 1;

  std::vector<std::uint64_t> traces(max_length + 1, 0);
  std::vector<std::uint64_t> power = t;
  for (std::size_t n = 1; n <= max_length; ++n) {
    if (n > 1) {
      std::vector<std::uint64_t> next(nb * nb, 0);
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t k = 0; k < nb; ++k) {
          if (t[i * nb + k] == 0) continue;
          for (std::size_t j = 0; j < nb; ++j)
            next[i * nb + j] = sat_add(next[i * nb + j], sat_mul(t[i * nb + k], power[k * nb + j]));
        }
      power = std::move(next);
    }
    for (std::size_t i = 0; i < nb; ++i) traces[n] = sat_add(traces[n], power[i * nb + i]);
  }

  std::vector<std::uint64_t> counts(max_length + 1, 0);
  for (std::size_t n = 1; n <= max_length; ++n) {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      const int mu = moebius(n / d);
      if (mu > 0) plus = sat_add(plus, traces[d]);
      if (mu < 0) minus = sat_add(minus, traces[d]);
    }
    counts[n] = plus == kSaturated ? kSaturated : (plus - minus) / n;
  }
  return counts;
}

OrbitCatalog enumerate_orbits(const DirectedBondSpace& bonds, std::size_t max_length,
                              const EnumerationOptions& options) {
  if (max_length < 2) {
    throw ValidationError(ValidationError::Kind::InvalidArgument, "maximum orbit length must be >= 2");
  }
  const std::vector<std::uint64_t> expected =
      primitive_orbit_counts(bonds, max_length, options.non_backtracking_only);
  std::uint64_t total = 0;
  for (std::size_t n = 2; n <= max_length; ++n) {
    total = sat_add(total, expected[n]);
    if (total > options.max_orbits) {
      throw ResourceError("orbit catalog would exceed " + std::to_string(options.max_orbits) +
                              " orbits at period " + std::to_string(n),
                          n - 1);
    }
  }

  Search search{bonds, max_length, options.non_backtracking_only, 0, {}, {}, {}};
  search.found.resize(max_length + 1);
  search.walk.reserve(max_length);
  for (BondId s = 0; s < bonds.size(); ++s) {
    search.start = s;
    search.distances();
    search.walk.assign(1, s);
    search.extend();
  }

  OrbitCatalog cat;
  cat.max_length_ = max_length;
  cat.non_backtracking_only_ = options.non_backtracking_only;
  cat.first_of_length_.assign(max_length + 2, 0);
  cat.non_backtracking_.assign(max_length + 1, 0);
  for (std::size_t n = 0; n <= max_length; ++n) {
    cat.first_of_length_[n] = cat.backscatter_.size();
    const std::vector<BondId>& flat = search.found[n];
    for (std::size_t at = 0; n > 0 && at < flat.size(); at += n) {
      const std::uint32_t beta = count_backscatter(std::span<const BondId>(flat.data() + at, n));
      if (beta == 0) ++cat.non_backtracking_[n];
      cat.backscatter_.push_back(beta);
    }
  }
  cat.by_length_ = std::move(search.found);
  cat.first_of_length_[max_length + 1] = cat.backscatter_.size();
  return cat;
}

Complex orbit_amplitude(const PrimitiveOrbit& p, const ComplexMatrix& u) {
  // Plain arithmetic: the checked complex multiply dominates large catalogs otherwise.
  const std::size_t n = p.period();
  if (n == 0) return 1.0;
  double re = 1.0;
  double im = 0.0;
  const auto step = [&](const Complex& x) {
    const double r = re * x.real() - im * x.imag();
    im = re * x.imag() + im * x.real();
    re = r;
  };
  for (std::size_t k = 0; k + 1 < n; ++k) step(u(p.bonds[k + 1], p.bonds[k]));
  step(u(p.bonds[0], p.bonds[n - 1]));
  return {re, im};
}

Complex orbit_amplitude(const PrimitiveOrbit& p, const Graph& g, Complex lambda, LaplacianKind kind) {
  return orbit_amplitude(p, build_U(g, lambda, kind).matrix);
}

Complex trace_power_via_orbits(const OrbitCatalog& catalog, const ComplexMatrix& u, std::size_t n) {
  if (n > catalog.max_length()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "orbit catalog too shallow for trace power " + std::to_string(n));
  }
  if (catalog.non_backtracking_only()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "trace powers need the full orbit catalog");
  }
  Complex total{};
  for (std::size_t m = 2; m <= n; ++m) {
    if (n % m != 0) continue;
    Complex sum{};
    const auto [first, last] = catalog.range(m);
    for (std::size_t k = first; k < last; ++k) {
      sum += std::pow(orbit_amplitude(catalog[k], u), static_cast<int>(n / m));
    }
    total += static_cast<double>(m) * sum;
  }
  return total;
}

std::string catalog_to_jsonl(const OrbitCatalog& catalog) {
  std::string out;
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const PrimitiveOrbit p = catalog[k];
    nlohmann::json j;
    j["n"] = p.period();
    j["beta"] = p.backscatter;
    j["bonds"] = std::vector<BondId>(p.bonds.begin(), p.bonds.end());
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace graphzeta
