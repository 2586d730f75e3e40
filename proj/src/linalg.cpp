#include "graphzeta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "graphzeta/error.hpp"

namespace graphzeta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxQrIterationsPerEigenvalue = 100;
constexpr int kMaxJacobiSweeps = 100;

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.square()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          std::string(what) + ": matrix is not square");
  }
}

// Dense real symmetric matrix used by the Jacobi solver.
struct RealSymmetric {
  std::size_t n;
  std::vector<double> a;
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Cyclic Jacobi. On return `m` holds the eigenvalues on its diagonal and `v`
// (if non-null) the eigenvectors as columns.
void jacobi(RealSymmetric& m, std::vector<double>* v) {
  const std::size_t n = m.n;
  if (v) {
    v->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*v)[i * n + i] = 1.0;
  }
  double frob = 0.0;
  for (double x : m.a) frob += x * x;
  frob = std::sqrt(frob);
  if (frob == 0.0) return;

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (std::sqrt(off) <= kEps * 1e-3 * frob) return;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double app = m(p, p);
        const double aqq = m(q, q);
        if (sweep > 3 && std::abs(apq) < kEps * 1e-2 * (std::abs(app) + std::abs(aqq))) {
          m(p, q) = m(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = m(k, p);
          const double akq = m(k, q);
          m(k, p) = c * akp - s * akq;
          m(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = m(p, k);
          const double aqk = m(q, k);
          m(p, k) = c * apk - s * aqk;
          m(q, k) = s * apk + c * aqk;
        }
        m(p, q) = m(q, p) = 0.0;
        if (v) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = (*v)[k * n + p];
            const double vkq = (*v)[k * n + q];
            (*v)[k * n + p] = c * vkp - s * vkq;
            (*v)[k * n + q] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  throw NumericError("Jacobi eigensolver did not converge");
}

// Givens rotation G = [[c, s], [-conj(s), c]] with G (x, y)^T = (r, 0)^T.
struct Givens {
  double c;
  Complex s;
};

Givens make_givens(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, 1.0};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

double residual_of(const ComplexMatrix& a, const std::vector<Complex>& values,
                   const ComplexMatrix& vectors) {
  const std::size_t n = a.rows();
  double worst = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    std::vector<Complex> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = vectors(i, k);
    const std::vector<Complex> ax = a * std::span<const Complex>(x);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::norm(ax[i] - x[i] * values[k]);
    worst = std::max(worst, std::sqrt(r));
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<EigenCluster> SpectralResult::clusters() const {
  std::vector<EigenCluster> out;
  for (const Complex& z : eigenvalues) {
    auto it = std::find_if(out.begin(), out.end(), [&](const EigenCluster& c) {
      return std::abs(c.value - z) < cluster_tolerance;
    });
    if (it == out.end()) {
      out.push_back({z, 1});
    } else {
      ++it->multiplicity;
    }
  }
  return out;
}

std::vector<double> SpectralResult::real_values() const {
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (const Complex& z : eigenvalues) out.push_back(z.real());
  return out;
}

// ---------------------------------------------------------------------------

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
  require_square(a, "LU decomposition");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      sign_ = -sign_;
    }
    const Complex pivot = lu_(k, k);
    if (pivot == Complex{}) continue;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Complex LuDecomposition::determinant() const {
  Complex d = static_cast<double>(sign_);
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

double LuDecomposition::min_pivot() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lu_.rows(); ++i) m = std::min(m, std::abs(lu_(i, i)));
  return m;
}

std::vector<Complex> LuDecomposition::solve(std::span<const Complex> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "right-hand side has the wrong length");
  }
  // Exactly singular pivots are nudged so inverse iteration can proceed.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(lu_(i, i)));
  const double floor = std::max(scale, 1.0) * kEps;

  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu_(ii, j) * x[j];
    Complex p = lu_(ii, ii);
    if (std::abs(p) < floor) p = floor;
    x[ii] /= p;
  }
  return x;
}

Complex determinant(const ComplexMatrix& a) {
  require_square(a, "determinant");
  if (a.rows() == 0) return 1.0;
  return LuDecomposition(a).determinant();
}

// ---------------------------------------------------------------------------

SpectralResult eig_symmetric(const ComplexMatrix& a, bool want_vectors,
                             double cluster_tolerance) {
  require_square(a, "eig_symmetric");
  const std::size_t n = a.rows();
  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      asym = std::max(asym, std::abs(a(i, j) - a(j, i)));
      asym = std::max(asym, std::abs(a(i, j).imag()));
    }
  }
  if (asym >= 1e-12) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "eig_symmetric: matrix is not real symmetric");
  }

  RealSymmetric m{n, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j).real() + a(j, i).real());

  std::vector<double> v;
  jacobi(m, want_vectors ? &v : nullptr);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return m(x, x) < m(y, y); });

  SpectralResult result;
  result.cluster_tolerance = cluster_tolerance;
  for (std::size_t k : order) result.eigenvalues.emplace_back(m(k, k), 0.0);
  if (want_vectors) {
    ComplexMatrix vecs(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t i = 0; i < n; ++i) vecs(i, col) = v[i * n + order[col]];
    result.residual = residual_of(a, result.eigenvalues, vecs);
    result.eigenvectors = std::move(vecs);
  }
  return result;
}

SpectralResult eig_hermitian(const ComplexMatrix& a, bool want_vectors,
                             double cluster_tolerance) {
  require_square(a, "eig_hermitian");
  const std::size_t n = a.rows();
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      defect = std::max(defect, std::abs(a(i, j) - std::conj(a(j, i))));
  if (defect >= 1e-10 * std::max(1.0, a.max_abs())) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "eig_hermitian: matrix is not Hermitian");
  }

  // Every eigenvalue of A appears twice in the embedding, with eigenvectors
  // (x, y) and (-y, x) representing z = x + iy and i z.
  const std::size_t m2 = 2 * n;
  RealSymmetric m{m2, std::vector<double>(m2 * m2)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      m(i, j) = h.real();
      m(i + n, j + n) = h.real();
      m(i, j + n) = -h.imag();
      m(i + n, j) = h.imag();
    }
  }
  std::vector<double> v;
  jacobi(m, want_vectors ? &v : nullptr);

  std::vector<std::size_t> order(m2);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return m(x, x) < m(y, y); });

  SpectralResult result;
  result.cluster_tolerance = cluster_tolerance;
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = m(order[2 * k], order[2 * k]);
    const double hi = m(order[2 * k + 1], order[2 * k + 1]);
    result.eigenvalues.emplace_back(0.5 * (lo + hi), 0.0);
  }
  if (!want_vectors) return result;

  // Pick n complex vectors by Gram-Schmidt over the 2n real candidates in order.
  ComplexMatrix vecs(n, n);
  std::size_t filled = 0;
  std::vector<Complex> vals;
  for (std::size_t idx = 0; idx < m2 && filled < n; ++idx) {
    const std::size_t col = order[idx];
    std::vector<Complex> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Complex(v[i * m2 + col], v[(i + n) * m2 + col]);
    for (std::size_t c = 0; c < filled; ++c) {
      Complex proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(vecs(i, c)) * z[i];
      for (std::size_t i = 0; i < n; ++i) z[i] -= proj * vecs(i, c);
    }
    const double nz = norm2(z);
    if (nz < 0.5) continue;
    for (std::size_t i = 0; i < n; ++i) vecs(i, filled) = z[i] / nz;
    vals.emplace_back(m(col, col), 0.0);
    ++filled;
  }
  if (filled != n) throw NumericError("eig_hermitian: could not extract eigenvectors");
  result.eigenvalues = vals;
  result.residual = residual_of(a, result.eigenvalues, vecs);
  result.eigenvectors = std::move(vecs);
  return result;
}

// ---------------------------------------------------------------------------

namespace {

// Moduli are compared on a 1e-10 grid so that rounding noise does not split
// values of equal modulus; arguments near -pi are folded onto pi.
double modulus_key(const Complex& x) { return std::round(std::abs(x) * 1e10); }

double argument_key(const Complex& x) {
  const double a = std::arg(x);
  return a <= -std::numbers::pi + 1e-12 ? std::numbers::pi : a;
}

}  // namespace

bool modulus_argument_less(const Complex& x, const Complex& y) {
  const double ax = modulus_key(x);
  const double ay = modulus_key(y);
  if (ax != ay) return ax < ay;
  return argument_key(x) < argument_key(y);
}

SpectralResult eig_general(const ComplexMatrix& a, double cluster_tolerance) {
  require_square(a, "eig_general");
  const std::size_t n = a.rows();
  ComplexMatrix h = a;

  // Householder reduction to upper Hessenberg form.
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha_norm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha_norm += std::norm(h(i, k));
    alpha_norm = std::sqrt(alpha_norm);
    if (alpha_norm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    std::vector<Complex> u(n, 0.0);
    u[k + 1] = x0 + phase * alpha_norm;
    for (std::size_t i = k + 2; i < n; ++i) u[i] = h(i, k);
    double unorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) unorm2 += std::norm(u[i]);
    if (unorm2 == 0.0) continue;
    // H <- (I - 2uu*/u*u) H (I - 2uu*/u*u)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(u[i]) * h(i, j);
      s *= 2.0 / unorm2;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= u[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * u[j];
      s *= 2.0 / unorm2;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(u[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }

  const double hnorm = std::max(h.max_abs(), std::numeric_limits<double>::min());
  std::vector<Complex> values(n);
  std::size_t hi = n;  // active block is [lo, hi)
  int iterations = 0;
  while (hi > 0) {
    const std::size_t last = hi - 1;
    std::size_t lo = last;
    while (lo > 0) {
      double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
      if (s == 0.0) s = hnorm;
      if (std::abs(h(lo, lo - 1)) <= kEps * s) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == last) {
      values[last] = h(last, last);
      --hi;
      iterations = 0;
      continue;
    }
    if (++iterations > kMaxQrIterationsPerEigenvalue) {
      throw NumericError("eig_general: QR iteration did not converge within " +
                         std::to_string(kMaxQrIterationsPerEigenvalue) +
                         " sweeps for eigenvalue " + std::to_string(last));
    }

    // Wilkinson shift from the trailing 2x2 block; ad hoc shifts break cycles.
    Complex mu;
    if (iterations % 11 == 0) {
      mu = h(last, last) + Complex(std::abs(h(last, last - 1).real()),
                                   std::abs(h(last, last - 1).imag())) * 0.75;
    } else {
      const Complex p = h(last - 1, last - 1);
      const Complex q = h(last - 1, last);
      const Complex r = h(last, last - 1);
      const Complex t = h(last, last);
      const Complex half = 0.5 * (p - t);
      const Complex disc = std::sqrt(half * half + q * r);
      const Complex mu1 = t + half + disc;
      const Complex mu2 = t + half - disc;
      mu = std::abs(mu1 - t) < std::abs(mu2 - t) ? mu1 : mu2;
    }

    for (std::size_t i = lo; i < hi; ++i) h(i, i) -= mu;
    std::vector<Givens> rot;
    rot.reserve(hi - lo);
    for (std::size_t k = lo; k + 1 < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot.push_back(g);
      for (std::size_t j = k; j < hi; ++j) {
        const Complex x = h(k, j);
        const Complex y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
      h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k + 1 < hi; ++k) {
      const Givens& g = rot[k - lo];
      const std::size_t row_end = std::min(k + 2, hi - 1);
      for (std::size_t i = lo; i <= row_end; ++i) {
        const Complex x = h(i, k);
        const Complex y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t i = lo; i < hi; ++i) h(i, i) += mu;
  }

  std::sort(values.begin(), values.end(), [](const Complex& x, const Complex& y) {
    const double ax = modulus_key(x);
    const double ay = modulus_key(y);
    if (ax != ay) return ax > ay;
    return argument_key(x) < argument_key(y);
  });
  SpectralResult result;
  result.eigenvalues = std::move(values);
  result.cluster_tolerance = cluster_tolerance;
  return result;
}

double spectral_radius(const ComplexMatrix& a) {
  const SpectralResult s = eig_general(a);
  return s.eigenvalues.empty() ? 0.0 : std::abs(s.eigenvalues.front());
}

// ---------------------------------------------------------------------------

NullSpace null_space(const ComplexMatrix& a, double threshold) {
  const ComplexMatrix gram = a.adjoint() * a;
  const SpectralResult s = eig_hermitian(gram, true);
  NullSpace out;
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const double sv = std::sqrt(std::max(0.0, s.eigenvalues[k].real()));
    out.singular_values.push_back(sv);
    if (sv < threshold) {
      std::vector<Complex> x(a.cols());
      for (std::size_t i = 0; i < a.cols(); ++i) x[i] = (*s.eigenvectors)(i, k);
      out.basis.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<Complex> eigenvector_near(const ComplexMatrix& a, Complex shift, int iterations) {
  require_square(a, "eigenvector_near");
  const std::size_t n = a.rows();
  ComplexMatrix shifted = a;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= shift;
  const LuDecomposition lu(shifted);
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex(1.0, 0.1 * static_cast<double>(i % 3));
  for (int it = 0; it < iterations; ++it) {
    x = lu.solve(x);
    const double nx = norm2(x);
    if (nx == 0.0 || !std::isfinite(nx)) throw NumericError("inverse iteration broke down");
    for (Complex& z : x) z /= nx;
  }
  return x;
}

double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end(), modulus_argument_less);
  std::sort(b.begin(), b.end(), modulus_argument_less);
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace graphzeta
