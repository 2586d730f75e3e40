#include "graphzeta/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphzeta/error.hpp"

namespace graphzeta {

namespace {

void require_finite(std::span<const Complex> data) {
  for (const Complex& z : data) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "matrix shape mismatch");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "entry count does not match matrix shape");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw ValidationError(ValidationError::Kind::InvalidArgument,
                            "ragged matrix initializer");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::max_imag() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z.imag()));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (Complex& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "matrix product shape mismatch");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x) {
  if (a.cols() != x.size()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "matrix-vector shape mismatch");
  }
  std::vector<Complex> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Complex trace(const ComplexMatrix& a) {
  Complex s{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned n) {
  if (!a.square()) {
    throw ValidationError(ValidationError::Kind::InvalidArgument,
                          "matrix power of a non-square matrix");
  }
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  for (unsigned k = 0; k < n; ++k) result = result * a;
  return result;
}

double unitarity_defect(const ComplexMatrix& a) {
  ComplexMatrix p = a * a.adjoint();
  double d = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      d = std::max(d, std::abs(p(i, j) - (i == j ? 1.0 : 0.0)));
  return d;
}

double norm2(std::span<const Complex> x) {
  double s = 0.0;
  for (const Complex& z : x) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace graphzeta
