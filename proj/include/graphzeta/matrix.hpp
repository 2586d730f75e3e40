#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace graphzeta {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Entries are finite by construction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;

  /// Largest entry modulus.
  double max_abs() const;
  /// Largest |Im| over all entries.
  double max_imag() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x);

Complex trace(const ComplexMatrix& a);
ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned n);

/// max_{ij} |(A A^dagger - I)_{ij}|
double unitarity_defect(const ComplexMatrix& a);

double norm2(std::span<const Complex> x);

}  // namespace graphzeta
