#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takiff/polynomial.hpp"
#include "takiff/scalar.hpp"

namespace takiff {

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  // Rows must all have the same length.
  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_symmetric() const;

  Matrix transpose() const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  Matrix operator-() const;
  std::vector<Scalar> operator*(std::span<const Scalar> v) const;
  bool operator==(const Matrix& o) const = default;

  Scalar trace() const;
  Scalar determinant() const;
  std::size_t rank() const;
  // Throws ValidationError when singular.
  Matrix inverse() const;
  // Some x with A x = b, or nullopt when b is outside the column span.
  std::optional<std::vector<Scalar>> solve(std::span<const Scalar> b) const;
  // Basis of {x : A x = 0}.
  std::vector<std::vector<Scalar>> nullspace() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix commutator(const Matrix& a, const Matrix& b);

// A (rational matrix) applied to a vector of polynomials.
std::vector<Polynomial> apply(const Matrix& a, std::span<const Polynomial> v);

}  // namespace takiff
