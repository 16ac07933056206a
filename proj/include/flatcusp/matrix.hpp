#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "flatcusp/rational.hpp"

namespace flatcusp {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over Q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);
  explicit Matrix(const std::vector<Vector>& rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Rational> entries);
  static Matrix from_columns(const std::vector<Vector>& columns);
  static Matrix block_diagonal(const Matrix& a, const Matrix& b);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Rational& s) const;

  /// Fraction-free (Bareiss) determinant.
  Rational determinant() const;
  std::size_t rank() const;
  /// Throws Singular.
  Matrix inverse() const;
  /// Basis of {x : A x = 0}, computed by fraction-free elimination.
  std::vector<Vector> nullspace() const;

  /// v^T A w
  Rational bilinear(const Vector& v, const Vector& w) const;
  Rational quadratic(const Vector& v) const { return bilinear(v, v); }

  std::vector<Vector> to_rows() const;
  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Positive definite test by exact leading principal minors.
bool is_positive_definite(const Matrix& m);

}  // namespace flatcusp
