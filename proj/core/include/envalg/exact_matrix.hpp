#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "envalg/scalar.hpp"

namespace envalg {

using ExactVector = std::vector<Scalar>;

/// Dense row-major matrix of Gaussian rationals.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_complex(const Eigen::MatrixXcd& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ExactMatrix adjoint() const;
  bool is_zero() const;
  bool is_hermitian() const;

  ExactMatrix& operator+=(const ExactMatrix& o);
  ExactMatrix& operator-=(const ExactMatrix& o);
  ExactMatrix& operator*=(const Scalar& c);
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) { return a -= b; }
  friend ExactMatrix operator*(ExactMatrix a, const Scalar& c) { return a *= c; }
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend ExactVector operator*(const ExactMatrix& a, const ExactVector& v);
  friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

  Eigen::MatrixXcd to_complex() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// <a, b> = b^H a.
Scalar inner(const ExactVector& a, const ExactVector& b);
/// b^H M a.
Scalar form(const ExactMatrix& m, const ExactVector& a, const ExactVector& b);

/// Symmetric pivoted elimination of a hermitian matrix M. Each eliminated
/// pivot p carries a vector u_p (original coordinates) with the u_p mutually
/// M-orthogonal and u_p^H M u_p = pivot value > 0.
struct HermitianFactorization {
  bool psd = true;
  std::size_t rank = 0;
  /// Pivot indices in elimination order.
  std::vector<std::size_t> pivots;
  std::vector<Rational> pivot_values;
  /// One column per pivot.
  std::vector<ExactVector> basis;
  /// Indices whose reduced vectors span the null space (meaningful when psd).
  std::vector<std::size_t> null_indices;
  std::vector<ExactVector> null_basis;
  /// When !psd: u with u^H M u = witness_value < 0.
  std::optional<ExactVector> witness;
  Rational witness_value{0};
};

/// Throws std::invalid_argument when M is not square and hermitian.
HermitianFactorization factor_hermitian(const ExactMatrix& m);

}  // namespace envalg
