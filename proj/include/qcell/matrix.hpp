#pragma once

#include <optional>
#include <vector>

#include "qcell/scalar.hpp"

namespace qcell {

/// Dense matrix over an exact scalar field. Elimination uses deterministic
/// first-nonzero pivoting so solution bases are reproducible across runs.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols, const ScalarContext& ctx);
  static Matrix identity(int n, const ScalarContext& ctx);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const ScalarContext& context() const { return ctx_; }

  Scalar& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  bool operator==(const Matrix& o) const;
  bool isZero() const;

  Matrix transpose() const;
  /// In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rowReduce();
  int rank() const;
  /// Basis of the right nullspace, one column per free variable, in column
  /// order (free variable set to 1, remaining free variables 0).
  Matrix nullspaceBasis() const;
  /// Particular solutions X with (*this) * X = rhs, free variables set to 0.
  /// Returns std::nullopt when any column of rhs is unsolvable.
  std::optional<Matrix> solve(const Matrix& rhs) const;
  std::optional<Matrix> inverse() const;

  Matrix cols(const std::vector<int>& idx) const;
  Matrix rowsOf(const std::vector<int>& idx) const;
  Matrix hcat(const Matrix& o) const;

  std::string str() const;

private:
  int rows_ = 0, cols_ = 0;
  ScalarContext ctx_;
  std::vector<Scalar> data_;
};

}  // namespace qcell
