#include "qcell/matrix.hpp"

#include <sstream>

namespace qcell {

Matrix::Matrix(int rows, int cols, const ScalarContext& ctx)
    : rows_(rows), cols_(cols), ctx_(ctx),
      data_(static_cast<size_t>(rows) * cols, Scalar::zero(ctx)) {}

Matrix Matrix::identity(int n, const ScalarContext& ctx) {
  Matrix m(n, n, ctx);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(ctx);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].isZero()) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  for (size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].isZero()) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(rows_, o.cols_, ctx_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.isZero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b.isZero()) continue;
        r.at(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_)
    if (!x.isZero()) x *= s;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool Matrix::isZero() const {
  for (const auto& x : data_)
    if (!x.isZero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, ctx_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

std::vector<int> Matrix::rowReduce() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows_; ++col) {
    int p = -1;
    for (int r = row; r < rows_; ++r)
      if (!at(r, col).isZero()) { p = r; break; }
    if (p < 0) continue;
    if (p != row)
      for (int j = col; j < cols_; ++j) std::swap(at(p, j), at(row, j));
    Scalar inv = at(row, col).inverse();
    for (int j = col; j < cols_; ++j)
      if (!at(row, j).isZero()) at(row, j) *= inv;
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const Scalar f = at(r, col);
      if (f.isZero()) continue;
      for (int j = col; j < cols_; ++j) {
        if (at(row, j).isZero()) continue;
        at(r, j) -= f * at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int Matrix::rank() const {
  Matrix m = *this;
  return static_cast<int>(m.rowReduce().size());
}

Matrix Matrix::nullspaceBasis() const {
  Matrix m = *this;
  std::vector<int> pivots = m.rowReduce();
  std::vector<bool> isPivot(cols_, false);
  for (int p : pivots) isPivot[p] = true;
  std::vector<int> freeCols;
  for (int c = 0; c < cols_; ++c)
    if (!isPivot[c]) freeCols.push_back(c);
  Matrix basis(cols_, static_cast<int>(freeCols.size()), ctx_);
  for (size_t k = 0; k < freeCols.size(); ++k) {
    int fc = freeCols[k];
    basis.at(fc, static_cast<int>(k)) = Scalar::one(ctx_);
    for (size_t r = 0; r < pivots.size(); ++r)
      basis.at(pivots[r], static_cast<int>(k)) = -m.at(static_cast<int>(r), fc);
  }
  return basis;
}

std::optional<Matrix> Matrix::solve(const Matrix& rhs) const {
  Matrix aug = hcat(rhs);
  std::vector<int> pivots = aug.rowReduce();
  // A pivot in the rhs block means some column is unsolvable.
  for (int p : pivots)
    if (p >= cols_) return std::nullopt;
  Matrix x(cols_, rhs.cols(), ctx_);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < rhs.cols(); ++j)
      x.at(pivots[r], j) = aug.at(static_cast<int>(r), cols_ + j);
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  auto x = solve(identity(rows_, ctx_));
  if (!x) return std::nullopt;
  // solve() found pivots in every column iff the matrix is invertible.
  Matrix check = (*this) * (*x);
  if (!(check == identity(rows_, ctx_))) return std::nullopt;
  return x;
}

Matrix Matrix::cols(const std::vector<int>& idx) const {
  Matrix r(rows_, static_cast<int>(idx.size()), ctx_);
  for (int i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, idx[j]);
  return r;
}

Matrix Matrix::rowsOf(const std::vector<int>& idx) const {
  Matrix r(static_cast<int>(idx.size()), cols_, ctx_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (int j = 0; j < cols_; ++j) r.at(static_cast<int>(i), j) = at(idx[i], j);
  return r;
}

Matrix Matrix::hcat(const Matrix& o) const {
  Matrix r(rows_, cols_ + o.cols_, ctx_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
  }
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << "[ ";
    for (int j = 0; j < cols_; ++j) os << at(i, j).str() << (j + 1 < cols_ ? ", " : "");
    os << " ]\n";
  }
  return os.str();
}

}  // namespace qcell
