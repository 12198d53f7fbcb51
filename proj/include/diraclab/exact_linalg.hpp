#pragma once

#include <optional>
#include <vector>

#include "diraclab/rational.hpp"

namespace diraclab::numerics {

// Dense matrix over the rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> column(std::size_t j) const;
  QMatrix transpose() const;
  bool is_zero() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

std::vector<Rational> multiply(const QMatrix& a, const std::vector<Rational>& x);

// Reduced row echelon form; pivots receives the pivot columns.
QMatrix rref(QMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const QMatrix& m);
Rational determinant(QMatrix m);
std::optional<QMatrix> inverse(const QMatrix& m);
// Basis of the null space, one column per vector.
QMatrix nullspace(const QMatrix& m);
// Some solution of m x = b, if one exists.
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);
// Horizontal concatenation.
QMatrix hstack(const QMatrix& a, const QMatrix& b);

}  // namespace diraclab::numerics
