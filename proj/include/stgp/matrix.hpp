#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stgp {

/// M x N real matrix stored column-major: column j holds every edge
/// value at time node j, so vec(X) is the concatenation of columns.
class DenseDofMatrix {
 public:
  DenseDofMatrix() = default;
  DenseDofMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  std::span<double> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const DenseDofMatrix&, const DenseDofMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double frobenius_dot(const DenseDofMatrix& a, const DenseDofMatrix& b);
double frobenius_norm(const DenseDofMatrix& a);
/// ||a - b||_F / ||b||_F (absolute difference when b is zero).
double relative_difference(const DenseDofMatrix& a, const DenseDofMatrix& b);

/// Symmetric tridiagonal N x N matrix.
class TriDiagMatrix {
 public:
  TriDiagMatrix() = default;
  TriDiagMatrix(std::vector<double> diagonal, std::vector<double> off_diagonal);

  std::size_t size() const noexcept { return diag_.size(); }
  std::span<const double> diagonal() const noexcept { return diag_; }
  /// off_diagonal()[j] is entry (j, j+1) == (j+1, j).
  std::span<const double> off_diagonal() const noexcept { return off_; }

  double operator()(std::size_t i, std::size_t j) const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
};

/// Symmetric sparse matrix in compressed-row form. Both triangles are
/// stored so a row product needs no transposed pass; column indices are
/// sorted within each row.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;
  /// Zero matrix with the given pattern; `columns[i]` must be sorted,
  /// unique and symmetric.
  explicit SparseSymMatrix(const std::vector<std::vector<std::size_t>>& columns);

  /// From a dense row-major n x n array; keeps the diagonal and every
  /// nonzero entry. The input must be symmetric.
  static SparseSymMatrix from_dense(std::span<const double> values, std::size_t n);

  std::size_t size() const noexcept { return row_start_.empty() ? 0 : row_start_.size() - 1; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_start() const noexcept { return row_start_; }
  std::span<const std::size_t> column_index() const noexcept { return columns_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  /// Entry (i, j); zero outside the pattern.
  double operator()(std::size_t i, std::size_t j) const;
  /// Position of (i, j) in values(), or nnz() when absent.
  std::size_t find(std::size_t i, std::size_t j) const;
  /// Adds v at (i, j); throws ArgumentError outside the pattern.
  void add(std::size_t i, std::size_t j, double v);

  std::vector<double> diagonal() const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;

  /// Largest |a_ij - a_ji| / max |a|.
  double asymmetry() const;

 private:
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

}  // namespace stgp
