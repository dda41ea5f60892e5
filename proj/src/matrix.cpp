#include "stgp/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "stgp/error.hpp"

namespace stgp {

double frobenius_dot(const DenseDofMatrix& a, const DenseDofMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix shapes differ");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a.data()[k] * b.data()[k];
  return s;
}

double frobenius_norm(const DenseDofMatrix& a) { return std::sqrt(frobenius_dot(a, a)); }

double relative_difference(const DenseDofMatrix& a, const DenseDofMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix shapes differ");
  double diff = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a.data()[k] - b.data()[k];
    diff += d * d;
  }
  const double ref = frobenius_norm(b);
  return ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff);
}

TriDiagMatrix::TriDiagMatrix(std::vector<double> diagonal, std::vector<double> off_diagonal)
    : diag_(std::move(diagonal)), off_(std::move(off_diagonal)) {
  if (!diag_.empty() && off_.size() + 1 != diag_.size()) {
    throw ArgumentError("tridiagonal matrix needs N - 1 off-diagonal entries");
  }
}

double TriDiagMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j) return diag_[i];
  if (j == i + 1) return off_[i];
  if (i == j + 1) return off_[j];
  return 0.0;
}

SparseSymMatrix::SparseSymMatrix(const std::vector<std::vector<std::size_t>>& columns) {
  row_start_.reserve(columns.size() + 1);
  row_start_.push_back(0);
  for (const auto& row : columns) {
    columns_.insert(columns_.end(), row.begin(), row.end());
    row_start_.push_back(columns_.size());
  }
  values_.assign(columns_.size(), 0.0);
}

SparseSymMatrix SparseSymMatrix::from_dense(std::span<const double> values, std::size_t n) {
  if (values.size() != n * n) throw ArgumentError("dense input must hold n * n values");
  std::vector<std::vector<std::size_t>> columns(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || values[i * n + j] != 0.0 || values[j * n + i] != 0.0) columns[i].push_back(j);
    }
  }
  SparseSymMatrix a(columns);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : columns[i]) a.add(i, j, values[i * n + j]);
  }
  return a;
}

std::size_t SparseSymMatrix::find(std::size_t i, std::size_t j) const {
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_start_[i]);
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_start_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return nnz();
  return static_cast<std::size_t>(it - columns_.begin());
}

double SparseSymMatrix::operator()(std::size_t i, std::size_t j) const {
  const std::size_t p = find(i, j);
  return p == nnz() ? 0.0 : values_[p];
}

void SparseSymMatrix::add(std::size_t i, std::size_t j, double v) {
  const std::size_t p = find(i, j);
  if (p == nnz()) throw ArgumentError("entry outside the sparsity pattern");
  values_[p] += v;
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) d[i] = (*this)(i, i);
  return d;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) s += values_[p] * x[columns_[p]];
    y[i] = s;
  }
}

double SparseSymMatrix::asymmetry() const {
  double worst = 0.0, largest = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t p = row_start_[i]; p < row_start_[i + 1]; ++p) {
      largest = std::max(largest, std::abs(values_[p]));
      worst = std::max(worst, std::abs(values_[p] - (*this)(columns_[p], i)));
    }
  }
  return largest > 0.0 ? worst / largest : 0.0;
}

}  // namespace stgp
