#include "stgp/solver.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "stgp/error.hpp"

namespace stgp {

Preconditioner parse_preconditioner(std::string_view name) {
  if (name == "none") return Preconditioner::none;
  if (name == "jacobi") return Preconditioner::jacobi;
  throw ArgumentError("unknown preconditioner '" + std::string(name) + "' (none|jacobi)");
}

std::string_view to_string(Preconditioner p) { return p == Preconditioner::none ? "none" : "jacobi"; }

void SolverConfig::validate() const {
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw ArgumentError("solver tolerance must lie in (0, 1)");
}

KroneckerOperator::KroneckerOperator(const SparseSymMatrix& a, const TriDiagMatrix& b)
    : a_(&a), b_(&b) {}

void KroneckerOperator::apply(const DenseDofMatrix& x, DenseDofMatrix& y) const {
  const std::size_t m = rows();
  const std::size_t n = cols();
  if (x.rows() != m || x.cols() != n || y.rows() != m || y.cols() != n) {
    throw ArgumentError("operator applied to a " + std::to_string(x.rows()) + "x" +
                        std::to_string(x.cols()) + " matrix, expected " + std::to_string(m) + "x" +
                        std::to_string(n));
  }
  // T = A X column by column, then Y = T B with B symmetric tridiagonal.
  scratch_.resize(m * n);
  for (std::size_t j = 0; j < n; ++j) {
    a_->multiply(x.col(j), std::span<double>(scratch_.data() + j * m, m));
  }
  const auto d = b_->diagonal();
  const auto o = b_->off_diagonal();
  for (std::size_t j = 0; j < n; ++j) {
    auto yj = y.col(j);
    const double* tj = scratch_.data() + j * m;
    for (std::size_t i = 0; i < m; ++i) yj[i] = d[j] * tj[i];
    if (j > 0) {
      const double* tp = tj - m;
      for (std::size_t i = 0; i < m; ++i) yj[i] += o[j - 1] * tp[i];
    }
    if (j + 1 < n) {
      const double* tn = tj + m;
      for (std::size_t i = 0; i < m; ++i) yj[i] += o[j] * tn[i];
    }
  }
}

DenseDofMatrix KroneckerOperator::diagonal() const {
  const auto da = a_->diagonal();
  const auto db = b_->diagonal();
  DenseDofMatrix d(rows(), cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t i = 0; i < rows(); ++i) d(i, j) = da[i] * db[j];
  }
  return d;
}

DenseDofMatrix apply_operator(const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& x) {
  DenseDofMatrix y(a.size(), b.size());
  KroneckerOperator(a, b).apply(x, y);
  return y;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

SolveResult cg_solve(const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& c,
                     const SolverConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (c.rows() != m || c.cols() != n) throw ArgumentError("right-hand side shape does not match A and B");

  const KroneckerOperator op(a, b);
  const std::size_t max_it = config.max_iterations > 0 ? config.max_iterations : 10 * m * n;

  SolveResult out{DenseDofMatrix(m, n), {}};
  out.report.preconditioner = config.preconditioner;
  auto& x = out.x;
  if (config.initial_guess) {
    if (config.initial_guess->rows() != m || config.initial_guess->cols() != n) {
      throw ArgumentError("initial guess shape does not match A and B");
    }
    x = *config.initial_guess;
  }

  const double c_norm = frobenius_norm(c);
  const auto finish = [&](std::size_t iterations, double residual, bool converged) {
    out.report.iterations = iterations;
    out.report.relative_residual = residual;
    out.report.converged = converged;
    out.report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return std::move(out);
  };
  if (c_norm == 0.0) {
    x = DenseDofMatrix(m, n);
    return finish(0, 0.0, true);
  }

  DenseDofMatrix inv_diag(m, n, 1.0);
  if (config.preconditioner == Preconditioner::jacobi) {
    inv_diag = op.diagonal();
    for (auto& v : inv_diag.data()) v = 1.0 / v;
  }

  DenseDofMatrix r(m, n), z(m, n), p(m, n), q(m, n);
  const auto true_residual = [&] {
    op.apply(x, q);
    for (std::size_t k = 0; k < r.size(); ++k) r.data()[k] = c.data()[k] - q.data()[k];
    return frobenius_norm(r) / c_norm;
  };
  const auto precondition = [&] {
    for (std::size_t k = 0; k < r.size(); ++k) z.data()[k] = inv_diag.data()[k] * r.data()[k];
  };

  double residual = 1.0;
  if (config.initial_guess) {
    residual = true_residual();
  } else {
    r = c;
  }
  if (residual <= config.tolerance) return finish(0, residual, true);

  std::size_t it = 0;
  // Outer loop restarts from the true residual whenever the recursive
  // residual claims convergence the true one does not confirm.
  while (it < max_it) {
    precondition();
    p = z;
    double rz = dot(r.data(), z.data());
    bool claimed = false;
    while (it < max_it) {
      op.apply(p, q);
      const double pq = dot(p.data(), q.data());
      if (!(pq > 0.0)) break;
      const double alpha = rz / pq;
      for (std::size_t k = 0; k < x.size(); ++k) {
        x.data()[k] += alpha * p.data()[k];
        r.data()[k] -= alpha * q.data()[k];
      }
      ++it;
      if (frobenius_norm(r) / c_norm <= config.tolerance) {
        claimed = true;
        break;
      }
      precondition();
      const double rz_next = dot(r.data(), z.data());
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t k = 0; k < p.size(); ++k) p.data()[k] = z.data()[k] + beta * p.data()[k];
    }
    residual = true_residual();
    if (residual <= config.tolerance) return finish(it, residual, true);
    if (!claimed) break;
  }
  return finish(it, residual, false);
}

DenseDofMatrix dense_oracle_solve(const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& c) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (c.rows() != m || c.cols() != n) throw ArgumentError("right-hand side shape does not match A and B");
  if (m * n > kDenseOracleLimit) {
    throw ArgumentError("dense oracle limited to M*N <= " + std::to_string(kDenseOracleLimit) +
                        ", got " + std::to_string(m * n));
  }
  const auto size = static_cast<Eigen::Index>(m * n);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(size, size);
  // (B^T kron A)[(j, i), (l, q)] = B(l, j) A(i, q), vec index = col * M + row.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) {
      const double bt = b(l, j);
      if (bt == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t q = 0; q < m; ++q) {
          k(static_cast<Eigen::Index>(j * m + i), static_cast<Eigen::Index>(l * m + q)) = bt * a(i, q);
        }
      }
    }
  }
  const Eigen::Map<const Eigen::VectorXd> rhs(c.data().data(), size);
  const Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) {
    throw Error("Kronecker operator is not positive definite; A or B violates SPD");
  }
  const Eigen::VectorXd solution = llt.solve(rhs);
  DenseDofMatrix x(m, n);
  for (Eigen::Index p = 0; p < size; ++p) x.data()[static_cast<std::size_t>(p)] = solution(p);
  return x;
}

}  // namespace stgp
