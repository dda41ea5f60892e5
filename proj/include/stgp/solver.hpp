#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "stgp/matrix.hpp"

namespace stgp {

enum class Preconditioner { none, jacobi };

Preconditioner parse_preconditioner(std::string_view name);
std::string_view to_string(Preconditioner p);

struct SolverConfig {
  double tolerance = 1e-10;        ///< on ||A X B - C||_F / ||C||_F
  std::size_t max_iterations = 0;  ///< 0 selects 10 * M * N
  Preconditioner preconditioner = Preconditioner::jacobi;
  std::optional<DenseDofMatrix> initial_guess;  ///< warm start; zero when empty

  /// Throws ArgumentError for tolerance outside (0, 1).
  void validate() const;
};

struct SolveReport {
  std::size_t iterations = 0;
  double relative_residual = 0.0;  ///< true residual of the returned iterate
  bool converged = false;
  double seconds = 0.0;
  Preconditioner preconditioner = Preconditioner::jacobi;
};

struct SolveResult {
  DenseDofMatrix x;
  SolveReport report;
};

/// The operator (B^T kron A) acting on vec(X), applied as A X B.
class KroneckerOperator {
 public:
  KroneckerOperator(const SparseSymMatrix& a, const TriDiagMatrix& b);

  std::size_t rows() const noexcept { return a_->size(); }
  std::size_t cols() const noexcept { return b_->size(); }

  /// y = A x B; y must already have the shape of x.
  void apply(const DenseDofMatrix& x, DenseDofMatrix& y) const;

  /// Diagonal of the Kronecker operator: diag(A)_i * diag(B)_j.
  DenseDofMatrix diagonal() const;

 private:
  const SparseSymMatrix* a_;
  const TriDiagMatrix* b_;
  mutable std::vector<double> scratch_;
};

/// Y = A X B. Throws ArgumentError on shape mismatch.
DenseDofMatrix apply_operator(const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& x);

/// Preconditioned conjugate gradients on A X B = C. On non-convergence
/// the report says so and the last iterate (the energy-norm best over
/// the Krylov space) is returned.
SolveResult cg_solve(const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& c,
                     const SolverConfig& config = {});

/// Largest M * N accepted by dense_oracle_solve.
inline constexpr std::size_t kDenseOracleLimit = 2000;

/// Materializes kron(B^T, A), factors it and solves for vec(X).
/// Test oracle only.
DenseDofMatrix dense_oracle_solve(const SparseSymMatrix& a, const TriDiagMatrix& b,
                                  const DenseDofMatrix& c);

}  // namespace stgp
