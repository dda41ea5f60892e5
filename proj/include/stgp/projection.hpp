#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "stgp/assembly.hpp"
#include "stgp/basis.hpp"
#include "stgp/error.hpp"
#include "stgp/fields.hpp"
#include "stgp/matrix.hpp"
#include "stgp/mesh.hpp"
#include "stgp/solver.hpp"

namespace stgp {

struct QuadratureSettings {
  int space_order = 4;  ///< simplex rule order for A, C and the error norm
  int time_points = 2;  ///< Gauss points per temporal sub-interval

  QuadratureRule space_rule(int dim) const { return simplex_quadrature(dim, space_order); }
  QuadratureRule time_rule() const { return gauss_legendre(time_points); }
};

struct ProjectionProblem {
  Mesh target;
  TemporalGrid grid;
  std::shared_ptr<const SourceField> source;
  QuadratureSettings quadrature{};
  OutsidePolicy policy = OutsidePolicy::zero;
  SolverConfig solver{};
  unsigned threads = 1;
  bool allow_unconverged = false;  ///< return unconverged results instead of throwing
};

/// eps_H = int_T int_D mu/2 |H_t - H_s|^2 and the source energy
/// int_T int_D mu/2 |H_s|^2 over the target mesh and grid.
struct ErrorNorm {
  double epsilon = 0.0;
  double source_energy = 0.0;

  /// sqrt(epsilon / source_energy); 0 when the source energy is 0.
  double relative() const;
};

struct PhaseTimings {
  double spatial_mass = 0.0;
  double temporal_gram = 0.0;
  double source_matrix = 0.0;
  double solve = 0.0;
  double error_norm = 0.0;
};

struct ProjectionResult {
  DenseDofMatrix x;
  SolveReport solve;
  ErrorNorm error;
  std::size_t outside_points = 0;
  std::size_t edges = 0;      ///< M
  std::size_t steps = 0;      ///< N
  std::size_t mass_nnz = 0;   ///< nonzeros of A
  double galerkin_residual = 0.0;  ///< ||A X B - C||_F / ||C||_F
  PhaseTimings timings;
};

/// Thrown by project() when CG does not converge and the problem does
/// not allow unconverged results. Carries the partial result.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, ProjectionResult result)
      : Error(what), result_(std::move(result)) {}
  const ProjectionResult& result() const noexcept { return result_; }

 private:
  ProjectionResult result_;
};

/// Space-time Galerkin projection of the source onto the target
/// Whitney x hat space: assembles A, B, C and solves A X B = C.
ProjectionResult project(const ProjectionProblem& problem);

/// Error norm of the target field with DOFs `x` against `source`, using
/// the same space-time quadrature as the source-matrix assembly.
ErrorNorm error_norm(const SourceField& source, const DenseDofMatrix& x, const Mesh& mesh,
                     const EdgeTable& edges, const TemporalGrid& grid,
                     const QuadratureSettings& quadrature = {},
                     OutsidePolicy policy = OutsidePolicy::zero, unsigned threads = 1);

/// H_t(x, t) of a projected field; throws DomainError outside the target
/// mesh or the grid span.
Vector eval_projected(const DiscreteField& projected, const Point& x, double t);

struct ProbeSample {
  double t;
  Vector h;
};

/// `samples` (>= 2) uniformly spaced evaluations over the grid span,
/// endpoints included.
std::vector<ProbeSample> probe_timeseries(const DiscreteField& projected, const Point& x,
                                          std::size_t samples);

/// CSV with header `t,hx,hy` (2D) or `t,hx,hy,hz` (3D).
std::string write_probe_csv(const std::vector<ProbeSample>& series, int dim);

}  // namespace stgp
