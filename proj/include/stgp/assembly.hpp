#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stgp/basis.hpp"
#include "stgp/fields.hpp"
#include "stgp/matrix.hpp"
#include "stgp/mesh.hpp"
#include "stgp/quadrature.hpp"

namespace stgp {

/// A_ij = int_D mu w_i . w_j over the target mesh. `quad` must have
/// order >= 2 (the integrand is quadratic in the barycentrics).
SparseSymMatrix assemble_spatial_mass(const Mesh& mesh, const EdgeTable& edges,
                                      const QuadratureRule& quad, unsigned threads = 1);

/// B_ij = int_T hat_i hat_j, in closed form.
TriDiagMatrix assemble_temporal_gram(const TemporalGrid& grid);

/// One temporal quadrature point of the target grid. Each target
/// interval is split at the source breakpoints inside it and every
/// piece gets its own Gauss rule, so piecewise-linear-in-time sources
/// are integrated exactly.
struct TimeSample {
  double t;
  double weight;
  std::size_t interval;  ///< target interval k; hats k and k+1 are active
  double left;           ///< hat_k(t)
  double right;          ///< hat_{k+1}(t)
};

std::vector<TimeSample> build_time_samples(const TemporalGrid& grid,
                                           std::span<const double> breakpoints,
                                           const QuadratureRule& time_quad);

struct SourceAssembly {
  DenseDofMatrix c;
  std::size_t outside_points = 0;  ///< spatial quadrature points outside the source domain
};

/// C_ij = int_T int_D mu w_i hat_j . H_s. Throws DomainError when the
/// grid span is not contained in the source span, or for outside points
/// under the strict policy.
SourceAssembly assemble_source_matrix(const Mesh& mesh, const EdgeTable& edges,
                                      const TemporalGrid& grid, const SourceField& source,
                                      const QuadratureRule& space_quad,
                                      const QuadratureRule& time_quad,
                                      OutsidePolicy policy = OutsidePolicy::zero,
                                      unsigned threads = 1);

/// `stgp-matrix 1` debug dumps.
std::string write_matrix(const SparseSymMatrix& a);
std::string write_matrix(const TriDiagMatrix& b);
std::string write_matrix(const DenseDofMatrix& c);

}  // namespace stgp
