#pragma once

#include <vector>

#include "stgp/mesh.hpp"

namespace stgp {

/// Quadrature on the reference interval [0, 1], triangle or tetrahedron.
///
/// Points are barycentric coordinates (dim + 1 entries used); for
/// intervals the reference coordinate is `points[k][1]`. Weights sum to
/// the reference measure: 1, 1/2 or 1/6.
struct QuadratureRule {
  int dim = 0;
  int order = 0;  ///< polynomials up to this total degree are exact
  std::vector<Barycentric> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  double coordinate(std::size_t k) const { return points[k][1]; }
};

inline constexpr int kMaxQuadratureOrder = 6;

/// Rule of at least `order` for dim 1, 2 or 3; order in [1, 6].
QuadratureRule simplex_quadrature(int dim, int order);

/// n-point Gauss-Legendre rule on [0, 1] (exact to degree 2n - 1).
QuadratureRule gauss_legendre(int n);

}  // namespace stgp
