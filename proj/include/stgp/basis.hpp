#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "stgp/mesh.hpp"

namespace stgp {

/// Strictly increasing time nodes t_0 < ... < t_{N-1}, N >= 2. Node j
/// carries the piecewise-linear hat function equal to 1 at t_j.
class TemporalGrid {
 public:
  explicit TemporalGrid(std::vector<double> times);

  /// `count` equally spaced nodes from `start` to `stop` inclusive.
  static TemporalGrid uniform(double start, double stop, std::size_t count);

  std::size_t size() const noexcept { return times_.size(); }
  double operator[](std::size_t j) const { return times_[j]; }
  std::span<const double> times() const noexcept { return times_; }
  double start() const noexcept { return times_.front(); }
  double stop() const noexcept { return times_.back(); }

  bool contains(double t) const noexcept { return t >= start() && t <= stop(); }

  /// Interval k with t_k <= t <= t_{k+1}; the last interval for t = stop().
  /// Throws DomainError outside the span.
  std::size_t interval_of(double t) const;

  friend bool operator==(const TemporalGrid&, const TemporalGrid&) = default;

 private:
  std::vector<double> times_;
};

/// Hat function of node j at time t; throws DomainError for t outside the span.
double hat_eval(const TemporalGrid& grid, std::size_t j, double t);

/// The two hats that may be nonzero at t: (interval k, weight of node k,
/// weight of node k+1).
struct HatPair {
  std::size_t interval;
  double left;
  double right;
};
HatPair hat_pair(const TemporalGrid& grid, double t);

/// Signed lowest-order Whitney functions of one element,
/// w_ab = lambda_a grad(lambda_b) - lambda_b grad(lambda_a), times the
/// orientation sign of each local edge.
using EdgeValues = std::array<Vector, 6>;

EdgeValues whitney_eval(const ElementGeometry& geometry, std::span<const LocalEdge> local,
                        const Barycentric& bary);

EdgeValues whitney_edge_eval(const Mesh& mesh, const EdgeTable& edges, std::size_t element,
                             const Barycentric& bary);

}  // namespace stgp
