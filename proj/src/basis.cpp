#include "stgp/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stgp/error.hpp"

namespace stgp {

TemporalGrid::TemporalGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2) throw ArgumentError("a temporal grid needs at least two nodes");
  for (std::size_t j = 0; j < times_.size(); ++j) {
    if (!std::isfinite(times_[j])) throw ArgumentError("time node " + std::to_string(j) + " is not finite");
    if (j > 0 && !(times_[j] > times_[j - 1])) {
      throw ArgumentError("time nodes must be strictly increasing (node " + std::to_string(j) + ")");
    }
  }
}

TemporalGrid TemporalGrid::uniform(double start, double stop, std::size_t count) {
  if (count < 2) throw ArgumentError("a temporal grid needs at least two nodes");
  std::vector<double> t(count);
  const double h = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) t[j] = start + static_cast<double>(j) * h;
  t.back() = stop;
  return TemporalGrid(std::move(t));
}

std::size_t TemporalGrid::interval_of(double t) const {
  if (!contains(t)) {
    throw DomainError("time " + std::to_string(t) + " outside grid span [" + std::to_string(start()) +
                      ", " + std::to_string(stop()) + "]");
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto k = static_cast<std::size_t>(it - times_.begin());
  return std::min(k == 0 ? 0 : k - 1, times_.size() - 2);
}

HatPair hat_pair(const TemporalGrid& grid, double t) {
  const std::size_t k = grid.interval_of(t);
  const double theta = (t - grid[k]) / (grid[k + 1] - grid[k]);
  return {k, 1.0 - theta, theta};
}

double hat_eval(const TemporalGrid& grid, std::size_t j, double t) {
  const auto [k, left, right] = hat_pair(grid, t);
  if (j == k) return left;
  if (j == k + 1) return right;
  return 0.0;
}

EdgeValues whitney_eval(const ElementGeometry& g, std::span<const LocalEdge> local,
                        const Barycentric& bary) {
  EdgeValues w{};
  const auto le = local_edges(g.dim);
  for (std::size_t k = 0; k < le.size(); ++k) {
    const auto [a, b] = le[k];
    const double s = local[k].sign;
    for (int c = 0; c < 3; ++c) {
      w[k][c] = s * (bary[a] * g.grad[b][c] - bary[b] * g.grad[a][c]);
    }
  }
  return w;
}

EdgeValues whitney_edge_eval(const Mesh& mesh, const EdgeTable& edges, std::size_t element,
                             const Barycentric& bary) {
  return whitney_eval(element_geometry(mesh, element), edges.local(element), bary);
}

}  // namespace stgp
