#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "stgp/mesh.hpp"

namespace stgp {

/// Barycentric slack accepted as "inside" by default.
inline constexpr double kDefaultLocateTol = 1e-12;

/// Snap distance as a fraction of the bounding-box diagonal.
inline constexpr double kSnapFactor = 1e-8;

struct LocationResult {
  enum class Status { inside, snapped, outside };

  std::size_t element = 0;
  Barycentric barycentric{};
  Status status = Status::outside;

  bool found() const noexcept { return status != Status::outside; }
};

/// Point location over a uniform grid of bins sized to the mean element
/// diameter. Each bin lists, in ascending order, the elements whose
/// bounding box (padded by the snap distance) overlaps it.
///
/// The locator copies the per-element affine data it needs, so it does
/// not keep a reference to the mesh.
class PointLocator {
 public:
  explicit PointLocator(const Mesh& mesh);

  /// Containing element with the lowest index, if any; otherwise the
  /// element within snap distance (clamped barycentrics), otherwise the
  /// nearest element with status outside.
  LocationResult locate(const Point& x, double tol = kDefaultLocateTol) const;

  double snap_distance() const noexcept { return snap_; }
  const ElementGeometry& geometry(std::size_t e) const { return geometry_[e]; }
  std::array<std::size_t, 3> bin_counts() const noexcept { return counts_; }

 private:
  std::size_t bin_of(const std::array<std::size_t, 3>& c) const;
  bool bin_coords(const Point& x, std::array<std::size_t, 3>& c) const;
  /// Largest distance from x to a violated facet plane (0 when inside).
  double facet_distance(std::size_t e, const Barycentric& b) const;

  int dim_;
  std::vector<ElementGeometry> geometry_;
  std::vector<std::array<double, 4>> grad_norm_;
  Point origin_{};
  std::array<double, 3> width_{1.0, 1.0, 1.0};
  std::array<std::size_t, 3> counts_{1, 1, 1};
  std::vector<std::size_t> bin_start_;
  std::vector<std::size_t> bin_items_;
  double snap_ = 0.0;
};

inline LocationResult locate_point(const PointLocator& accel, const Point& x,
                                   double tol = kDefaultLocateTol) {
  return accel.locate(x, tol);
}

}  // namespace stgp
