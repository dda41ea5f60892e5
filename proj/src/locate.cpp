#include "stgp/locate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stgp {

namespace {

constexpr std::size_t kMaxBinsPerElement = 4;

double norm(const Vector& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

PointLocator::PointLocator(const Mesh& mesh) : dim_(mesh.dim()) {
  const std::size_t ne = mesh.element_count();
  geometry_.reserve(ne);
  grad_norm_.resize(ne);
  double diameter_sum = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    geometry_.push_back(element_geometry(mesh, e));
    for (int v = 0; v <= dim_; ++v) grad_norm_[e][v] = norm(geometry_[e].grad[v]);
    const auto verts = element_vertices(mesh, e);
    double diam = 0.0;
    for (const auto& [a, b] : local_edges(dim_)) {
      Vector d{};
      for (int k = 0; k < 3; ++k) d[k] = verts[b][k] - verts[a][k];
      diam = std::max(diam, norm(d));
    }
    diameter_sum += diam;
  }

  const auto& box = mesh.bounds();
  snap_ = kSnapFactor * box.diagonal();
  origin_ = box.lower;
  const double h = ne > 0 ? diameter_sum / static_cast<double>(ne) : 1.0;
  const std::size_t max_bins = std::max<std::size_t>(1, kMaxBinsPerElement * ne);
  double cell = h;
  // Grow the bin size until the grid respects the bin budget.
  for (;;) {
    std::size_t total = 1;
    for (int k = 0; k < dim_; ++k) {
      const double extent = box.upper[k] - box.lower[k];
      counts_[k] = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(extent / cell)));
      total *= counts_[k];
    }
    if (total <= max_bins) break;
    cell *= 1.5;
  }
  for (int k = 0; k < dim_; ++k) {
    const double extent = box.upper[k] - box.lower[k];
    width_[k] = extent > 0.0 ? extent / static_cast<double>(counts_[k]) : 1.0;
  }

  // Two passes: count, then fill. Elements are visited in ascending order,
  // so each bin's list is sorted.
  const std::size_t nbins = counts_[0] * counts_[1] * counts_[2];
  std::vector<std::array<std::size_t, 3>> lo(ne), hi(ne);
  std::vector<std::size_t> fill(nbins + 1, 0);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto verts = element_vertices(mesh, e);
    for (int k = 0; k < 3; ++k) {
      if (k >= dim_) {
        lo[e][k] = hi[e][k] = 0;
        continue;
      }
      double mn = verts[0][k], mx = verts[0][k];
      for (int v = 1; v <= dim_; ++v) {
        mn = std::min(mn, verts[v][k]);
        mx = std::max(mx, verts[v][k]);
      }
      const auto clamp_bin = [&](double c) {
        const double f = std::floor((c - origin_[k]) / width_[k]);
        if (f < 0.0) return std::size_t{0};
        return std::min(counts_[k] - 1, static_cast<std::size_t>(f));
      };
      lo[e][k] = clamp_bin(mn - snap_);
      hi[e][k] = clamp_bin(mx + snap_);
    }
    for (std::size_t z = lo[e][2]; z <= hi[e][2]; ++z)
      for (std::size_t y = lo[e][1]; y <= hi[e][1]; ++y)
        for (std::size_t x = lo[e][0]; x <= hi[e][0]; ++x) ++fill[bin_of({x, y, z}) + 1];
  }
  for (std::size_t b = 0; b < nbins; ++b) fill[b + 1] += fill[b];
  bin_start_ = fill;
  bin_items_.resize(fill[nbins]);
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t z = lo[e][2]; z <= hi[e][2]; ++z)
      for (std::size_t y = lo[e][1]; y <= hi[e][1]; ++y)
        for (std::size_t x = lo[e][0]; x <= hi[e][0]; ++x) bin_items_[fill[bin_of({x, y, z})]++] = e;
  }
}

std::size_t PointLocator::bin_of(const std::array<std::size_t, 3>& c) const {
  return (c[2] * counts_[1] + c[1]) * counts_[0] + c[0];
}

bool PointLocator::bin_coords(const Point& x, std::array<std::size_t, 3>& c) const {
  c = {0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    const double rel = x[k] - origin_[k];
    const double extent = width_[k] * static_cast<double>(counts_[k]);
    if (rel < -snap_ || rel > extent + snap_ || !std::isfinite(rel)) return false;
    const double f = std::floor(rel / width_[k]);
    c[k] = f < 0.0 ? 0 : std::min(counts_[k] - 1, static_cast<std::size_t>(f));
  }
  return true;
}

double PointLocator::facet_distance(std::size_t e, const Barycentric& b) const {
  double d = 0.0;
  for (int v = 0; v <= dim_; ++v) {
    if (b[v] < 0.0) d = std::max(d, -b[v] / grad_norm_[e][v]);
  }
  return d;
}

LocationResult PointLocator::locate(const Point& x, double tol) const {
  LocationResult best;
  double best_distance = std::numeric_limits<double>::infinity();

  std::array<std::size_t, 3> c{};
  if (bin_coords(x, c)) {
    const std::size_t bin = bin_of(c);
    for (std::size_t p = bin_start_[bin]; p < bin_start_[bin + 1]; ++p) {
      const std::size_t e = bin_items_[p];
      const Barycentric b = geometry_[e].barycentric(x);
      double lowest = b[0];
      for (int v = 1; v <= dim_; ++v) lowest = std::min(lowest, b[v]);
      if (lowest >= -tol) return {e, b, LocationResult::Status::inside};
      const double d = facet_distance(e, b);
      if (d <= snap_ && d < best_distance) {
        best_distance = d;
        best = {e, b, LocationResult::Status::snapped};
      }
    }
    if (best.status == LocationResult::Status::snapped) {
      double sum = 0.0;
      for (int v = 0; v <= dim_; ++v) {
        best.barycentric[v] = std::max(0.0, best.barycentric[v]);
        sum += best.barycentric[v];
      }
      for (int v = 0; v <= dim_; ++v) best.barycentric[v] /= sum;
      return best;
    }
  }

  // Outside: nearest element by facet-plane distance, by linear scan.
  for (std::size_t e = 0; e < geometry_.size(); ++e) {
    const Barycentric b = geometry_[e].barycentric(x);
    const double d = facet_distance(e, b);
    if (d < best_distance) {
      best_distance = d;
      best = {e, b, LocationResult::Status::outside};
    }
  }
  best.status = LocationResult::Status::outside;
  return best;
}

}  // namespace stgp
