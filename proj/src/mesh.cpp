#include "stgp/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "stgp/error.hpp"

namespace stgp {

namespace {

constexpr std::array<std::array<int, 2>, 3> kEdges2{{{0, 1}, {0, 2}, {1, 2}}};
constexpr std::array<std::array<int, 2>, 6> kEdges3{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr double kDegenerateFactor = 1e-14;

double determinant(const std::array<Point, 3>& j, int dim) {
  if (dim == 2) return j[0][0] * j[1][1] - j[0][1] * j[1][0];
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

BoundingBox compute_bounds(const std::vector<Point>& nodes) {
  BoundingBox box;
  if (nodes.empty()) return box;
  box.lower = nodes.front();
  box.upper = nodes.front();
  for (const auto& p : nodes) {
    for (int k = 0; k < 3; ++k) {
      box.lower[k] = std::min(box.lower[k], p[k]);
      box.upper[k] = std::max(box.upper[k], p[k]);
    }
  }
  return box;
}

}  // namespace

double BoundingBox::diagonal() const {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += (upper[k] - lower[k]) * (upper[k] - lower[k]);
  return std::sqrt(s);
}

Mesh::Mesh(int dim, std::vector<Point> nodes, std::vector<Simplex> elements,
           std::vector<double> mu)
    : dim_(dim), nodes_(std::move(nodes)), elements_(std::move(elements)), mu_(std::move(mu)) {
  if (dim_ != 2 && dim_ != 3) throw MeshError("mesh dimension must be 2 or 3");
  if (mu_.size() != elements_.size()) {
    throw MeshError("expected " + std::to_string(elements_.size()) + " mu entries, got " +
                    std::to_string(mu_.size()));
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    auto& p = nodes_[i];
    for (int k = 0; k < dim_; ++k) {
      if (!std::isfinite(p[k])) throw MeshError("node " + std::to_string(i) + " is not finite");
    }
    for (int k = dim_; k < 3; ++k) p[k] = 0.0;
  }
  bounds_ = compute_bounds(nodes_);
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    auto& el = elements_[e];
    for (int v = 0; v <= dim_; ++v) {
      if (el[v] >= nodes_.size()) {
        throw MeshError("element " + std::to_string(e) + " references missing node " +
                            std::to_string(el[v]),
                        e);
      }
    }
    for (int v = dim_ + 1; v < 4; ++v) el[v] = 0;
    if (!(mu_[e] > 0.0) || !std::isfinite(mu_[e])) {
      throw MeshError("element " + std::to_string(e) + " has non-positive mu", e);
    }
    element_geometry(*this, e);
  }
}

Mesh Mesh::with_mu(std::vector<double> mu) const {
  return Mesh(dim_, nodes_, elements_, std::move(mu));
}

Mesh Mesh::scaled_mu(double factor) const {
  std::vector<double> mu = mu_;
  for (auto& m : mu) m *= factor;
  return with_mu(std::move(mu));
}

Barycentric ElementGeometry::barycentric(const Point& x) const {
  Barycentric b{};
  double rest = 1.0;
  for (int r = 0; r < dim; ++r) {
    double s = 0.0;
    for (int c = 0; c < dim; ++c) s += inverse[r][c] * (x[c] - origin[c]);
    b[r + 1] = s;
    rest -= s;
  }
  b[0] = rest;
  return b;
}

Point ElementGeometry::point(const Barycentric& bary,
                             const std::array<Point, 4>& vertices) const {
  Point x{};
  for (int v = 0; v <= dim; ++v) {
    for (int k = 0; k < 3; ++k) x[k] += bary[v] * vertices[v][k];
  }
  return x;
}

std::array<Point, 4> element_vertices(const Mesh& mesh, std::size_t e) {
  std::array<Point, 4> v{};
  const auto& el = mesh.element(e);
  for (int i = 0; i <= mesh.dim(); ++i) v[i] = mesh.node(el[i]);
  return v;
}

ElementGeometry element_geometry(const Mesh& mesh, std::size_t e) {
  const int d = mesh.dim();
  const auto v = element_vertices(mesh, e);
  ElementGeometry g;
  g.dim = d;
  g.origin = v[0];

  // Columns of J are v_k - v_0; stored here as rows of J^T.
  std::array<Point, 3> jt{};
  for (int k = 0; k < d; ++k) {
    for (int c = 0; c < d; ++c) jt[k][c] = v[k + 1][c] - v[0][c];
  }
  std::array<Point, 3> jac{};
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) jac[r][c] = jt[c][r];
  }
  const double det = determinant(jac, d);
  const double scale = mesh.bounds().diagonal();
  if (!(std::abs(det) > kDegenerateFactor * std::pow(scale, d))) {
    throw MeshError("element " + std::to_string(e) + " is degenerate", e);
  }
  g.signed_det = det;
  g.volume = std::abs(det) / (d == 2 ? 2.0 : 6.0);

  // Inverse by cofactors.
  if (d == 2) {
    g.inverse[0] = {jac[1][1] / det, -jac[0][1] / det, 0.0};
    g.inverse[1] = {-jac[1][0] / det, jac[0][0] / det, 0.0};
  } else {
    const auto& m = jac;
    g.inverse[0] = {(m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det,
                    (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det,
                    (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det};
    g.inverse[1] = {(m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det,
                    (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det,
                    (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det};
    g.inverse[2] = {(m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det,
                    (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det,
                    (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det};
  }
  // grad lambda_k (k >= 1) is row k-1 of J^{-1}; grad lambda_0 closes the sum.
  Vector sum{};
  for (int k = 1; k <= d; ++k) {
    g.grad[k] = g.inverse[k - 1];
    for (int c = 0; c < 3; ++c) sum[c] += g.grad[k][c];
  }
  for (int c = 0; c < 3; ++c) g.grad[0][c] = -sum[c];
  return g;
}

std::span<const std::array<int, 2>> local_edges(int dim) {
  if (dim == 2) return kEdges2;
  return kEdges3;
}

EdgeTable::EdgeTable(const Mesh& mesh) : dim_(mesh.dim()) {
  const auto le = local_edges(dim_);
  const int nl = local_count();
  std::vector<Edge> all;
  all.reserve(mesh.element_count() * nl);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    for (const auto& [i, j] : le) {
      all.push_back({std::min(el[i], el[j]), std::max(el[i], el[j])});
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  edges_ = std::move(all);

  local_.resize(mesh.element_count() * nl);
  for (std::size_t e = 0; e < mesh.element_count(); ++e) {
    const auto& el = mesh.element(e);
    for (int k = 0; k < nl; ++k) {
      const std::size_t na = el[le[k][0]];
      const std::size_t nb = el[le[k][1]];
      local_[e * nl + k] = {find(na, nb), na < nb ? 1 : -1};
    }
  }
}

std::span<const LocalEdge> EdgeTable::local(std::size_t e) const {
  const auto nl = static_cast<std::size_t>(local_count());
  return std::span<const LocalEdge>(local_).subspan(e * nl, nl);
}

std::size_t EdgeTable::find(std::size_t a, std::size_t b) const {
  const Edge key{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

Mesh generate_structured_mesh(MeshKind kind, std::size_t n, double mu) {
  if (n == 0) throw ArgumentError("structured mesh needs at least one subdivision");
  const double h = 1.0 / static_cast<double>(n);
  std::vector<Point> nodes;
  std::vector<Simplex> elements;
  if (kind == MeshKind::unit_square_tri) {
    const auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n; ++i) nodes.push_back({i * h, j * h, 0.0});
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        elements.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), 0});
        elements.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1), 0});
      }
    }
    return Mesh(2, std::move(nodes), std::move(elements),
                std::vector<double>(2 * n * n, mu));
  }

  const auto id = [n](std::size_t i, std::size_t j, std::size_t k) {
    return (k * (n + 1) + j) * (n + 1) + i;
  };
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n; ++i) nodes.push_back({i * h, j * h, k * h});
    }
  }
  // Kuhn split: one tetrahedron per monotone lattice path from 000 to 111.
  constexpr std::array<std::array<int, 3>, 6> kPaths{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& path : kPaths) {
          std::array<std::size_t, 3> c{i, j, k};
          Simplex s{};
          s[0] = id(c[0], c[1], c[2]);
          for (int step = 0; step < 3; ++step) {
            ++c[path[step]];
            s[step + 1] = id(c[0], c[1], c[2]);
          }
          elements.push_back(s);
        }
      }
    }
  }
  return Mesh(3, std::move(nodes), std::move(elements), std::vector<double>(6 * n * n * n, mu));
}

}  // namespace stgp
