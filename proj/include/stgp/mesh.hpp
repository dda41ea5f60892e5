#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace stgp {

/// Coordinates or vector values. 2D data keeps the third component at zero.
using Point = std::array<double, 3>;
using Vector = std::array<double, 3>;

/// Node indices of one simplex; only the first dim+1 entries are used.
using Simplex = std::array<std::size_t, 4>;

/// Barycentric coordinates; only the first dim+1 entries are used.
using Barycentric = std::array<double, 4>;

struct BoundingBox {
  Point lower{};
  Point upper{};

  /// Length of the box diagonal.
  double diagonal() const;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Simplicial mesh (triangles in 2D, tetrahedra in 3D) with a piecewise
/// constant permeability per element.
///
/// The constructor validates connectivity, finiteness, element
/// non-degeneracy and mu positivity; a constructed Mesh is immutable.
class Mesh {
 public:
  Mesh(int dim, std::vector<Point> nodes, std::vector<Simplex> elements,
       std::vector<double> mu);

  int dim() const noexcept { return dim_; }
  int vertices_per_element() const noexcept { return dim_ + 1; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t element_count() const noexcept { return elements_.size(); }

  const Point& node(std::size_t i) const { return nodes_[i]; }
  const Simplex& element(std::size_t e) const { return elements_[e]; }
  double mu(std::size_t e) const { return mu_[e]; }

  std::span<const Point> nodes() const noexcept { return nodes_; }
  std::span<const Simplex> elements() const noexcept { return elements_; }
  std::span<const double> mu() const noexcept { return mu_; }

  const BoundingBox& bounds() const noexcept { return bounds_; }

  /// Same geometry with a different permeability map.
  Mesh with_mu(std::vector<double> mu) const;

  /// Same geometry with every permeability multiplied by `factor`.
  Mesh scaled_mu(double factor) const;

  friend bool operator==(const Mesh&, const Mesh&) = default;

 private:
  int dim_;
  std::vector<Point> nodes_;
  std::vector<Simplex> elements_;
  std::vector<double> mu_;
  BoundingBox bounds_;
};

/// Affine map data of one simplex.
struct ElementGeometry {
  Point origin{};                  ///< vertex 0
  std::array<Point, 3> inverse{};  ///< rows of J^{-1}, J = [v1-v0 ... vd-v0]
  std::array<Vector, 4> grad{};    ///< gradients of the barycentric functions
  double volume = 0.0;             ///< |det J| / d!
  double signed_det = 0.0;
  int dim = 0;

  /// Barycentric coordinates of x (unrestricted; may be negative).
  Barycentric barycentric(const Point& x) const;

  /// Physical point at barycentric coordinates `bary`.
  Point point(const Barycentric& bary, const std::array<Point, 4>& vertices) const;
};

/// Vertex coordinates of element e.
std::array<Point, 4> element_vertices(const Mesh& mesh, std::size_t e);

/// Throws MeshError when the element is degenerate.
ElementGeometry element_geometry(const Mesh& mesh, std::size_t e);

/// Local edge (pairs of local vertex numbers) of a simplex in `dim`.
std::span<const std::array<int, 2>> local_edges(int dim);

/// Number of edges of a single simplex: dim (dim + 1) / 2.
constexpr int local_edge_count(int dim) { return dim * (dim + 1) / 2; }

struct Edge {
  std::size_t a;  ///< lower global node index
  std::size_t b;  ///< higher global node index

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct LocalEdge {
  std::size_t index;  ///< global edge index
  int sign;           ///< +1 iff the local direction runs low -> high node
  friend bool operator==(const LocalEdge&, const LocalEdge&) = default;
};

/// Global edge enumeration. Edges are sorted lexicographically by
/// (a, b) with a < b; each element maps its local edges onto them.
class EdgeTable {
 public:
  explicit EdgeTable(const Mesh& mesh);

  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }

  int dim() const noexcept { return dim_; }
  int local_count() const noexcept { return local_edge_count(dim_); }

  /// Local edge map of element e (local_count() entries).
  std::span<const LocalEdge> local(std::size_t e) const;

  /// Global index of edge {a, b}, or size() when absent.
  std::size_t find(std::size_t a, std::size_t b) const;

  friend bool operator==(const EdgeTable&, const EdgeTable&) = default;

 private:
  int dim_;
  std::vector<Edge> edges_;
  std::vector<LocalEdge> local_;
};

inline EdgeTable build_edge_table(const Mesh& mesh) { return EdgeTable(mesh); }

enum class MeshKind { unit_square_tri, unit_cube_tet };

/// Structured mesh of the unit square (2 n^2 triangles) or the unit cube
/// (6 n^3 Kuhn tetrahedra), constant permeability `mu`.
Mesh generate_structured_mesh(MeshKind kind, std::size_t n, double mu);

}  // namespace stgp
