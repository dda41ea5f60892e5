#include <cmath>
#include <random>

#include "doctest.h"
#include "stgp/basis.hpp"
#include "stgp/error.hpp"
#include "stgp/quadrature.hpp"
#include "support.hpp"

using namespace stgp;

namespace {

// Independent 5-point Gauss-Legendre rule on [0, 1] (textbook nodes).
constexpr std::array<double, 5> kLineNodes{
    0.5 - 0.5 * 0.9061798459386640, 0.5 - 0.5 * 0.5384693101056831, 0.5,
    0.5 + 0.5 * 0.5384693101056831, 0.5 + 0.5 * 0.9061798459386640};
constexpr std::array<double, 5> kLineWeights{
    0.5 * 0.2369268850561891, 0.5 * 0.4786286704993665, 0.5 * 0.5688888888888889,
    0.5 * 0.4786286704993665, 0.5 * 0.2369268850561891};

double dot(const Vector& a, const Vector& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Barycentric random_bary(int dim, std::mt19937_64& rng) {
  std::exponential_distribution<double> ex(1.0);
  Barycentric b{};
  double s = 0.0;
  for (int v = 0; v <= dim; ++v) s += b[v] = ex(rng);
  for (int v = 0; v <= dim; ++v) b[v] /= s;
  return b;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("Whitney function of edge (0,1) at the reference barycenter") {
  const Mesh mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2, 0}}, {1.0});
  const EdgeTable edges(mesh);
  const auto w = whitney_edge_eval(mesh, edges, 0, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0});
  CHECK(w[0][0] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(w[0][1] == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(w[0][2] == 0.0);
}

TEST_CASE("edge circulations of Whitney functions are Kronecker deltas") {
  std::mt19937_64 rng(21);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const Mesh mesh = test::jittered(kind, 2, rng);
    const EdgeTable edges(mesh);
    const auto le = local_edges(mesh.dim());
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
      const auto verts = element_vertices(mesh, e);
      const auto map = edges.local(e);
      for (std::size_t k = 0; k < le.size(); ++k) {
        const int a = le[k][0], b = le[k][1];
        // Integrate along the global direction of edge k.
        Vector tangent{};
        for (int c = 0; c < 3; ++c) tangent[c] = map[k].sign * (verts[b][c] - verts[a][c]);
        std::array<double, 6> circ{};
        for (std::size_t q = 0; q < kLineNodes.size(); ++q) {
          Barycentric bary{};
          bary[a] = 1.0 - kLineNodes[q];
          bary[b] = kLineNodes[q];
          const auto w = whitney_edge_eval(mesh, edges, e, bary);
          for (std::size_t m = 0; m < le.size(); ++m) circ[m] += kLineWeights[q] * dot(w[m], tangent);
        }
        for (std::size_t m = 0; m < le.size(); ++m) {
          CHECK(circ[m] == doctest::Approx(m == k ? 1.0 : 0.0).epsilon(1e-13).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("Whitney space reproduces constant fields") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> normal;
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const Mesh mesh = test::jittered(kind, 3, rng);
    const EdgeTable edges(mesh);
    const Vector c{normal(rng), normal(rng), mesh.dim() == 3 ? normal(rng) : 0.0};
    std::vector<double> dofs(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& pa = mesh.node(edges.edge(i).a);
      const auto& pb = mesh.node(edges.edge(i).b);
      dofs[i] = c[0] * (pb[0] - pa[0]) + c[1] * (pb[1] - pa[1]) + c[2] * (pb[2] - pa[2]);
    }
    std::uniform_int_distribution<std::size_t> pick(0, mesh.element_count() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t e = pick(rng);
      const auto w = whitney_edge_eval(mesh, edges, e, random_bary(mesh.dim(), rng));
      const auto map = edges.local(e);
      Vector h{};
      for (std::size_t k = 0; k < map.size(); ++k)
        for (int d = 0; d < 3; ++d) h[d] += dofs[map[k].index] * w[k][d];
      for (int d = 0; d < 3; ++d) CHECK(std::abs(h[d] - c[d]) <= 1e-12 * (1.0 + std::abs(c[d])));
    }
  }
}

TEST_CASE("hat functions") {
  const auto g = TemporalGrid::uniform(0.0, 2.0, 3);
  CHECK(hat_eval(g, 0, 0.0) == 1.0);
  CHECK(hat_eval(g, 1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hat_eval(g, 2, 0.5) == 0.0);
  CHECK_THROWS_AS(hat_eval(g, 0, 2.5), DomainError);
  CHECK_THROWS_AS(hat_eval(g, 0, -1e-9), DomainError);

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    auto base = test::random_grid(2 + trial, rng);
    std::vector<double> t(base.times().begin(), base.times().end());
    for (auto& v : t) v *= 2.0 / base.stop();
    const TemporalGrid grid(t);
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) sum += hat_eval(grid, j, 0.73);
    CHECK(std::abs(sum - 1.0) <= 1e-15);
    const auto pair = hat_pair(grid, 0.73);
    CHECK(pair.left + pair.right == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pair.left == hat_eval(grid, pair.interval, 0.73));
  }
}

TEST_CASE("temporal grid validation") {
  CHECK_THROWS_AS(TemporalGrid({0.0}), ArgumentError);
  CHECK_THROWS_AS(TemporalGrid({0.0, 0.0}), ArgumentError);
  CHECK_THROWS_AS(TemporalGrid({0.0, 1.0, 0.5}), ArgumentError);
  const TemporalGrid g({0.0, 0.5, 2.0});
  CHECK(g.interval_of(0.5) == 1);
  CHECK(g.interval_of(2.0) == 1);
  CHECK(g.interval_of(0.25) == 0);
  CHECK_THROWS_AS(g.interval_of(3.0), DomainError);
}

TEST_CASE("quadrature examples") {
  const auto centroid = simplex_quadrature(2, 1);
  REQUIRE(centroid.size() == 1);
  CHECK(centroid.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(centroid.points[0][1] == doctest::Approx(1.0 / 3).epsilon(1e-15));

  const auto line = simplex_quadrature(1, 3);
  REQUIRE(line.size() == 2);
  CHECK(line.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(line.weights[1] == doctest::Approx(0.5).epsilon(1e-15));

  const auto q4 = simplex_quadrature(2, 4);
  double x2y2 = 0.0;
  for (std::size_t k = 0; k < q4.size(); ++k) {
    const double x = q4.points[k][1], y = q4.points[k][2];
    x2y2 += q4.weights[k] * x * x * y * y;
  }
  CHECK(x2y2 == doctest::Approx(1.0 / 180).epsilon(1e-14));

  CHECK_THROWS_AS(simplex_quadrature(2, 0), ArgumentError);
  CHECK_THROWS_AS(simplex_quadrature(2, kMaxQuadratureOrder + 1), ArgumentError);
  CHECK_THROWS_AS(simplex_quadrature(4, 2), ArgumentError);
}

TEST_CASE("quadrature weights are positive and sum to the reference measure") {
  for (int dim = 1; dim <= 3; ++dim) {
    const double measure = dim == 1 ? 1.0 : dim == 2 ? 0.5 : 1.0 / 6;
    for (int order = 1; order <= kMaxQuadratureOrder; ++order) {
      const auto rule = simplex_quadrature(dim, order);
      CHECK(rule.order >= order);
      double sum = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        CHECK(rule.weights[k] > 0.0);
        double bsum = 0.0;
        for (int v = 0; v <= dim; ++v) {
          CHECK(rule.points[k][v] >= -1e-15);
          bsum += rule.points[k][v];
        }
        CHECK(bsum == doctest::Approx(1.0).epsilon(1e-14));
        sum += rule.weights[k];
      }
      CHECK(std::abs(sum - measure) <= 1e-14);
    }
  }
}

TEST_CASE("quadrature integrates every monomial up to its order exactly") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (int order = 1; order <= kMaxQuadratureOrder; ++order) {
      const auto rule = simplex_quadrature(dim, order);
      for (int a = 0; a <= order; ++a)
        for (int b = 0; b + a <= order; ++b)
          for (int c = 0; c + b + a <= order; ++c) {
            if ((dim < 2 && b > 0) || (dim < 3 && c > 0)) continue;
            double q = 0.0;
            for (std::size_t k = 0; k < rule.size(); ++k) {
              const auto& p = rule.points[k];
              q += rule.weights[k] * std::pow(p[1], a) * std::pow(p[2], b) * std::pow(p[3], c);
            }
            INFO("dim ", dim, " order ", order, " monomial ", a, b, c);
            CHECK(std::abs(q - test::monomial_integral(dim, a, b, c)) <= 1e-14);
          }
    }
  }
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n = 1; n <= 8; ++n) {
    const auto rule = gauss_legendre(n);
    REQUIRE(rule.size() == static_cast<std::size_t>(n));
    for (std::size_t k = 1; k < rule.size(); ++k) CHECK(rule.coordinate(k - 1) < rule.coordinate(k));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double q = 0.0;
      for (std::size_t k = 0; k < rule.size(); ++k) q += rule.weights[k] * std::pow(rule.coordinate(k), p);
      CHECK(std::abs(q - 1.0 / (p + 1)) <= 1e-14);
    }
  }
}

}  // TEST_SUITE
