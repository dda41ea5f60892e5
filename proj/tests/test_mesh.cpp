#include <set>
#include <utility>

#include "doctest.h"
#include "stgp/error.hpp"
#include "stgp/locate.hpp"
#include "stgp/mesh.hpp"
#include "stgp/mesh_io.hpp"
#include "support.hpp"

using namespace stgp;

namespace {

const char* const kTwoTriangles =
    "stgp-mesh 1\n"
    "dim 2\n"
    "nodes 4\n"
    "0 0 0\n"
    "1 1 0\n"
    "2 1 1\n"
    "3 0 1\n"
    "elements 2\n"
    "0 0 1 2\n"
    "1 0 2 3\n"
    "mu 2\n"
    "0 1\n"
    "1 2.5\n";

std::size_t brute_force_edge_count(const Mesh& mesh) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& el : mesh.elements()) {
    for (int i = 0; i <= mesh.dim(); ++i)
      for (int j = i + 1; j <= mesh.dim(); ++j)
        pairs.insert({std::min(el[i], el[j]), std::max(el[i], el[j])});
  }
  return pairs.size();
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("edge table of a single reference triangle") {
  const Mesh mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2, 0}}, {1.0});
  const EdgeTable edges(mesh);
  REQUIRE(edges.size() == 3);
  CHECK(edges.edge(0) == Edge{0, 1});
  CHECK(edges.edge(1) == Edge{0, 2});
  CHECK(edges.edge(2) == Edge{1, 2});
  for (const auto& le : edges.local(0)) CHECK(le.sign == 1);
}

TEST_CASE("two triangles sharing an edge have five edges") {
  const Mesh mesh = read_mesh(kTwoTriangles);
  const EdgeTable edges(mesh);
  CHECK(edges.size() == 5);
  const std::size_t shared = edges.find(0, 2);
  REQUIRE(shared < edges.size());
  int uses = 0;
  for (std::size_t e = 0; e < 2; ++e)
    for (const auto& le : edges.local(e)) uses += le.index == shared;
  CHECK(uses == 2);
}

TEST_CASE("structured 2x2 square has 16 edges") {
  const Mesh mesh = generate_structured_mesh(MeshKind::unit_square_tri, 2, 1.0);
  CHECK(mesh.element_count() == 8);
  CHECK(mesh.node_count() == 9);
  CHECK(brute_force_edge_count(mesh) == 16);
  CHECK(EdgeTable(mesh).size() == 16);
}

TEST_CASE("edge count matches distinct node pairs on 3D meshes") {
  for (std::size_t n : {1, 2, 3}) {
    const Mesh mesh = generate_structured_mesh(MeshKind::unit_cube_tet, n, 1.0);
    CHECK(EdgeTable(mesh).size() == brute_force_edge_count(mesh));
  }
  // 12 cube edges, 6 face diagonals, 1 body diagonal.
  CHECK(EdgeTable(generate_structured_mesh(MeshKind::unit_cube_tet, 1, 1.0)).size() == 19);
}

TEST_CASE("edge table is deterministic, sorted and orientation consistent") {
  std::mt19937_64 rng(7);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const Mesh mesh = test::jittered(kind, 3, rng);
    const EdgeTable first(mesh);
    const EdgeTable second(mesh);
    CHECK(first == second);
    for (std::size_t i = 1; i < first.size(); ++i) CHECK(first.edge(i - 1) < first.edge(i));

    const auto le = local_edges(mesh.dim());
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
      const auto& el = mesh.element(e);
      const auto map = first.local(e);
      for (std::size_t k = 0; k < map.size(); ++k) {
        const Edge& g = first.edge(map[k].index);
        const std::size_t from = el[le[k][0]];
        const std::size_t to = el[le[k][1]];
        // sign * local direction must equal the global low -> high direction.
        if (map[k].sign > 0) {
          CHECK((from == g.a && to == g.b));
        } else {
          CHECK((from == g.b && to == g.a));
        }
      }
    }
  }
}

TEST_CASE("structured mesh sizes") {
  auto m1 = generate_structured_mesh(MeshKind::unit_square_tri, 1, 1.0);
  CHECK(m1.element_count() == 2);
  CHECK(m1.node_count() == 4);
  auto m3 = generate_structured_mesh(MeshKind::unit_cube_tet, 1, 1.0);
  CHECK(m3.element_count() == 6);
  CHECK(m3.node_count() == 8);
  auto m4 = generate_structured_mesh(MeshKind::unit_cube_tet, 3, 2.0);
  CHECK(m4.element_count() == 6 * 27);
  CHECK(m4.node_count() == 64);
  double volume = 0.0;
  for (std::size_t e = 0; e < m4.element_count(); ++e) volume += element_geometry(m4, e).volume;
  CHECK(volume == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(generate_structured_mesh(MeshKind::unit_square_tri, 0, 1.0), ArgumentError);
}

TEST_CASE("invalid meshes are rejected") {
  SUBCASE("degenerate element names its index") {
    try {
      Mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 0, 0}}, {{0, 1, 2, 0}, {0, 1, 3, 0}}, {1.0, 1.0});
      FAIL("expected rejection");
    } catch (const MeshError& e) {
      CHECK(e.element() == 1);
    }
  }
  SUBCASE("missing mu") {
    CHECK_THROWS_AS(Mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2, 0}}, {}), MeshError);
  }
  SUBCASE("non-positive mu") {
    CHECK_THROWS_AS(Mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2, 0}}, {0.0}), MeshError);
  }
  SUBCASE("node index out of range") {
    CHECK_THROWS_AS(Mesh(2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 9, 0}}, {1.0}), MeshError);
  }
}

TEST_CASE("locate_point basic cases") {
  const Mesh mesh = generate_structured_mesh(MeshKind::unit_square_tri, 2, 1.0);
  const PointLocator accel(mesh);

  const auto in = locate_point(accel, {0.25, 0.25, 0});
  CHECK(in.status == LocationResult::Status::inside);
  CHECK(in.barycentric[0] + in.barycentric[1] + in.barycentric[2] == doctest::Approx(1.0).epsilon(1e-12));

  // (0.25, 0.25) lies on the diagonal shared by elements 0 and 1.
  const auto shared = locate_point(accel, {0.25, 0.25, 0});
  CHECK(shared.element == 0);
  const auto mid = locate_point(accel, {0.5, 0.25, 0});  // edge between elements 0 and 3
  CHECK(mid.status == LocationResult::Status::inside);
  CHECK(mid.element == 0);

  const auto out = locate_point(accel, {2, 2, 0});
  CHECK(out.status == LocationResult::Status::outside);
  CHECK(out.element < mesh.element_count());
}

TEST_CASE("points marginally outside are snapped") {
  const Mesh mesh = generate_structured_mesh(MeshKind::unit_square_tri, 3, 1.0);
  const PointLocator accel(mesh);
  const auto r = accel.locate({1.0 + 1e-10, 0.4, 0});
  REQUIRE(r.status == LocationResult::Status::snapped);
  double sum = 0.0;
  for (int v = 0; v < 3; ++v) {
    CHECK(r.barycentric[v] >= 0.0);
    sum += r.barycentric[v];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(accel.locate({1.0 + 1e-6, 0.4, 0}).status == LocationResult::Status::outside);
}

TEST_CASE("centroid of every element locates to that element") {
  std::mt19937_64 rng(11);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const Mesh mesh = test::jittered(kind, kind == MeshKind::unit_square_tri ? 6 : 3, rng);
    const PointLocator accel(mesh);
    const int nv = mesh.vertices_per_element();
    for (std::size_t e = 0; e < mesh.element_count(); ++e) {
      const auto v = element_vertices(mesh, e);
      Point c{};
      for (int i = 0; i < nv; ++i)
        for (int k = 0; k < 3; ++k) c[k] += v[i][k] / nv;
      const auto r = accel.locate(c);
      CHECK(r.status == LocationResult::Status::inside);
      CHECK(r.element == e);
    }
  }
}

TEST_CASE("bin search agrees with a linear scan") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const Mesh mesh = test::jittered(kind, 4, rng);
    const PointLocator accel(mesh);
    for (int trial = 0; trial < 300; ++trial) {
      Point x{u(rng), u(rng), mesh.dim() == 3 ? u(rng) : 0.0};
      std::size_t first = mesh.element_count();
      for (std::size_t e = 0; e < mesh.element_count() && first == mesh.element_count(); ++e) {
        const auto b = element_geometry(mesh, e).barycentric(x);
        double lo = b[0];
        for (int v = 1; v <= mesh.dim(); ++v) lo = std::min(lo, b[v]);
        if (lo >= -kDefaultLocateTol) first = e;
      }
      const auto r = accel.locate(x);
      if (first < mesh.element_count()) {
        CHECK(r.status == LocationResult::Status::inside);
        CHECK(r.element == first);
        double sum = 0.0;
        for (int v = 0; v <= mesh.dim(); ++v) sum += r.barycentric[v];
        CHECK(std::abs(sum - 1.0) <= 1e-12);
      } else {
        CHECK(r.status != LocationResult::Status::inside);
      }
    }
  }
}

TEST_CASE("mesh text format") {
  SUBCASE("canonical file reads and writes back byte-identically") {
    const Mesh mesh = read_mesh(kTwoTriangles);
    CHECK(mesh.node_count() == 4);
    CHECK(mesh.element_count() == 2);
    CHECK(mesh.mu(1) == 2.5);
    CHECK(write_mesh(mesh) == kTwoTriangles);
  }
  SUBCASE("comments and blank lines are ignored") {
    const std::string text =
        "# generated\nstgp-mesh 1\n\ndim 2 # planar\nnodes 3\n0 0 0\n1 1 0\n2 0 1\n"
        "elements 1\n0 0 1 2\nmu 1\n0 4e-7\n";
    CHECK(read_mesh(text).mu(0) == 4e-7);
  }
  SUBCASE("element referencing node 99 names the line") {
    std::string text = kTwoTriangles;
    text.replace(text.find("1 0 2 3"), 7, "1 0 2 99");
    try {
      read_mesh(text);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 10);
      CHECK(std::string(e.what()).find("99") != std::string::npos);
    }
  }
  SUBCASE("missing mu entry") {
    std::string text = kTwoTriangles;
    text = text.substr(0, text.rfind("1 2.5\n"));
    CHECK_THROWS_AS(read_mesh(text), ParseError);
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(read_mesh("stgp-mesh 2\ndim 2\n"), ParseError);
    try {
      read_mesh("stgp-mesh 1\ndim 4\n");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("read(write(mesh)) is the identity on mesh values") {
    std::mt19937_64 rng(17);
    for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
      const Mesh mesh = test::jittered(kind, 3, rng);
      CHECK(read_mesh(write_mesh(mesh)) == mesh);
    }
  }
}

}  // TEST_SUITE
