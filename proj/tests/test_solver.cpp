#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "stgp/assembly.hpp"
#include "stgp/error.hpp"
#include "stgp/solver.hpp"
#include "support.hpp"

using namespace stgp;

namespace {

struct Instance {
  SparseSymMatrix a;
  TriDiagMatrix b;
};

Instance make_instance(MeshKind kind, std::size_t n, std::size_t steps, std::mt19937_64& rng) {
  const Mesh mesh = test::jittered(kind, n, rng);
  const EdgeTable edges(mesh);
  return {assemble_spatial_mass(mesh, edges, simplex_quadrature(mesh.dim(), 2)),
          assemble_temporal_gram(test::random_grid(steps, rng))};
}

SparseSymMatrix identity_sparse(std::size_t n) {
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 1.0;
  return SparseSymMatrix::from_dense(d, n);
}

std::vector<double> dense(const TriDiagMatrix& b) {
  const std::size_t n = b.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = b(i, j);
  return d;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("apply_operator matches the explicit Kronecker product") {
  std::mt19937_64 rng(79);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const auto inst = make_instance(kind, 1, 5, rng);
    const std::size_t m = inst.a.size(), n = inst.b.size();
    const auto k = test::kron_bt_a(test::dense(inst.a), m, dense(inst.b), n);
    const auto x = test::random_dofs(m, n, rng);
    const auto y = apply_operator(inst.a, inst.b, x);
    const std::size_t s = m * n;
    for (std::size_t r = 0; r < s; ++r) {
      double v = 0.0;
      for (std::size_t c = 0; c < s; ++c) v += k[r * s + c] * x.data()[c];
      CHECK(y.data()[r] == doctest::Approx(v).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("apply_operator trivial cases") {
  std::mt19937_64 rng(83);
  const auto x = test::random_dofs(4, 3, rng);
  const TriDiagMatrix eye_b({1.0, 1.0, 1.0}, {0.0, 0.0});
  CHECK(apply_operator(identity_sparse(4), eye_b, x) == x);
  const auto inst = make_instance(MeshKind::unit_square_tri, 2, 3, rng);
  const auto zero = apply_operator(inst.a, inst.b, DenseDofMatrix(inst.a.size(), 3));
  for (double v : zero.data()) CHECK(v == 0.0);
  CHECK_THROWS_AS(apply_operator(inst.a, inst.b, DenseDofMatrix(inst.a.size(), 4)), ArgumentError);
  CHECK_THROWS_AS(apply_operator(inst.a, inst.b, DenseDofMatrix(inst.a.size() + 1, 3)), ArgumentError);
}

TEST_CASE("the Kronecker operator is symmetric and positive") {
  std::mt19937_64 rng(89);
  const auto inst = make_instance(MeshKind::unit_cube_tet, 1, 6, rng);
  const std::size_t m = inst.a.size(), n = inst.b.size();
  for (int trial = 0; trial < 10; ++trial) {
    const auto x1 = test::random_dofs(m, n, rng);
    const auto x2 = test::random_dofs(m, n, rng);
    const double lhs = frobenius_dot(x1, apply_operator(inst.a, inst.b, x2));
    const double rhs = frobenius_dot(apply_operator(inst.a, inst.b, x1), x2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(frobenius_dot(x1, apply_operator(inst.a, inst.b, x1)) > 0.0);
  }
  const KroneckerOperator op(inst.a, inst.b);
  const auto diag = op.diagonal();
  const auto ad = inst.a.diagonal();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) CHECK(diag(i, j) == ad[i] * inst.b(j, j));
}

TEST_CASE("CG recovers a manufactured solution") {
  std::mt19937_64 rng(97);
  for (auto kind : {MeshKind::unit_square_tri, MeshKind::unit_cube_tet}) {
    const auto inst = make_instance(kind, 3, 7, rng);
    const auto xstar = test::random_dofs(inst.a.size(), 7, rng);
    const auto c = apply_operator(inst.a, inst.b, xstar);
    for (auto pre : {Preconditioner::none, Preconditioner::jacobi}) {
      SolverConfig cfg;
      cfg.preconditioner = pre;
      const auto r = cg_solve(inst.a, inst.b, c, cfg);
      CHECK(r.report.converged);
      CHECK(r.report.preconditioner == pre);
      CHECK(r.report.relative_residual <= cfg.tolerance);
      CHECK(relative_difference(r.x, xstar) <= 1e-8);
      // The reported residual is the true one.
      const auto res = apply_operator(inst.a, inst.b, r.x);
      CHECK(relative_difference(res, c) == doctest::Approx(r.report.relative_residual).epsilon(1e-3));
    }
  }
}

TEST_CASE("CG with a zero right-hand side") {
  std::mt19937_64 rng(101);
  const auto inst = make_instance(MeshKind::unit_square_tri, 2, 4, rng);
  const auto r = cg_solve(inst.a, inst.b, DenseDofMatrix(inst.a.size(), 4));
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 0);
  for (double v : r.x.data()) CHECK(v == 0.0);
}

TEST_CASE("CG warm start and iteration limit") {
  std::mt19937_64 rng(103);
  const auto inst = make_instance(MeshKind::unit_square_tri, 4, 9, rng);
  const auto xstar = test::random_dofs(inst.a.size(), 9, rng);
  const auto c = apply_operator(inst.a, inst.b, xstar);

  SolverConfig warm;
  warm.initial_guess = xstar;
  const auto w = cg_solve(inst.a, inst.b, c, warm);
  CHECK(w.report.converged);
  CHECK(w.report.iterations == 0);

  SolverConfig capped;
  capped.max_iterations = 2;
  const auto r = cg_solve(inst.a, inst.b, c, capped);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.iterations == 2);
  CHECK(r.report.relative_residual > capped.tolerance);
  CHECK(r.report.relative_residual < 1.0);

  SolverConfig bad_shape;
  bad_shape.initial_guess = DenseDofMatrix(1, 1);
  CHECK_THROWS_AS(cg_solve(inst.a, inst.b, c, bad_shape), ArgumentError);
}

TEST_CASE("solver configuration") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg.tolerance = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  CHECK(parse_preconditioner("jacobi") == Preconditioner::jacobi);
  CHECK(parse_preconditioner("none") == Preconditioner::none);
  CHECK(to_string(Preconditioner::none) == "none");
  CHECK_THROWS_AS(parse_preconditioner("ilu"), ArgumentError);
}

TEST_CASE("dense oracle") {
  SUBCASE("scalar case") {
    const auto a = SparseSymMatrix::from_dense(std::vector<double>{2.0}, 1);
    const TriDiagMatrix b({3.0}, {});
    DenseDofMatrix c(1, 1, 12.0);
    CHECK(dense_oracle_solve(a, b, c)(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("identity") {
    std::mt19937_64 rng(107);
    const auto c = test::random_dofs(3, 4, rng);
    const auto x = dense_oracle_solve(identity_sparse(3), TriDiagMatrix({1, 1, 1, 1}, {0, 0, 0}), c);
    CHECK(relative_difference(x, c) <= 1e-15);
  }
  SUBCASE("residual and agreement with CG") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 8; ++trial) {
      const auto kind = trial % 2 ? MeshKind::unit_cube_tet : MeshKind::unit_square_tri;
      const auto inst = make_instance(kind, 1 + trial % 3, 2 + trial, rng);
      if (inst.a.size() * inst.b.size() > kDenseOracleLimit) continue;
      const auto c = test::random_dofs(inst.a.size(), inst.b.size(), rng);
      const auto x = dense_oracle_solve(inst.a, inst.b, c);
      CHECK(relative_difference(apply_operator(inst.a, inst.b, x), c) < 1e-12);
      CHECK(relative_difference(cg_solve(inst.a, inst.b, c).x, x) <= 1e-8);
    }
  }
  SUBCASE("size guard") {
    std::mt19937_64 rng(113);
    const auto inst = make_instance(MeshKind::unit_square_tri, 8, 20, rng);
    REQUIRE(inst.a.size() * 20 > kDenseOracleLimit);
    CHECK_THROWS_AS(dense_oracle_solve(inst.a, inst.b, DenseDofMatrix(inst.a.size(), 20)), ArgumentError);
  }
}

TEST_CASE("Jacobi preconditioning never needs more iterations on the fixtures") {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 12; ++trial) {
    const auto kind = trial % 2 ? MeshKind::unit_cube_tet : MeshKind::unit_square_tri;
    const auto inst = make_instance(kind, 2 + trial % 3, 3 + trial, rng);
    const auto c = test::random_dofs(inst.a.size(), inst.b.size(), rng);
    SolverConfig plain;
    plain.preconditioner = Preconditioner::none;
    const auto r0 = cg_solve(inst.a, inst.b, c, plain);
    const auto r1 = cg_solve(inst.a, inst.b, c);
    REQUIRE(r0.report.converged);
    REQUIRE(r1.report.converged);
    CHECK(r1.report.iterations <= r0.report.iterations);
  }
}

}  // TEST_SUITE
