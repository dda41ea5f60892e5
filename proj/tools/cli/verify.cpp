#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "stgp/projection.hpp"

namespace stgp::cli {

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

using SolveFn = std::function<DenseDofMatrix(const SparseSymMatrix&, const TriDiagMatrix&,
                                             const DenseDofMatrix&)>;

struct Run {
  DenseDofMatrix x;
  double galerkin = 0.0;
  double relative_error = 0.0;
  double epsilon = 0.0;
};

// Projection pipeline with an injectable solve step.
Run run_projection(const Mesh& mesh, const TemporalGrid& grid, const SourceField& source,
                   const SolveFn& solve, const QuadratureSettings& quad = {}) {
  const EdgeTable edges(mesh);
  const auto a = assemble_spatial_mass(mesh, edges, quad.space_rule(mesh.dim()));
  const auto b = assemble_temporal_gram(grid);
  const auto c = assemble_source_matrix(mesh, edges, grid, source, quad.space_rule(mesh.dim()),
                                        quad.time_rule());
  Run r;
  r.x = solve(a, b, c.c);
  const double c_norm = frobenius_norm(c.c);
  const auto axb = apply_operator(a, b, r.x);
  r.galerkin = c_norm > 0.0 ? relative_difference(axb, c.c) : frobenius_norm(axb);
  const auto e = error_norm(source, r.x, mesh, edges, grid, quad);
  r.relative_error = e.relative();
  r.epsilon = e.epsilon;
  return r;
}

Mesh jittered_square(std::size_t n, std::mt19937_64& rng, bool random_mu) {
  const Mesh base = generate_structured_mesh(MeshKind::unit_square_tri, n, 1.0);
  std::uniform_real_distribution<double> shift(-0.2 / static_cast<double>(n), 0.2 / static_cast<double>(n));
  std::uniform_real_distribution<double> mu(0.5, 4.0);
  std::vector<Point> nodes(base.nodes().begin(), base.nodes().end());
  for (auto& p : nodes) {
    const bool interior = p[0] > 0.0 && p[0] < 1.0 && p[1] > 0.0 && p[1] < 1.0;
    if (interior) {
      p[0] += shift(rng);
      p[1] += shift(rng);
    }
  }
  std::vector<double> m(base.element_count(), 1.0);
  if (random_mu) {
    for (auto& v : m) v = mu(rng);
  }
  return Mesh(2, std::move(nodes), {base.elements().begin(), base.elements().end()}, std::move(m));
}

TemporalGrid random_grid(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> step(0.3, 1.7);
  std::vector<double> t{0.0};
  for (std::size_t k = 1; k < n; ++k) t.push_back(t.back() + step(rng) / static_cast<double>(n));
  return TemporalGrid(std::move(t));
}

double slope(const std::vector<double>& h, const std::vector<double>& err) {
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    mx += std::log(h[k]);
    my += std::log(err[k]);
  }
  mx /= static_cast<double>(h.size());
  my /= static_cast<double>(h.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    sxy += (std::log(h[k]) - mx) * (std::log(err[k]) - my);
    sxx += (std::log(h[k]) - mx) * (std::log(h[k]) - mx);
  }
  return sxy / sxx;
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

}  // namespace

int cmd_verify(const std::string& level, std::ostream& out, std::ostream& err,
               const VerifyOptions& options) {
  if (level != "quick" && level != "full") {
    err << "stgp verify: level must be quick or full\n";
    return kConfigError;
  }
  const auto started = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20150707);
  SolverConfig solver;
  const SolveFn solve = [&](const SparseSymMatrix& a, const TriDiagMatrix& b, const DenseDofMatrix& c) {
    auto x = cg_solve(a, b, c, solver).x;
    if (options.tamper_solver) {
      for (auto& v : x.data()) v *= 1.0 + 1e-5;
    }
    return x;
  };
  std::vector<Check> checks;
  double worst_galerkin = 0.0;
  const auto track = [&](const Run& r) {
    worst_galerkin = std::max(worst_galerkin, r.galerkin);
    return r;
  };

  {
    Check c{"cg-vs-dense-oracle", false, {}};
    double worst = 0.0;
    std::normal_distribution<double> normal;
    for (int inst = 0; inst < 6; ++inst) {
      const Mesh mesh = jittered_square(inst % 2 == 0 ? 1 : 2, rng, true);
      const EdgeTable edges(mesh);
      const std::size_t n = std::max<std::size_t>(2, 200 / edges.size() - inst);
      const auto grid = random_grid(n, rng);
      const auto a = assemble_spatial_mass(mesh, edges, simplex_quadrature(2, 4));
      const auto b = assemble_temporal_gram(grid);
      DenseDofMatrix rhs(edges.size(), grid.size());
      for (auto& v : rhs.data()) v = normal(rng);
      worst = std::max(worst, relative_difference(solve(a, b, rhs), dense_oracle_solve(a, b, rhs)));
    }
    c.pass = worst <= 1e-8;
    c.detail = "max rel diff " + sci(worst);
    checks.push_back(c);
  }

  const auto square3 = generate_structured_mesh(MeshKind::unit_square_tri, 3, 1.0);
  const auto grid5 = TemporalGrid::uniform(0.0, 1.0, 5);
  {
    Check c{"self-projection", false, {}};
    const EdgeTable edges(square3);
    DenseDofMatrix dofs(edges.size(), grid5.size());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : dofs.data()) v = u(rng);
    const DiscreteField source(square3, grid5, dofs);
    const auto r = track(run_projection(square3, grid5, source, solve));
    const double diff = relative_difference(r.x, dofs);
    c.pass = diff <= 1e-8 && r.relative_error <= 1e-8;
    c.detail = "dof diff " + sci(diff) + ", rel error " + sci(r.relative_error);
    checks.push_back(c);
  }

  const auto smooth = AnalyticField::sinusoidal(2, 1.0, std::numbers::pi);
  const auto quadratic = AnalyticField::polynomial_in_time(2, {0.3, -0.7, 0}, {}, {0.5, -1.0, 2.0});
  {
    Check c{"mu-scaling", false, {}};
    const Mesh mesh = jittered_square(3, rng, true);
    const auto r1 = track(run_projection(mesh, grid5, smooth, solve));
    const auto r2 = track(run_projection(mesh.scaled_mu(3.7), grid5, smooth, solve));
    const double diff = relative_difference(r2.x, r1.x);
    c.pass = diff <= 1e-8;
    c.detail = "rel diff " + sci(diff);
    checks.push_back(c);
  }
  {
    Check c{"linearity", false, {}};
    const FunctionField combined(2, [&](const Point& x, double t) {
      const auto h1 = smooth.value(x, t);
      const auto h2 = quadratic.value(x, t);
      return Vector{2.0 * h1[0] - 0.5 * h2[0], 2.0 * h1[1] - 0.5 * h2[1], 0.0};
    });
    const auto r1 = track(run_projection(square3, grid5, smooth, solve));
    const auto r2 = track(run_projection(square3, grid5, quadratic, solve));
    const auto r3 = track(run_projection(square3, grid5, combined, solve));
    DenseDofMatrix expected(r1.x.rows(), r1.x.cols());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      expected.data()[k] = 2.0 * r1.x.data()[k] - 0.5 * r2.x.data()[k];
    }
    const double diff = relative_difference(r3.x, expected);
    c.pass = diff <= 1e-8;
    c.detail = "rel diff " + sci(diff);
    checks.push_back(c);
  }

  if (level == "full") {
    {
      Check c{"spatial-convergence", false, {}};
      std::vector<double> h, e;
      const auto grid = TemporalGrid::uniform(0.0, 1.0, 2);
      for (std::size_t n : {4, 8, 16}) {
        const auto mesh = generate_structured_mesh(MeshKind::unit_square_tri, n, 1.0);
        const auto r = track(run_projection(mesh, grid, smooth, solve));
        h.push_back(1.0 / static_cast<double>(n));
        e.push_back(std::sqrt(r.epsilon));
      }
      const double s = slope(h, e);
      c.pass = s >= 0.8 && s <= 1.2;
      c.detail = "slope " + sci(s);
      checks.push_back(c);
    }
    {
      Check c{"temporal-convergence", false, {}};
      std::vector<double> h, e;
      const auto mesh = generate_structured_mesh(MeshKind::unit_square_tri, 2, 1.0);
      for (std::size_t n : {5, 9, 17}) {
        const auto grid = TemporalGrid::uniform(0.0, 1.0, n);
        // Three Gauss points: the squared error of a quadratic-in-time source is quartic.
        const auto r = track(run_projection(mesh, grid, quadratic, solve, {4, 3}));
        h.push_back(1.0 / static_cast<double>(n - 1));
        e.push_back(std::sqrt(r.epsilon));
      }
      const double s = slope(h, e);
      c.pass = s >= 1.7 && s <= 2.3;
      c.detail = "slope " + sci(s);
      checks.push_back(c);
    }
  }

  {
    Check c{"galerkin-residual", false, {}};
    c.pass = worst_galerkin <= 10.0 * solver.tolerance;
    c.detail = "max " + sci(worst_galerkin);
    checks.push_back(c);
  }

  bool all = true;
  out << std::left;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << std::setw(24) << c.name << c.detail << '\n';
    all = all && c.pass;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out << (all ? "all checks passed" : "some checks FAILED") << " (" << std::fixed
      << std::setprecision(2) << seconds << " s)\n";
  return all ? kSuccess : kSolverFailure;
}

}  // namespace stgp::cli
