#include "stgp/projection.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "text_util.hpp"

namespace stgp {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double ErrorNorm::relative() const {
  if (source_energy <= 0.0) return 0.0;
  return std::sqrt(std::max(0.0, epsilon) / source_energy);
}

ErrorNorm error_norm(const SourceField& source, const DenseDofMatrix& x, const Mesh& mesh,
                     const EdgeTable& edges, const TemporalGrid& grid,
                     const QuadratureSettings& quadrature, OutsidePolicy policy, unsigned threads) {
  if (x.rows() != edges.size() || x.cols() != grid.size()) {
    throw ArgumentError("DOF matrix shape does not match the target mesh and grid");
  }
  if (grid.start() < source.time_start() || grid.stop() > source.time_stop()) {
    throw DomainError("target time span exceeds the source span");
  }
  const auto space = quadrature.space_rule(mesh.dim());
  const auto samples = build_time_samples(grid, source.time_breakpoints(), quadrature.time_rule());
  std::vector<double> times(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) times[s] = samples[s].t;

  const std::size_t ne = mesh.element_count();
  const double ref = mesh.dim() == 2 ? 2.0 : 6.0;
  std::vector<double> err(ne, 0.0), energy(ne, 0.0);
  detail::parallel_for(0, ne, threads, [&](std::size_t e) {
    std::vector<Vector> h(samples.size());
    const auto g = element_geometry(mesh, e);
    const auto map = edges.local(e);
    const auto verts = element_vertices(mesh, e);
    const double scale = 0.5 * mesh.mu(e) * g.volume * ref;
    double de = 0.0, ds = 0.0;
    for (std::size_t q = 0; q < space.size(); ++q) {
      const Point xq = g.point(space.points[q], verts);
      source.sample(xq, times, h, policy);
      const auto w = whitney_eval(g, map, space.points[q]);
      const double wq = scale * space.weights[q];
      for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& ts = samples[s];
        Vector ht{};
        for (std::size_t i = 0; i < map.size(); ++i) {
          const double dof = ts.left * x(map[i].index, ts.interval) +
                             ts.right * x(map[i].index, ts.interval + 1);
          for (int c = 0; c < 3; ++c) ht[c] += dof * w[i][c];
        }
        double d2 = 0.0, s2 = 0.0;
        for (int c = 0; c < 3; ++c) {
          d2 += (ht[c] - h[s][c]) * (ht[c] - h[s][c]);
          s2 += h[s][c] * h[s][c];
        }
        de += wq * ts.weight * d2;
        ds += wq * ts.weight * s2;
      }
    }
    err[e] = de;
    energy[e] = ds;
  });
  ErrorNorm out;
  for (std::size_t e = 0; e < ne; ++e) {
    out.epsilon += err[e];
    out.source_energy += energy[e];
  }
  return out;
}

ProjectionResult project(const ProjectionProblem& problem) {
  if (!problem.source) throw ArgumentError("projection problem has no source field");
  problem.solver.validate();
  const Mesh& mesh = problem.target;
  const auto& grid = problem.grid;
  const auto& source = *problem.source;
  const EdgeTable edges(mesh);
  const auto space = problem.quadrature.space_rule(mesh.dim());
  const auto time = problem.quadrature.time_rule();

  ProjectionResult result;
  result.edges = edges.size();
  result.steps = grid.size();

  auto start = std::chrono::steady_clock::now();
  const auto a = assemble_spatial_mass(mesh, edges, space, problem.threads);
  result.timings.spatial_mass = seconds_since(start);
  result.mass_nnz = a.nnz();

  start = std::chrono::steady_clock::now();
  const auto b = assemble_temporal_gram(grid);
  result.timings.temporal_gram = seconds_since(start);

  start = std::chrono::steady_clock::now();
  auto c = assemble_source_matrix(mesh, edges, grid, source, space, time, problem.policy, problem.threads);
  result.timings.source_matrix = seconds_since(start);
  result.outside_points = c.outside_points;

  start = std::chrono::steady_clock::now();
  auto solved = cg_solve(a, b, c.c, problem.solver);
  result.timings.solve = seconds_since(start);
  result.x = std::move(solved.x);
  result.solve = solved.report;

  const auto axb = apply_operator(a, b, result.x);
  result.galerkin_residual = relative_difference(axb, c.c);
  if (frobenius_norm(c.c) == 0.0) result.galerkin_residual = frobenius_norm(axb);

  start = std::chrono::steady_clock::now();
  result.error = error_norm(source, result.x, mesh, edges, grid, problem.quadrature, problem.policy,
                            problem.threads);
  result.timings.error_norm = seconds_since(start);

  if (!result.solve.converged && !problem.allow_unconverged) {
    std::ostringstream msg;
    msg << "conjugate gradients did not converge: relative residual "
        << result.solve.relative_residual << " after " << result.solve.iterations << " iterations";
    throw ConvergenceError(msg.str(), std::move(result));
  }
  return result;
}

Vector eval_projected(const DiscreteField& projected, const Point& x, double t) {
  return projected.eval(x, t, OutsidePolicy::strict);
}

std::vector<ProbeSample> probe_timeseries(const DiscreteField& projected, const Point& x,
                                          std::size_t samples) {
  if (samples < 2) throw ArgumentError("a probe series needs at least two samples");
  const auto& grid = projected.grid();
  std::vector<double> times(samples);
  const double span = grid.stop() - grid.start();
  for (std::size_t k = 0; k < samples; ++k) {
    times[k] = grid.start() + span * static_cast<double>(k) / static_cast<double>(samples - 1);
  }
  times.back() = grid.stop();
  std::vector<Vector> values(samples);
  projected.sample(x, times, values, OutsidePolicy::strict);
  std::vector<ProbeSample> out(samples);
  for (std::size_t k = 0; k < samples; ++k) out[k] = {times[k], values[k]};
  return out;
}

std::string write_probe_csv(const std::vector<ProbeSample>& series, int dim) {
  std::string out = dim == 3 ? "t,hx,hy,hz\n" : "t,hx,hy\n";
  for (const auto& s : series) {
    out += detail::format_double(s.t);
    for (int c = 0; c < dim; ++c) out += ',' + detail::format_double(s.h[c]);
    out += '\n';
  }
  return out;
}

}  // namespace stgp
