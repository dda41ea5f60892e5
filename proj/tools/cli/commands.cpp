#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "stgp/format.hpp"
#include "stgp/locate.hpp"
#include "stgp/mesh_io.hpp"
#include "stgp/projection.hpp"

namespace stgp::cli {

namespace {

struct Inputs {
  std::optional<Mesh> target;
  std::shared_ptr<const SourceField> source;
  std::optional<TemporalGrid> grid;
  std::size_t source_steps = 0;
};

Mesh load_mesh(const std::filesystem::path& path) {
  try {
    return read_mesh_file(path);
  } catch (const ParseError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  in.target = load_mesh(cfg.target_mesh);
  const int dim = in.target->dim();
  if (cfg.analytic) {
    in.source = std::make_shared<AnalyticField>(make_analytic(*cfg.analytic, dim));
  } else {
    Mesh source_mesh = load_mesh(*cfg.source_mesh);
    if (source_mesh.dim() != dim) throw ConfigError("source and target meshes differ in dimension");
    const std::size_t m = EdgeTable(source_mesh).size();
    FieldFile field = [&] {
      try {
        return read_field(read_text_file(*cfg.source_field), m);
      } catch (const ParseError& e) {
        throw ConfigError(cfg.source_field->string() + ": " + e.what());
      }
    }();
    in.source_steps = field.grid.size();
    in.source = std::make_shared<DiscreteField>(std::move(source_mesh), field.grid, std::move(field.dofs));
  }

  try {
    if (!cfg.times.empty()) {
      in.grid = TemporalGrid(cfg.times);
    } else if (cfg.step_factor) {
      in.grid = TemporalGrid::uniform(in.source->time_start(), in.source->time_stop(),
                                      *cfg.step_factor * in.source_steps);
    } else {
      in.grid = TemporalGrid::uniform(*cfg.time_start, *cfg.time_stop, *cfg.time_steps);
    }
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("target time grid: ") + e.what());
  }
  if (in.grid->start() < in.source->time_start() || in.grid->stop() > in.source->time_stop()) {
    throw ConfigError("target time grid exceeds the source time span");
  }
  return in;
}

unsigned resolve_threads(const RunConfig& cfg, const ProjectOptions& options) {
  if (options.threads) return std::max(1u, *options.threads);
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError(std::string(kThreadsEnv) + " must be a positive integer");
    }
    return static_cast<unsigned>(v);
  }
  return cfg.threads;
}

std::string build_report(const RunConfig& cfg, const Inputs& in, const ProjectionResult& r,
                         unsigned threads) {
  std::ostringstream s;
  const auto kv = [&](const std::string& k, const auto& v) { s << k << " = " << v << '\n'; };
  const auto real = [&](const std::string& k, double v) { kv(k, format_real(v)); };

  s << "# stgp run report\n\n[config]\n";
  kv("config", cfg.config_path.string());
  for (const auto& [k, v] : cfg.entries) kv("config." + k, v);

  s << "\n[problem]\n";
  kv("dim", in.target->dim());
  kv("target_nodes", in.target->node_count());
  kv("target_elements", in.target->element_count());
  kv("M", r.edges);
  kv("N", r.steps);
  kv("unknowns", r.edges * r.steps);
  kv("mass_nnz", r.mass_nnz);
  real("time_start", in.grid->start());
  real("time_stop", in.grid->stop());
  kv("source", cfg.analytic ? "analytic:" + cfg.analytic->recipe : std::string("discrete"));
  if (in.source_steps > 0) {
    kv("source_steps", in.source_steps);
    kv("target_steps", r.steps);
    real("step_ratio", static_cast<double>(r.steps) / static_cast<double>(in.source_steps));
  }
  kv("space_order", cfg.quadrature.space_order);
  kv("time_points", cfg.quadrature.time_points);
  kv("outside_policy", to_string(cfg.policy));
  kv("outside_points", r.outside_points);

  s << "\n[solver]\n";
  kv("solver.preconditioner", to_string(r.solve.preconditioner));
  real("solver.tolerance", cfg.solver.tolerance);
  kv("solver.iterations", r.solve.iterations);
  real("solver.relative_residual", r.solve.relative_residual);
  kv("solver.converged", r.solve.converged ? "true" : "false");
  real("galerkin_residual", r.galerkin_residual);

  s << "\n[error]\n";
  real("error.epsilon_H", r.error.epsilon);
  real("error.source_energy", r.error.source_energy);
  real("error.relative", r.error.relative());

  s << "\n# timings are wall-clock and excluded from reproducibility\n[timings]\n";
  kv("threads", threads);
  real("timing.spatial_mass", r.timings.spatial_mass);
  real("timing.temporal_gram", r.timings.temporal_gram);
  real("timing.source_matrix", r.timings.source_matrix);
  real("timing.solve", r.timings.solve);
  real("timing.error_norm", r.timings.error_norm);
  return s.str();
}

}  // namespace

int cmd_project(const std::filesystem::path& config, std::ostream& out, std::ostream& err,
                const ProjectOptions& options) {
  RunConfig cfg;
  Inputs in;
  unsigned threads = 1;
  try {
    cfg = load_config(config);
    in = load_inputs(cfg);
    threads = resolve_threads(cfg, options);
    const PointLocator locator(*in.target);
    for (const auto& p : cfg.probes) {
      if (!locator.locate(p).found()) {
        throw ConfigError("probe (" + format_real(p[0]) + ", " + format_real(p[1]) + ", " +
                          format_real(p[2]) + ") lies outside the target mesh");
      }
    }
  } catch (const IoError& e) {
    err << "stgp project: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "stgp project: " << e.what() << '\n';
    return kConfigError;
  }

  ProjectionProblem problem{*in.target, *in.grid, in.source, cfg.quadrature, cfg.policy,
                            cfg.solver, threads, cfg.allow_unconverged};
  ProjectionResult result;
  int code = kSuccess;
  try {
    result = project(problem);
  } catch (const ConvergenceError& e) {
    err << "stgp project: " << e.what() << '\n';
    result = e.result();
    code = kSolverFailure;
  } catch (const DomainError& e) {
    err << "stgp project: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "stgp project: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (cfg.report) write_text_file(*cfg.report, build_report(cfg, in, result, threads));
    if (code != kSuccess) return code;
    const std::string mesh_name = cfg.target_mesh.filename().string();
    if (cfg.output_field) write_text_file(*cfg.output_field, write_field(mesh_name, *in.grid, result.x));
    if (!cfg.probes.empty() && cfg.probe_prefix) {
      const DiscreteField projected(*in.target, *in.grid, result.x);
      for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
        const auto series = probe_timeseries(projected, cfg.probes[k], cfg.probe_samples);
        write_text_file(cfg.probe_prefix->string() + std::to_string(k) + ".csv",
                        write_probe_csv(series, in.target->dim()));
      }
    }
  } catch (const IoError& e) {
    err << "stgp project: " << e.what() << '\n';
    return kIoError;
  }

  out << "M = " << result.edges << ", N = " << result.steps << ", iterations = "
      << result.solve.iterations << ", relative residual = " << result.solve.relative_residual
      << ", relative error = " << result.error.relative() << '\n';
  return code;
}

int cmd_meshgen(const std::string& kind, long long n, double mu, const std::filesystem::path& output,
                std::ostream& err) {
  MeshKind k;
  if (kind == "unit-square-tri") {
    k = MeshKind::unit_square_tri;
  } else if (kind == "unit-cube-tet") {
    k = MeshKind::unit_cube_tet;
  } else {
    err << "stgp meshgen: unknown kind '" << kind << "' (unit-square-tri|unit-cube-tet)\n";
    return kConfigError;
  }
  if (n < 1) {
    err << "stgp meshgen: n must be at least 1\n";
    return kConfigError;
  }
  if (!(mu > 0.0)) {
    err << "stgp meshgen: mu must be strictly positive\n";
    return kConfigError;
  }
  try {
    write_text_file(output, write_mesh(generate_structured_mesh(k, static_cast<std::size_t>(n), mu)));
  } catch (const IoError& e) {
    err << "stgp meshgen: " << e.what() << '\n';
    return kIoError;
  }
  return kSuccess;
}

int cmd_info(const std::filesystem::path& file, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = read_text_file(file);
  } catch (const IoError& e) {
    err << "stgp info: " << e.what() << '\n';
    return kIoError;
  }
  try {
    if (text.rfind("stgp-mesh", 0) == 0) {
      const Mesh mesh = read_mesh(text);
      const EdgeTable edges(mesh);
      const auto mu = mesh.mu();
      const auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
      out << "kind = mesh\n"
          << "dim = " << mesh.dim() << '\n'
          << "nodes = " << mesh.node_count() << '\n'
          << "elements = " << mesh.element_count() << '\n'
          << "edges = " << edges.size() << '\n'
          << "mu_min = " << format_real(mu.empty() ? 0.0 : *lo) << '\n'
          << "mu_max = " << format_real(mu.empty() ? 0.0 : *hi) << '\n'
          << "bbox_diagonal = " << format_real(mesh.bounds().diagonal()) << '\n';
      return kSuccess;
    }
    if (text.rfind("stgp-field", 0) == 0) {
      const FieldFile f = read_field(text);
      double largest = 0.0;
      for (double v : f.dofs.data()) largest = std::max(largest, std::abs(v));
      out << "kind = field\n"
          << "mesh = " << f.mesh_name << '\n'
          << "edges = " << f.dofs.rows() << '\n'
          << "steps = " << f.dofs.cols() << '\n'
          << "time_start = " << format_real(f.grid.start()) << '\n'
          << "time_stop = " << format_real(f.grid.stop()) << '\n'
          << "max_abs_dof = " << format_real(largest) << '\n';
      return kSuccess;
    }
    err << "stgp info: " << file.string() << " is neither an stgp-mesh nor an stgp-field file\n";
    return kConfigError;
  } catch (const Error& e) {
    err << "stgp info: " << file.string() << ": " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace stgp::cli
