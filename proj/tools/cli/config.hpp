#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stgp/fields.hpp"
#include "stgp/mesh.hpp"
#include "stgp/projection.hpp"
#include "stgp/solver.hpp"

namespace stgp::cli {

/// Raised for invalid configuration content or missing input files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct AnalyticSpec {
  std::string recipe;
  std::vector<double> vector;
  std::vector<double> gradient;  // row-major dim x dim
  std::vector<double> coefficients;
  int pole_pairs = 1;
  double amplitude = 1.0;
  double omega = 0.0;
  std::vector<double> center;
  double wavenumber = 1.0;
};

/// Parsed `key = value` run configuration. Relative paths are resolved
/// against the directory of the config file.
struct RunConfig {
  std::filesystem::path config_path;
  std::filesystem::path target_mesh;
  std::optional<std::filesystem::path> source_mesh;
  std::optional<std::filesystem::path> source_field;
  std::optional<AnalyticSpec> analytic;

  std::vector<double> times;  // explicit target grid
  std::optional<double> time_start, time_stop;
  std::optional<std::size_t> time_steps;
  std::optional<std::size_t> step_factor;  // target = factor * source steps

  QuadratureSettings quadrature;
  SolverConfig solver;
  OutsidePolicy policy = OutsidePolicy::zero;
  bool allow_unconverged = false;
  unsigned threads = 1;

  std::vector<Point> probes;
  std::size_t probe_samples = 101;

  std::optional<std::filesystem::path> output_field;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> probe_prefix;

  /// Every key/value pair in file order, for the report echo.
  std::vector<std::pair<std::string, std::string>> entries;
};

/// Parses config text; `base` resolves relative paths. Throws ConfigError.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base);

/// Reads and parses a config file, then checks referenced inputs exist.
RunConfig load_config(const std::filesystem::path& path);

/// Builds the analytic field described by `spec` in dimension `dim`.
AnalyticField make_analytic(const AnalyticSpec& spec, int dim);

}  // namespace stgp::cli
