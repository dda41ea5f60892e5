#include "config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "stgp/mesh_io.hpp"

namespace stgp::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class Context {
 public:
  Context(std::size_t line, std::string_view key) : line_(line), key_(key) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + " (" + key_ + "): " + what);
  }

  double real(std::string_view token) const {
    double v = 0.0;
    const char* first = token.data();
    if (!token.empty() && token.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
      fail("expected a real number, got '" + std::string(token) + "'");
    }
    return v;
  }

  std::size_t count(std::string_view token) const {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail("expected a non-negative integer, got '" + std::string(token) + "'");
    }
    return v;
  }

  std::vector<double> reals(std::string_view value) const {
    std::vector<double> out;
    for (auto t : split(value)) out.push_back(real(t));
    if (out.empty()) fail("expected at least one number");
    return out;
  }

  double single_real(std::string_view value) const {
    const auto v = reals(value);
    if (v.size() != 1) fail("expected one number");
    return v.front();
  }

  bool boolean(std::string_view value) const {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    fail("expected true or false");
  }

 private:
  std::size_t line_;
  std::string key_;
};

}  // namespace

AnalyticField make_analytic(const AnalyticSpec& spec, int dim) {
  const auto vec = [&](const std::vector<double>& v, const char* what) {
    Vector out{};
    if (v.empty()) return out;
    if (v.size() != static_cast<std::size_t>(dim)) {
      throw ConfigError(std::string("analytic.") + what + " needs " + std::to_string(dim) + " values");
    }
    for (int k = 0; k < dim; ++k) out[k] = v[k];
    return out;
  };
  std::array<Vector, 3> gradient{};
  if (!spec.gradient.empty()) {
    if (spec.gradient.size() != static_cast<std::size_t>(dim * dim)) {
      throw ConfigError("analytic.gradient needs " + std::to_string(dim * dim) + " values");
    }
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) gradient[r][c] = spec.gradient[r * dim + c];
    }
  }
  const Vector c = vec(spec.vector, "vector");
  if (spec.recipe == "constant") return AnalyticField::constant(dim, c);
  if (spec.recipe == "linear-in-space") return AnalyticField::linear_in_space(dim, c, gradient);
  if (spec.recipe == "polynomial-in-time") {
    if (spec.coefficients.empty()) throw ConfigError("analytic.coefficients is required");
    return AnalyticField::polynomial_in_time(dim, c, gradient, spec.coefficients);
  }
  if (spec.recipe == "rotating-multipole") {
    return AnalyticField::rotating_multipole(dim, spec.pole_pairs, spec.amplitude, spec.omega,
                                             vec(spec.center, "center"));
  }
  if (spec.recipe == "sinusoidal") return AnalyticField::sinusoidal(dim, spec.amplitude, spec.wavenumber);
  throw ConfigError("unknown analytic recipe '" + spec.recipe +
                    "' (constant|linear-in-space|polynomial-in-time|rotating-multipole|sinusoidal)");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base) {
  RunConfig cfg;
  std::set<std::string> seen;
  AnalyticSpec analytic;
  bool any_analytic_key = false;

  const auto path_of = [&](std::string_view v) {
    std::filesystem::path p{std::string(v)};
    return p.is_absolute() ? p : base / p;
  };

  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const Context ctx(number, key);
    if (key.empty()) ctx.fail("empty key");
    if (value.empty()) ctx.fail("empty value");
    if (key != "probe" && !seen.insert(key).second) ctx.fail("duplicate key");
    cfg.entries.emplace_back(key, std::string(value));

    if (key == "target_mesh") {
      cfg.target_mesh = path_of(value);
    } else if (key == "source_mesh") {
      cfg.source_mesh = path_of(value);
    } else if (key == "source_field") {
      cfg.source_field = path_of(value);
    } else if (key == "analytic") {
      analytic.recipe = std::string(value);
      any_analytic_key = true;
    } else if (key == "analytic.vector") {
      analytic.vector = ctx.reals(value);
    } else if (key == "analytic.gradient") {
      analytic.gradient = ctx.reals(value);
    } else if (key == "analytic.coefficients") {
      analytic.coefficients = ctx.reals(value);
    } else if (key == "analytic.pole_pairs") {
      analytic.pole_pairs = static_cast<int>(ctx.count(value));
    } else if (key == "analytic.amplitude") {
      analytic.amplitude = ctx.single_real(value);
    } else if (key == "analytic.omega") {
      analytic.omega = ctx.single_real(value);
    } else if (key == "analytic.center") {
      analytic.center = ctx.reals(value);
    } else if (key == "analytic.wavenumber") {
      analytic.wavenumber = ctx.single_real(value);
    } else if (key == "times") {
      cfg.times = ctx.reals(value);
    } else if (key == "time_start") {
      cfg.time_start = ctx.single_real(value);
    } else if (key == "time_stop") {
      cfg.time_stop = ctx.single_real(value);
    } else if (key == "time_steps") {
      cfg.time_steps = ctx.count(value);
    } else if (key == "step_factor") {
      cfg.step_factor = ctx.count(value);
      if (*cfg.step_factor < 1) ctx.fail("must be at least 1");
    } else if (key == "space_order") {
      cfg.quadrature.space_order = static_cast<int>(ctx.count(value));
    } else if (key == "time_points") {
      cfg.quadrature.time_points = static_cast<int>(ctx.count(value));
      if (cfg.quadrature.time_points < 1) ctx.fail("must be at least 1");
    } else if (key == "tolerance") {
      cfg.solver.tolerance = ctx.single_real(value);
    } else if (key == "max_iterations") {
      cfg.solver.max_iterations = ctx.count(value);
    } else if (key == "preconditioner") {
      try {
        cfg.solver.preconditioner = parse_preconditioner(value);
      } catch (const Error& e) {
        ctx.fail(e.what());
      }
    } else if (key == "outside_policy") {
      try {
        cfg.policy = parse_outside_policy(value);
      } catch (const Error& e) {
        ctx.fail(e.what());
      }
    } else if (key == "allow_unconverged") {
      cfg.allow_unconverged = ctx.boolean(value);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(ctx.count(value));
      if (cfg.threads < 1) ctx.fail("must be at least 1");
    } else if (key == "probe") {
      const auto v = ctx.reals(value);
      if (v.size() < 2 || v.size() > 3) ctx.fail("probe needs 2 or 3 coordinates");
      Point p{};
      for (std::size_t k = 0; k < v.size(); ++k) p[k] = v[k];
      cfg.probes.push_back(p);
    } else if (key == "probe_samples") {
      cfg.probe_samples = ctx.count(value);
      if (cfg.probe_samples < 2) ctx.fail("must be at least 2");
    } else if (key == "output_field") {
      cfg.output_field = path_of(value);
    } else if (key == "report") {
      cfg.report = path_of(value);
    } else if (key == "probe_prefix") {
      cfg.probe_prefix = path_of(value);
    } else {
      ctx.fail("unknown key");
    }
  }

  if (cfg.target_mesh.empty()) throw ConfigError("config: target_mesh is required");
  const bool discrete = cfg.source_mesh || cfg.source_field;
  if (discrete && !(cfg.source_mesh && cfg.source_field)) {
    throw ConfigError("config: a discrete source needs both source_mesh and source_field");
  }
  if (discrete == any_analytic_key) {
    throw ConfigError("config: specify exactly one source (source_mesh + source_field, or analytic)");
  }
  if (any_analytic_key) cfg.analytic = analytic;

  const bool uniform = cfg.time_start || cfg.time_stop || cfg.time_steps;
  const int grid_specs = static_cast<int>(!cfg.times.empty()) + static_cast<int>(uniform) +
                         static_cast<int>(cfg.step_factor.has_value());
  if (grid_specs != 1) {
    throw ConfigError("config: give exactly one target time grid (times, time_start/time_stop/time_steps, or step_factor)");
  }
  if (uniform && !(cfg.time_start && cfg.time_stop && cfg.time_steps)) {
    throw ConfigError("config: time_start, time_stop and time_steps go together");
  }
  if (cfg.step_factor && !discrete) throw ConfigError("config: step_factor needs a discrete source");
  try {
    cfg.solver.validate();
    simplex_quadrature(1, cfg.quadrature.space_order);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const IoError&) {
    throw ConfigError("cannot read config file " + path.string());
  }
  auto cfg = parse_config(text, path.parent_path());
  cfg.config_path = path;
  const auto require = [](const std::filesystem::path& p, const char* what) {
    if (!std::filesystem::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
  };
  require(cfg.target_mesh, "target mesh");
  if (cfg.source_mesh) require(*cfg.source_mesh, "source mesh");
  if (cfg.source_field) require(*cfg.source_field, "source field");
  return cfg;
}

}  // namespace stgp::cli
