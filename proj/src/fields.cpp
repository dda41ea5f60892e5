#include "stgp/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "stgp/error.hpp"
#include "stgp/quadrature.hpp"
#include "text_util.hpp"

namespace stgp {

namespace {

std::string describe(const Point& x) {
  std::ostringstream s;
  s << '(' << x[0] << ", " << x[1] << ", " << x[2] << ')';
  return s.str();
}

}  // namespace

OutsidePolicy parse_outside_policy(std::string_view name) {
  if (name == "zero") return OutsidePolicy::zero;
  if (name == "strict") return OutsidePolicy::strict;
  throw ArgumentError("unknown outside policy '" + std::string(name) + "' (zero|strict)");
}

std::string_view to_string(OutsidePolicy policy) {
  return policy == OutsidePolicy::zero ? "zero" : "strict";
}

Vector SourceField::eval(const Point& x, double t, OutsidePolicy policy) const {
  Vector v{};
  sample(x, std::span<const double>(&t, 1), std::span<Vector>(&v, 1), policy);
  return v;
}

void SourceField::check_times(std::span<const double> times) const {
  for (double t : times) {
    if (!(t >= time_start() && t <= time_stop())) {
      throw DomainError("time " + std::to_string(t) + " outside source span [" +
                        std::to_string(time_start()) + ", " + std::to_string(time_stop()) + "]");
    }
  }
}

// ---------------------------------------------------------------------------

AnalyticField AnalyticField::constant(int dim, const Vector& c) {
  AnalyticField f(Recipe::constant, dim);
  f.c_ = c;
  return f;
}

AnalyticField AnalyticField::linear_in_space(int dim, const Vector& c,
                                             const std::array<Vector, 3>& gradient) {
  AnalyticField f(Recipe::linear_in_space, dim);
  f.c_ = c;
  f.gradient_ = gradient;
  return f;
}

AnalyticField AnalyticField::polynomial_in_time(int dim, const Vector& c,
                                                const std::array<Vector, 3>& gradient,
                                                std::vector<double> coefficients) {
  AnalyticField f(Recipe::polynomial_in_time, dim);
  f.c_ = c;
  f.gradient_ = gradient;
  f.coefficients_ = std::move(coefficients);
  return f;
}

AnalyticField AnalyticField::rotating_multipole(int dim, int pole_pairs, double amplitude,
                                                double omega, const Point& center) {
  if (pole_pairs < 1) throw ArgumentError("rotating multipole needs at least one pole pair");
  AnalyticField f(Recipe::rotating_multipole, dim);
  f.pole_pairs_ = pole_pairs;
  f.amplitude_ = amplitude;
  f.omega_ = omega;
  f.center_ = center;
  return f;
}

AnalyticField AnalyticField::sinusoidal(int dim, double amplitude, double wavenumber) {
  AnalyticField f(Recipe::sinusoidal, dim);
  f.amplitude_ = amplitude;
  f.wavenumber_ = wavenumber;
  return f;
}

Vector AnalyticField::value(const Point& x, double t) const {
  Vector h{};
  const auto affine = [&] {
    Vector v = c_;
    for (int r = 0; r < dim_; ++r) {
      for (int k = 0; k < dim_; ++k) v[r] += gradient_[r][k] * x[k];
    }
    return v;
  };
  switch (recipe_) {
    case Recipe::constant:
      h = c_;
      break;
    case Recipe::linear_in_space:
      h = affine();
      break;
    case Recipe::polynomial_in_time: {
      double p = 0.0;
      for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) p = p * t + *it;
      h = affine();
      for (auto& v : h) v *= p;
      break;
    }
    case Recipe::rotating_multipole: {
      const double dx = x[0] - center_[0];
      const double dy = x[1] - center_[1];
      const double r = std::hypot(dx, dy);
      if (r == 0.0) break;
      const double theta = std::atan2(dy, dx);
      const double s = amplitude_ * std::cos(pole_pairs_ * theta - omega_ * t);
      h = {s * dx / r, s * dy / r, 0.0};
      break;
    }
    case Recipe::sinusoidal:
      if (dim_ == 2) {
        h = {std::sin(wavenumber_ * x[1]), std::sin(wavenumber_ * x[0]), 0.0};
      } else {
        h = {std::sin(wavenumber_ * x[1]), std::sin(wavenumber_ * x[2]), std::sin(wavenumber_ * x[0])};
      }
      for (auto& v : h) v *= amplitude_;
      break;
  }
  for (int k = dim_; k < 3; ++k) h[k] = 0.0;
  return h;
}

bool AnalyticField::sample(const Point& x, std::span<const double> times, std::span<Vector> out,
                           OutsidePolicy) const {
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = value(x, times[k]);
  return true;
}

// ---------------------------------------------------------------------------

FunctionField::FunctionField(int dim, Function f, double start, double stop)
    : dim_(dim), f_(std::move(f)), start_(start), stop_(stop) {
  if (!f_) throw ArgumentError("function field needs a callable");
}

bool FunctionField::sample(const Point& x, std::span<const double> times, std::span<Vector> out,
                           OutsidePolicy) const {
  check_times(times);
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = f_(x, times[k]);
  return true;
}

// ---------------------------------------------------------------------------

DiscreteField::DiscreteField(Mesh mesh, TemporalGrid grid, DenseDofMatrix dofs)
    : mesh_(std::move(mesh)),
      edges_(mesh_),
      grid_(std::move(grid)),
      dofs_(std::move(dofs)),
      locator_(mesh_) {
  if (dofs_.rows() != edges_.size() || dofs_.cols() != grid_.size()) {
    throw ArgumentError("source DOFs are " + std::to_string(dofs_.rows()) + "x" +
                        std::to_string(dofs_.cols()) + ", mesh and grid need " +
                        std::to_string(edges_.size()) + "x" + std::to_string(grid_.size()));
  }
  for (double v : dofs_.data()) {
    if (!std::isfinite(v)) throw ArgumentError("source DOFs must be finite");
  }
}

bool DiscreteField::sample(const Point& x, std::span<const double> times, std::span<Vector> out,
                           OutsidePolicy policy) const {
  check_times(times);
  const auto loc = locator_.locate(x);
  if (!loc.found()) {
    if (policy == OutsidePolicy::strict) {
      throw DomainError("point " + describe(x) + " is outside the source mesh");
    }
    std::fill(out.begin(), out.end(), Vector{});
    return false;
  }
  const auto local = edges_.local(loc.element);
  const auto w = whitney_eval(locator_.geometry(loc.element), local, loc.barycentric);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto [s, left, right] = hat_pair(grid_, times[k]);
    Vector h{};
    for (std::size_t e = 0; e < local.size(); ++e) {
      const double dof = left * dofs_(local[e].index, s) + right * dofs_(local[e].index, s + 1);
      for (int c = 0; c < 3; ++c) h[c] += dof * w[e][c];
    }
    out[k] = h;
  }
  return true;
}

Vector eval_discrete(const DiscreteField& field, const Point& x, double t, OutsidePolicy policy) {
  return field.eval(x, t, policy);
}

DenseDofMatrix edge_circulations(const Mesh& mesh, const EdgeTable& edges, const SourceField& field,
                                 const TemporalGrid& grid, int line_points) {
  const auto rule = gauss_legendre(line_points);
  DenseDofMatrix dofs(edges.size(), grid.size());
  std::vector<Vector> values(grid.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Point& a = mesh.node(edges.edge(i).a);
    const Point& b = mesh.node(edges.edge(i).b);
    const Vector d{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = rule.coordinate(q);
      const Point x{a[0] + s * d[0], a[1] + s * d[1], a[2] + s * d[2]};
      field.sample(x, grid.times(), values, OutsidePolicy::zero);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto& h = values[j];
        dofs(i, j) += rule.weights[q] * (h[0] * d[0] + h[1] * d[1] + h[2] * d[2]);
      }
    }
  }
  return dofs;
}

// ---------------------------------------------------------------------------

FieldFile read_field(std::string_view text, std::size_t expected_edges) {
  using detail::parse_double;
  using detail::parse_index;
  detail::LineCursor in(text);
  {
    const auto& l = in.next("header");
    if (l.tokens.size() != 2 || l.tokens[0] != "stgp-field" || l.tokens[1] != "1") {
      throw ParseError("expected header 'stgp-field 1'", l.number);
    }
  }
  const auto& mesh_line = in.expect("mesh", 1);
  std::string mesh_name(mesh_line.tokens[1]);

  const auto& dims = in.next("'edges <M> steps <N>'");
  if (dims.tokens.size() != 4 || dims.tokens[0] != "edges" || dims.tokens[2] != "steps") {
    throw ParseError("expected 'edges <M> steps <N>'", dims.number);
  }
  const std::size_t m = parse_index(dims.tokens[1], dims.number);
  const std::size_t n = parse_index(dims.tokens[3], dims.number);
  if (expected_edges != 0 && m != expected_edges) {
    throw ParseError("field has " + std::to_string(m) + " edges but the mesh has " +
                         std::to_string(expected_edges),
                     dims.number);
  }
  if (n < 2) throw ParseError("a field needs at least two time steps", dims.number);

  const auto& time_line = in.expect("times", n);
  std::vector<double> times(n);
  for (std::size_t j = 0; j < n; ++j) {
    times[j] = parse_double(time_line.tokens[j + 1], time_line.number);
    if (j > 0 && !(times[j] > times[j - 1])) {
      throw ParseError("time line is non-monotone at entry " + std::to_string(j), time_line.number);
    }
  }

  DenseDofMatrix dofs(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& l = in.next("DOF row " + std::to_string(i));
    if (l.tokens.size() != n) {
      throw ParseError("DOF row " + std::to_string(i) + " needs " + std::to_string(n) + " values",
                       l.number);
    }
    for (std::size_t j = 0; j < n; ++j) dofs(i, j) = parse_double(l.tokens[j], l.number);
  }
  if (!in.done()) throw ParseError("trailing content after DOF rows", in.line_number());
  return {std::move(mesh_name), TemporalGrid(std::move(times)), std::move(dofs)};
}

std::string write_field(std::string_view mesh_name, const TemporalGrid& grid,
                        const DenseDofMatrix& dofs) {
  if (dofs.cols() != grid.size()) throw ArgumentError("DOF columns must match the time grid");
  if (mesh_name.empty() || mesh_name.find_first_of(" \t\n#") != std::string_view::npos) {
    throw ArgumentError("mesh name must be a single token");
  }
  std::string out = "stgp-field 1\nmesh ";
  out += mesh_name;
  out += "\nedges " + std::to_string(dofs.rows()) + " steps " + std::to_string(dofs.cols()) + "\ntimes";
  for (double t : grid.times()) out += ' ' + detail::format_double(t);
  out += '\n';
  for (std::size_t i = 0; i < dofs.rows(); ++i) {
    for (std::size_t j = 0; j < dofs.cols(); ++j) {
      if (j > 0) out += ' ';
      out += detail::format_double(dofs(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace stgp
