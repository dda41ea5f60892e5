#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgp/basis.hpp"
#include "stgp/locate.hpp"
#include "stgp/matrix.hpp"
#include "stgp/mesh.hpp"

namespace stgp {

/// What a mesh-backed evaluator does with points outside its mesh.
enum class OutsidePolicy {
  zero,    ///< return the zero vector and report the point as outside
  strict,  ///< throw DomainError naming the point
};

OutsidePolicy parse_outside_policy(std::string_view name);
std::string_view to_string(OutsidePolicy policy);

/// Evaluator contract for a source field H_s(x, t).
class SourceField {
 public:
  virtual ~SourceField() = default;

  virtual int dim() const = 0;
  virtual double time_start() const { return -std::numeric_limits<double>::infinity(); }
  virtual double time_stop() const { return std::numeric_limits<double>::infinity(); }

  /// Times at which the field's time dependence may have kinks.
  virtual std::span<const double> time_breakpoints() const { return {}; }

  /// Writes H_s(x, times[k]) into out[k]. Returns false when x lies
  /// outside the spatial domain and `policy` is zero (out is zeroed);
  /// throws DomainError under strict, or for times outside the span.
  virtual bool sample(const Point& x, std::span<const double> times, std::span<Vector> out,
                      OutsidePolicy policy) const = 0;

  Vector eval(const Point& x, double t, OutsidePolicy policy = OutsidePolicy::zero) const;

 protected:
  void check_times(std::span<const double> times) const;
};

/// Closed-form manufactured fields.
class AnalyticField final : public SourceField {
 public:
  enum class Recipe { constant, linear_in_space, polynomial_in_time, rotating_multipole, sinusoidal };

  /// H = c.
  static AnalyticField constant(int dim, const Vector& c);
  /// H = c + G x, `gradient[r]` is row r of G.
  static AnalyticField linear_in_space(int dim, const Vector& c, const std::array<Vector, 3>& gradient);
  /// H = (c + G x) * sum_k a_k t^k.
  static AnalyticField polynomial_in_time(int dim, const Vector& c,
                                          const std::array<Vector, 3>& gradient,
                                          std::vector<double> coefficients);
  /// Radial field of p pole pairs rotating about `center` in the xy-plane:
  /// H = amplitude * cos(p theta - omega t) * r_hat, zero at the center.
  /// |H|^2 shows 2p peaks per mechanical revolution (period 2 pi p / omega).
  static AnalyticField rotating_multipole(int dim, int pole_pairs, double amplitude, double omega,
                                          const Point& center);
  /// H = amplitude * (sin k y, sin k x) in 2D, (sin k y, sin k z, sin k x) in 3D.
  static AnalyticField sinusoidal(int dim, double amplitude, double wavenumber);

  Recipe recipe() const noexcept { return recipe_; }
  int dim() const override { return dim_; }
  bool sample(const Point& x, std::span<const double> times, std::span<Vector> out,
              OutsidePolicy policy) const override;

  /// Closed-form value.
  Vector value(const Point& x, double t) const;

 private:
  AnalyticField(Recipe recipe, int dim) : recipe_(recipe), dim_(dim) {}

  Recipe recipe_;
  int dim_;
  Vector c_{};
  std::array<Vector, 3> gradient_{};
  std::vector<double> coefficients_;
  int pole_pairs_ = 1;
  double amplitude_ = 1.0;
  double omega_ = 0.0;
  Point center_{};
  double wavenumber_ = 1.0;
};

inline Vector eval_analytic(const AnalyticField& field, const Point& x, double t) {
  return field.value(x, t);
}

/// Arbitrary callable, defined everywhere in space and on [start, stop].
class FunctionField final : public SourceField {
 public:
  using Function = std::function<Vector(const Point&, double)>;

  FunctionField(int dim, Function f,
                double start = -std::numeric_limits<double>::infinity(),
                double stop = std::numeric_limits<double>::infinity());

  int dim() const override { return dim_; }
  double time_start() const override { return start_; }
  double time_stop() const override { return stop_; }
  bool sample(const Point& x, std::span<const double> times, std::span<Vector> out,
              OutsidePolicy policy) const override;

 private:
  int dim_;
  Function f_;
  double start_;
  double stop_;
};

/// Field given by edge DOFs on a source mesh at source time steps:
/// Whitney interpolation in space, linear interpolation in time.
class DiscreteField final : public SourceField {
 public:
  DiscreteField(Mesh mesh, TemporalGrid grid, DenseDofMatrix dofs);

  int dim() const override { return mesh_.dim(); }
  double time_start() const override { return grid_.start(); }
  double time_stop() const override { return grid_.stop(); }
  std::span<const double> time_breakpoints() const override { return grid_.times(); }
  bool sample(const Point& x, std::span<const double> times, std::span<Vector> out,
              OutsidePolicy policy) const override;

  const Mesh& mesh() const noexcept { return mesh_; }
  const EdgeTable& edges() const noexcept { return edges_; }
  const TemporalGrid& grid() const noexcept { return grid_; }
  const DenseDofMatrix& dofs() const noexcept { return dofs_; }
  const PointLocator& locator() const noexcept { return locator_; }

 private:
  Mesh mesh_;
  EdgeTable edges_;
  TemporalGrid grid_;
  DenseDofMatrix dofs_;
  PointLocator locator_;
};

Vector eval_discrete(const DiscreteField& field, const Point& x, double t,
                     OutsidePolicy policy = OutsidePolicy::zero);

/// Circulation of `field` along every edge (low -> high node) at each
/// grid time, by `line_points`-point Gauss quadrature. Evaluated
/// everywhere on the edges regardless of the field's spatial domain.
DenseDofMatrix edge_circulations(const Mesh& mesh, const EdgeTable& edges, const SourceField& field,
                                 const TemporalGrid& grid, int line_points = 5);

/// Contents of an `stgp-field 1` file.
struct FieldFile {
  std::string mesh_name;
  TemporalGrid grid;
  DenseDofMatrix dofs;
};

/// Parses `stgp-field 1`. When `expected_edges` is nonzero the edge
/// count must match it (dimension check against the bound mesh).
FieldFile read_field(std::string_view text, std::size_t expected_edges = 0);

std::string write_field(std::string_view mesh_name, const TemporalGrid& grid, const DenseDofMatrix& dofs);

}  // namespace stgp
