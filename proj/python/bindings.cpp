#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "stgp/assembly.hpp"
#include "stgp/mesh_io.hpp"
#include "stgp/projection.hpp"

namespace py = pybind11;
using namespace stgp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// DOF matrices cross the boundary as (M, N) float64 arrays.
Array to_numpy(const DenseDofMatrix& x) {
  Array out({x.rows(), x.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < x.rows(); ++i) v(i, j) = x(i, j);
  return out;
}

DenseDofMatrix from_numpy(const Array& a) {
  if (a.ndim() != 2) throw ArgumentError("expected a 2-D array of DOFs");
  auto v = a.unchecked<2>();
  DenseDofMatrix x(static_cast<std::size_t>(v.shape(0)), static_cast<std::size_t>(v.shape(1)));
  for (py::ssize_t j = 0; j < v.shape(1); ++j)
    for (py::ssize_t i = 0; i < v.shape(0); ++i) x(i, j) = v(i, j);
  return x;
}

Point to_point(const std::vector<double>& p) {
  if (p.size() < 2 || p.size() > 3) throw ArgumentError("points have 2 or 3 coordinates");
  return {p[0], p[1], p.size() == 3 ? p[2] : 0.0};
}

py::tuple to_tuple(const Vector& v, int dim) {
  if (dim == 2) return py::make_tuple(v[0], v[1]);
  return py::make_tuple(v[0], v[1], v[2]);
}

Mesh make_mesh(const Array& nodes, const py::array_t<long long, py::array::c_style | py::array::forcecast>& elements,
               const std::vector<double>& mu) {
  if (nodes.ndim() != 2 || elements.ndim() != 2) throw ArgumentError("nodes and elements must be 2-D arrays");
  const int dim = static_cast<int>(nodes.shape(1));
  if (dim != 2 && dim != 3) throw ArgumentError("nodes must have 2 or 3 columns");
  if (elements.shape(1) != dim + 1) throw ArgumentError("elements need dim + 1 node indices");
  auto nv = nodes.unchecked<2>();
  auto ev = elements.unchecked<2>();
  std::vector<Point> pts(static_cast<std::size_t>(nv.shape(0)));
  for (py::ssize_t i = 0; i < nv.shape(0); ++i)
    for (int k = 0; k < dim; ++k) pts[i][k] = nv(i, k);
  std::vector<Simplex> els(static_cast<std::size_t>(ev.shape(0)));
  for (py::ssize_t e = 0; e < ev.shape(0); ++e)
    for (int k = 0; k <= dim; ++k) {
      if (ev(e, k) < 0) throw MeshError("negative node index in element " + std::to_string(e), e);
      els[e][k] = static_cast<std::size_t>(ev(e, k));
    }
  return Mesh(dim, std::move(pts), std::move(els), mu);
}

}  // namespace

PYBIND11_MODULE(_stgp, m) {
  m.doc() = "Space-time Galerkin projection of edge-element fields";

  // Later registrations are tried first, so subclasses come after the base.
  const auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<MeshError>(m, "MeshError", error);
  py::register_exception<ParseError>(m, "ParseError", error);
  py::register_exception<DomainError>(m, "DomainError", error);
  py::register_exception<ArgumentError>(m, "ArgumentError", error);
  py::register_exception<IoError>(m, "IoError", error);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error);

  py::enum_<MeshKind>(m, "MeshKind")
      .value("unit_square_tri", MeshKind::unit_square_tri)
      .value("unit_cube_tet", MeshKind::unit_cube_tet);
  py::enum_<OutsidePolicy>(m, "OutsidePolicy")
      .value("zero", OutsidePolicy::zero)
      .value("strict", OutsidePolicy::strict);
  py::enum_<Preconditioner>(m, "Preconditioner")
      .value("none", Preconditioner::none)
      .value("jacobi", Preconditioner::jacobi);

  py::class_<Mesh>(m, "Mesh")
      .def(py::init(&make_mesh), py::arg("nodes"), py::arg("elements"), py::arg("mu"),
           "Mesh from an (n, dim) node array, an (e, dim + 1) element array and per-element mu.")
      .def_property_readonly("dim", &Mesh::dim)
      .def_property_readonly("node_count", &Mesh::node_count)
      .def_property_readonly("element_count", &Mesh::element_count)
      .def_property_readonly("edge_count", [](const Mesh& mesh) { return EdgeTable(mesh).size(); })
      .def_property_readonly("mu", [](const Mesh& mesh) { return std::vector<double>(mesh.mu().begin(), mesh.mu().end()); })
      .def("edges", [](const Mesh& mesh) {
        const EdgeTable t(mesh);
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& e : t.edges()) out.emplace_back(e.a, e.b);
        return out;
      }, "Global edges as (low, high) node pairs, in DOF order.")
      .def("scaled_mu", &Mesh::scaled_mu, py::arg("factor"))
      .def("__eq__", [](const Mesh& a, const Mesh& b) { return a == b; });

  m.def("generate_structured_mesh", &generate_structured_mesh, py::arg("kind"), py::arg("n"), py::arg("mu") = 1.0);
  m.def("read_mesh", [](const std::string& text) { return read_mesh(text); }, py::arg("text"));
  m.def("write_mesh", &write_mesh, py::arg("mesh"));
  m.def("read_mesh_file", [](const std::string& path) { return read_mesh_file(path); }, py::arg("path"));

  py::class_<TemporalGrid>(m, "TemporalGrid")
      .def(py::init<std::vector<double>>(), py::arg("times"))
      .def_static("uniform", &TemporalGrid::uniform, py::arg("start"), py::arg("stop"), py::arg("count"))
      .def_property_readonly("times", [](const TemporalGrid& g) { return std::vector<double>(g.times().begin(), g.times().end()); })
      .def("__len__", &TemporalGrid::size);

  py::class_<SourceField, std::shared_ptr<SourceField>>(m, "SourceField")
      .def_property_readonly("dim", &SourceField::dim)
      .def("eval", [](const SourceField& f, const std::vector<double>& x, double t, OutsidePolicy policy) {
        return to_tuple(f.eval(to_point(x), t, policy), f.dim());
      }, py::arg("x"), py::arg("t"), py::arg("policy") = OutsidePolicy::zero);

  py::class_<AnalyticField, SourceField, std::shared_ptr<AnalyticField>>(m, "AnalyticField")
      .def_static("constant", [](int dim, const std::vector<double>& c) {
        return std::make_shared<AnalyticField>(AnalyticField::constant(dim, to_point(c)));
      }, py::arg("dim"), py::arg("vector"))
      .def_static("sinusoidal", [](int dim, double amplitude, double k) {
        return std::make_shared<AnalyticField>(AnalyticField::sinusoidal(dim, amplitude, k));
      }, py::arg("dim"), py::arg("amplitude") = 1.0, py::arg("wavenumber") = 1.0)
      .def_static("rotating_multipole", [](int dim, int p, double amplitude, double omega, const std::vector<double>& center) {
        return std::make_shared<AnalyticField>(AnalyticField::rotating_multipole(dim, p, amplitude, omega, to_point(center)));
      }, py::arg("dim"), py::arg("pole_pairs"), py::arg("amplitude"), py::arg("omega"), py::arg("center"))
      .def_static("polynomial_in_time", [](int dim, const std::vector<double>& c, const Array& gradient, std::vector<double> coefficients) {
        std::array<Vector, 3> g{};
        auto v = gradient.unchecked<2>();
        for (py::ssize_t r = 0; r < std::min<py::ssize_t>(3, v.shape(0)); ++r)
          for (py::ssize_t k = 0; k < std::min<py::ssize_t>(3, v.shape(1)); ++k) g[r][k] = v(r, k);
        return std::make_shared<AnalyticField>(AnalyticField::polynomial_in_time(dim, to_point(c), g, std::move(coefficients)));
      }, py::arg("dim"), py::arg("vector"), py::arg("gradient"), py::arg("coefficients"));

  py::class_<FunctionField, SourceField, std::shared_ptr<FunctionField>>(m, "FunctionField")
      .def(py::init([](int dim, const std::function<std::vector<double>(std::vector<double>, double)>& f,
                       double start, double stop) {
             // The GIL is held throughout: projections of Python callables run single-threaded.
             return std::make_shared<FunctionField>(dim, [f, dim](const Point& x, double t) {
               py::gil_scoped_acquire gil;
               return to_point(f(std::vector<double>(x.begin(), x.begin() + dim), t));
             }, start, stop);
           }),
           py::arg("dim"), py::arg("function"), py::arg("start") = -std::numeric_limits<double>::infinity(),
           py::arg("stop") = std::numeric_limits<double>::infinity());

  py::class_<DiscreteField, SourceField, std::shared_ptr<DiscreteField>>(m, "DiscreteField")
      .def(py::init([](const Mesh& mesh, const TemporalGrid& grid, const Array& dofs) {
             return std::make_shared<DiscreteField>(mesh, grid, from_numpy(dofs));
           }), py::arg("mesh"), py::arg("grid"), py::arg("dofs"))
      .def_property_readonly("mesh", &DiscreteField::mesh)
      .def_property_readonly("grid", &DiscreteField::grid)
      .def_property_readonly("dofs", [](const DiscreteField& f) { return to_numpy(f.dofs()); })
      .def("probe", [](const DiscreteField& f, const std::vector<double>& x, std::size_t samples) {
        py::list out;
        for (const auto& s : probe_timeseries(f, to_point(x), samples)) out.append(py::make_tuple(s.t, to_tuple(s.h, f.dim())));
        return out;
      }, py::arg("x"), py::arg("samples"), "Uniform (t, H) samples over the grid span, endpoints included.");

  m.def("edge_circulations", [](const Mesh& mesh, const SourceField& field, const TemporalGrid& grid, int line_points) {
    return to_numpy(edge_circulations(mesh, EdgeTable(mesh), field, grid, line_points));
  }, py::arg("mesh"), py::arg("field"), py::arg("grid"), py::arg("line_points") = 5);

  m.def("read_field", [](const std::string& text) {
    auto f = read_field(text);
    return py::make_tuple(f.mesh_name, f.grid, to_numpy(f.dofs));
  }, py::arg("text"), "Returns (mesh_name, grid, dofs).");
  m.def("write_field", [](const std::string& mesh_name, const TemporalGrid& grid, const Array& dofs) {
    return write_field(mesh_name, grid, from_numpy(dofs));
  }, py::arg("mesh_name"), py::arg("grid"), py::arg("dofs"));

  m.def("spatial_mass", [](const Mesh& mesh, int order) {
    const auto a = assemble_spatial_mass(mesh, EdgeTable(mesh), simplex_quadrature(mesh.dim(), order));
    return py::make_tuple(std::vector<double>(a.values().begin(), a.values().end()),
                          std::vector<std::size_t>(a.column_index().begin(), a.column_index().end()),
                          std::vector<std::size_t>(a.row_start().begin(), a.row_start().end()));
  }, py::arg("mesh"), py::arg("order") = 4, "A as CSR arrays (data, indices, indptr).");
  m.def("temporal_gram", [](const TemporalGrid& grid) {
    const auto b = assemble_temporal_gram(grid);
    Array out({b.size(), b.size()});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) v(i, j) = b(i, j);
    return out;
  }, py::arg("grid"));

  py::class_<ProjectionResult>(m, "ProjectionResult")
      .def_property_readonly("x", [](const ProjectionResult& r) { return to_numpy(r.x); })
      .def_property_readonly("iterations", [](const ProjectionResult& r) { return r.solve.iterations; })
      .def_property_readonly("converged", [](const ProjectionResult& r) { return r.solve.converged; })
      .def_property_readonly("relative_residual", [](const ProjectionResult& r) { return r.solve.relative_residual; })
      .def_property_readonly("galerkin_residual", [](const ProjectionResult& r) { return r.galerkin_residual; })
      .def_property_readonly("epsilon", [](const ProjectionResult& r) { return r.error.epsilon; })
      .def_property_readonly("source_energy", [](const ProjectionResult& r) { return r.error.source_energy; })
      .def_property_readonly("relative_error", [](const ProjectionResult& r) { return r.error.relative(); })
      .def_property_readonly("outside_points", [](const ProjectionResult& r) { return r.outside_points; });

  m.def("project", [](const Mesh& target, const TemporalGrid& grid, std::shared_ptr<const SourceField> source,
                      int space_order, int time_points, double tolerance, std::size_t max_iterations,
                      Preconditioner preconditioner, OutsidePolicy policy, unsigned threads, bool allow_unconverged) {
    ProjectionProblem problem{target, grid, std::move(source)};
    problem.quadrature = {space_order, time_points};
    problem.solver.tolerance = tolerance;
    problem.solver.max_iterations = max_iterations;
    problem.solver.preconditioner = preconditioner;
    problem.policy = policy;
    problem.allow_unconverged = allow_unconverged;
    // Python callables need the GIL, so they run on the calling thread.
    if (dynamic_cast<const FunctionField*>(problem.source.get())) {
      problem.threads = 1;
      return project(problem);
    }
    problem.threads = threads;
    py::gil_scoped_release release;
    return project(problem);
  }, py::arg("target"), py::arg("grid"), py::arg("source"), py::arg("space_order") = 4, py::arg("time_points") = 2,
     py::arg("tolerance") = 1e-10, py::arg("max_iterations") = 0, py::arg("preconditioner") = Preconditioner::jacobi,
     py::arg("policy") = OutsidePolicy::zero, py::arg("threads") = 1, py::arg("allow_unconverged") = false,
     "Space-time Galerkin projection of `source` onto the edge x hat space of (target, grid).");

  m.def("error_norm", [](const SourceField& source, const Array& x, const Mesh& mesh, const TemporalGrid& grid,
                         int space_order, int time_points) {
    const auto e = error_norm(source, from_numpy(x), mesh, EdgeTable(mesh), grid, {space_order, time_points});
    return py::make_tuple(e.epsilon, e.source_energy);
  }, py::arg("source"), py::arg("x"), py::arg("mesh"), py::arg("grid"), py::arg("space_order") = 4,
     py::arg("time_points") = 2, "Returns (epsilon_H, source_energy).");
}
