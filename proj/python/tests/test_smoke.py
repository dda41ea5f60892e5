import math

import numpy as np
import pytest

import stgp


def unit_square(n, mu=1.0):
    return stgp.generate_structured_mesh(stgp.MeshKind.unit_square_tri, n, mu)


def test_mesh_from_arrays():
    nodes = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    elements = np.array([[0, 1, 2], [0, 2, 3]])
    mesh = stgp.Mesh(nodes, elements, [1.0, 2.0])
    assert mesh.dim == 2
    assert mesh.edge_count == 5
    assert (0, 2) in mesh.edges()
    assert stgp.read_mesh(stgp.write_mesh(mesh)) == mesh


def test_mesh_errors_are_typed():
    with pytest.raises(stgp.MeshError):
        stgp.Mesh(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]), np.array([[0, 1, 2]]), [1.0])
    with pytest.raises(stgp.ParseError):
        stgp.read_mesh("stgp-mesh 1\ndim 7\n")


def test_self_projection():
    mesh = unit_square(3)
    grid = stgp.TemporalGrid.uniform(0.0, 1.0, 4)
    rng = np.random.default_rng(1)
    dofs = rng.normal(size=(mesh.edge_count, len(grid)))
    result = stgp.project(mesh, grid, stgp.DiscreteField(mesh, grid, dofs))
    assert result.converged
    assert np.linalg.norm(result.x - dofs) <= 1e-8 * np.linalg.norm(dofs)
    assert result.relative_error <= 1e-8


def test_constant_field_is_reproduced():
    target = unit_square(4)
    grid = stgp.TemporalGrid([0.0, 0.3, 1.0])
    result = stgp.project(target, grid, stgp.AnalyticField.constant(2, [1.0, 0.0]), threads=2)
    projected = stgp.DiscreteField(target, grid, result.x)
    for t, h in projected.probe([0.37, 0.61], 5):
        assert h == pytest.approx((1.0, 0.0), abs=1e-8)


def test_python_callable_source_and_error_norm():
    mesh = unit_square(4)
    grid = stgp.TemporalGrid.uniform(0.0, 1.0, 3)
    field = stgp.FunctionField(2, lambda x, t: [math.sin(x[1]) * (1 + t), math.sin(x[0])], 0.0, 1.0)
    result = stgp.project(mesh, grid, field)
    eps, energy = stgp.error_norm(field, result.x, mesh, grid)
    assert eps == pytest.approx(result.epsilon, rel=1e-12)
    assert 0.0 < eps < energy


def test_kronecker_identity_against_numpy():
    mesh = unit_square(2, mu=3.0)
    grid = stgp.TemporalGrid([0.0, 0.5, 0.75, 1.5])
    data, indices, indptr = stgp.spatial_mass(mesh)
    m = mesh.edge_count
    a = np.zeros((m, m))
    for i in range(m):
        for p in range(indptr[i], indptr[i + 1]):
            a[i, indices[p]] = data[p]
    b = stgp.temporal_gram(grid)
    assert np.allclose(a, a.T)
    assert np.allclose(b.sum(axis=1), [0.25, 0.375, 0.5, 0.375])
    source = stgp.AnalyticField.sinusoidal(2, 1.0, 2.0)
    result = stgp.project(mesh, grid, source, tolerance=1e-12)
    c = a @ result.x @ b
    x_dense = np.linalg.solve(np.kron(b.T, a), c.flatten(order="F")).reshape((m, len(grid)), order="F")
    assert np.allclose(x_dense, result.x, rtol=1e-10, atol=1e-12)


def test_field_text_round_trip():
    grid = stgp.TemporalGrid([0.0, 0.5])
    dofs = np.arange(6, dtype=float).reshape(3, 2)
    text = stgp.write_field("tri.mesh", grid, dofs)
    name, back_grid, back = stgp.read_field(text)
    assert name == "tri.mesh"
    assert back_grid.times == [0.0, 0.5]
    assert np.array_equal(back, dofs)
    with pytest.raises(stgp.ParseError):
        stgp.read_field(text.replace("times 0 0.5", "times 0 0"))


def test_time_outside_span_is_a_domain_error():
    mesh = unit_square(2)
    grid = stgp.TemporalGrid.uniform(0.0, 1.0, 2)
    field = stgp.DiscreteField(mesh, grid, np.zeros((mesh.edge_count, 2)))
    with pytest.raises(stgp.DomainError):
        field.eval([0.5, 0.5], 2.0)
    with pytest.raises(stgp.DomainError):
        stgp.project(mesh, stgp.TemporalGrid.uniform(0.0, 2.0, 3), field)
