"""Space-time Galerkin projection of edge-element fields between meshes and time grids."""

from ._stgp import (
    AnalyticField,
    ArgumentError,
    ConvergenceError,
    DiscreteField,
    DomainError,
    Error,
    FunctionField,
    IoError,
    Mesh,
    MeshError,
    MeshKind,
    OutsidePolicy,
    ParseError,
    Preconditioner,
    ProjectionResult,
    SourceField,
    TemporalGrid,
    edge_circulations,
    error_norm,
    generate_structured_mesh,
    project,
    read_field,
    read_mesh,
    read_mesh_file,
    spatial_mass,
    temporal_gram,
    write_field,
    write_mesh,
)

__all__ = [
    "AnalyticField",
    "ArgumentError",
    "ConvergenceError",
    "DiscreteField",
    "DomainError",
    "Error",
    "FunctionField",
    "IoError",
    "Mesh",
    "MeshError",
    "MeshKind",
    "OutsidePolicy",
    "ParseError",
    "Preconditioner",
    "ProjectionResult",
    "SourceField",
    "TemporalGrid",
    "edge_circulations",
    "error_norm",
    "generate_structured_mesh",
    "project",
    "read_field",
    "read_mesh",
    "read_mesh_file",
    "spatial_mass",
    "temporal_gram",
    "write_field",
    "write_mesh",
]
