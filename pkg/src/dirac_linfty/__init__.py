"""Exact derived-bracket L-infinity structures for Lagrangian splittings of quadratic Lie algebras."""

from .kernels import BACKEND
from .scalars import Series, t, truncation
from .report import (ArityBoundError, ConstructionError, GeometricError, InvariantViolation,
                     Report)
from .courant import (LagrangianSplitting, QuadraticLieAlgebra, build_hamiltonian,
                      graph_lagrangian, validate_double, validate_lagrangian)
from .coalgebra import verify_jacobi, verify_morphism
from .derived import (BVTorsor, DerivedLInfty, exp_r, extract_brackets, r_epsilon,
                      structure_of, transport_structure, verify_gauge_equivariance)
from .mc import (complex_blocks, difference_bracket_identity, graph_transform, mc_check,
                 mc_equivalence_certificate, mc_transport)
from .specfile import AlgebraSpec, SpecError, dumps, load, loads
from .catalog import builtin, catalog_names, cybe_check

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Series", "t", "truncation", "Report", "ArityBoundError", "ConstructionError",
    "GeometricError", "InvariantViolation", "LagrangianSplitting", "QuadraticLieAlgebra",
    "build_hamiltonian", "graph_lagrangian", "validate_double", "validate_lagrangian",
    "verify_jacobi", "verify_morphism", "BVTorsor", "DerivedLInfty", "exp_r", "extract_brackets",
    "r_epsilon", "structure_of", "transport_structure", "verify_gauge_equivariance",
    "complex_blocks", "difference_bracket_identity", "graph_transform", "mc_check",
    "mc_equivalence_certificate", "mc_transport", "AlgebraSpec", "SpecError", "dumps", "load",
    "loads", "builtin", "catalog_names", "cybe_check",
]
