"""Linear dependence graphs of F_q^n: construction, exact spectra, invariant oracles."""
from .exceptions import CapacityError, DisconnectedGraphError, InvalidFieldError, LinDepError
from .gf import FieldElement, FieldSpec, find_irreducible
from .graph import DepGraph, build_graph, build_windmill
from .poly import ExactPoly

__all__ = [
    "CapacityError", "DisconnectedGraphError", "InvalidFieldError", "LinDepError",
    "FieldElement", "FieldSpec", "find_irreducible",
    "DepGraph", "build_graph", "build_windmill", "ExactPoly",
]
__version__ = "0.1.0"
