"""Finite workbench for monadic n x m-valued Lukasiewicz-Moisil algebras."""

from .core import (
    Caps, CapExceeded, ConsistencyError, FiniteAlgebra, Morphism, Partition, Rejected,
    Report, StructuralError, WorkbenchError,
)
from .lm import LmAlgebra
from .fixtures import fixture

__all__ = [
    "Caps", "CapExceeded", "ConsistencyError", "FiniteAlgebra", "LmAlgebra", "Morphism",
    "Partition", "Rejected", "Report", "StructuralError", "WorkbenchError", "fixture",
]
