"""Explicit solutions of the Oberwolfach problem for two-table shapes."""

from .bounds import StructureBounds, TargetSplit, bound_tables, split_target, structure_bounds
from .core import Decomposition, StructuredGraph, classify, cs, verify_decomposition
from .extend import extend, extend_exhaustive, verify_extension
from .graceful import GracefulLabeling, ZillionShape, search_graceful, verify_graceful
from .halving import OneTwoDecomposition, check_extension_condition, decompose_solution, halve, redistribute
from .pipeline import SolveCertificate, SolveRequest, general_mu2, solve, solve_double, verify_certificate
from .pyramidal import PyramidalSolution, check_matching_property, check_starter, double

__all__ = [
    "Decomposition",
    "GracefulLabeling",
    "OneTwoDecomposition",
    "PyramidalSolution",
    "SolveCertificate",
    "SolveRequest",
    "StructureBounds",
    "StructuredGraph",
    "TargetSplit",
    "ZillionShape",
    "bound_tables",
    "check_extension_condition",
    "check_matching_property",
    "check_starter",
    "classify",
    "cs",
    "decompose_solution",
    "double",
    "extend",
    "extend_exhaustive",
    "general_mu2",
    "halve",
    "redistribute",
    "search_graceful",
    "solve",
    "solve_double",
    "split_target",
    "structure_bounds",
    "verify_certificate",
    "verify_decomposition",
    "verify_extension",
    "verify_graceful",
]
