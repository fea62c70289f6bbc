"""Exact global maximisation of box-constrained quadratic programs whose matrix has low rank."""

from .model import BoundViolation, DimensionError, InstanceError, QpInstance, evaluate, validate
from .oracle import brute_force_solve, generate_instance
from .solver import Solution, SolverOptions, SolveStats, solve

__version__ = "0.1.0"

__all__ = [
    "BoundViolation", "DimensionError", "InstanceError", "QpInstance", "Solution",
    "SolveStats", "SolverOptions", "brute_force_solve", "evaluate", "generate_instance",
    "solve", "validate",
]
