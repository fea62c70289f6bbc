"""Absorb the linear term into the quadratic form via a variable fixed to 1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import QpInstance, validate

PROJECTION_TOL = 1e-8


class InternalSolverError(RuntimeError):
    """A postcondition of the solver pipeline failed."""


@dataclass(frozen=True)
class HomogenizedInstance:
    inner: QpInstance
    original_n: int
    was_homogenized: bool


def hide_linear_term(inst: QpInstance) -> HomogenizedInstance:
    """Return the equivalent instance with zero linear term.

    The auxiliary variable ``w`` is appended last with bounds ``[1, 1]`` and
    the quadratic matrix becomes ``[[Q, q/2], [q'/2, 0]]``.  Instances that
    already have ``q == 0`` are passed through untouched.
    """
    if not inst.has_linear_term:
        return HomogenizedInstance(inst, inst.n, False)
    half = Fraction(1, 2) if inst.exact else 0.5
    one = Fraction(1) if inst.exact else 1.0
    zero = Fraction(0) if inst.exact else 0.0
    hq = tuple(half * v for v in inst.q)
    Q = tuple(row + (hq[i],) for i, row in enumerate(inst.Q)) + (hq + (zero,),)
    inner = QpInstance(Q, (zero,) * (inst.n + 1), inst.lower + (one,),
                       inst.upper + (one,), inst.exact)
    return HomogenizedInstance(validate(inner), inst.n, True)


def project_solution(h: HomogenizedInstance, x_prime) -> tuple:
    """Map a point of ``h.inner`` back to the original variables."""
    x_prime = tuple(x_prime)
    if not h.was_homogenized:
        return x_prime
    if len(x_prime) != h.original_n + 1:
        raise InternalSolverError("homogenized point has the wrong length")
    w = x_prime[-1]
    ok = w == 1 if h.inner.exact else abs(w - 1.0) <= PROJECTION_TOL
    if not ok:
        raise InternalSolverError(f"auxiliary coordinate is {w}, expected 1")
    return x_prime[:-1]
