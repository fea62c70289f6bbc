"""Problem data for ``max x'Qx + q'x  s.t.  lower <= x <= upper``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence


class InstanceError(ValueError):
    """Raised for malformed problem data."""


class DimensionError(InstanceError):
    pass


class BoundViolation(InstanceError):
    def __init__(self, index: int):
        super().__init__(f"bound violation at index {index}")
        self.index = index


def to_scalar(value, exact: bool):
    """Coerce ``value`` to the scalar type of the requested mode.

    In exact mode strings like ``"3/4"`` or ``"0.1"`` and Python floats are
    read by their literal decimal text, so ``0.1`` becomes ``1/10``.
    """
    if exact:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not numbers here")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise InstanceError(f"non-finite value {value!r}")
            return Fraction(repr(value))
        if isinstance(value, str):
            return Fraction(value.strip())
        # numpy scalars and friends
        if hasattr(value, "item"):
            return to_scalar(value.item(), exact)
        return Fraction(value)
    if isinstance(value, str):
        value = Fraction(value.strip())
    out = float(value)
    if not math.isfinite(out):
        raise InstanceError(f"non-finite value {value!r}")
    return out


def to_vector(values, exact: bool) -> tuple:
    return tuple(to_scalar(v, exact) for v in values)


@dataclass(frozen=True)
class QpInstance:
    """Box-constrained quadratic program (maximisation).

    Matrices are tuples of row tuples.  ``Q`` is kept exactly as given;
    it is never symmetrised.
    """

    Q: tuple
    q: tuple
    lower: tuple
    upper: tuple
    exact: bool = True

    @property
    def n(self) -> int:
        return len(self.lower)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    @cached_property
    def has_linear_term(self) -> bool:
        return any(v != 0 for v in self.q)

    @classmethod
    def from_data(cls, Q, q=None, lower=None, upper=None, *, exact: bool = True,
                  check: bool = True) -> "QpInstance":
        """Build an instance from nested sequences, converting scalars."""
        rows = tuple(to_vector(row, exact) for row in Q)
        n = len(rows)
        if q is None:
            q = [0] * n
        if lower is None or upper is None:
            raise InstanceError("both bounds are required")
        inst = cls(rows, to_vector(q, exact), to_vector(lower, exact),
                   to_vector(upper, exact), exact)
        return validate(inst) if check else inst

    def with_mode(self, exact: bool) -> "QpInstance":
        if exact == self.exact:
            return self
        return QpInstance.from_data(self.Q, self.q, self.lower, self.upper, exact=exact)


def validate(inst: QpInstance) -> QpInstance:
    """Return ``inst`` unchanged if it is well formed, else raise."""
    n = len(inst.lower)
    if n < 1:
        raise DimensionError("dimension mismatch: n must be positive")
    if len(inst.upper) != n or len(inst.q) != n:
        raise DimensionError(
            f"dimension mismatch: n={n}, len(q)={len(inst.q)}, len(upper)={len(inst.upper)}")
    if len(inst.Q) != n:
        raise DimensionError(f"dimension mismatch: Q has {len(inst.Q)} rows, expected {n}")
    for i, row in enumerate(inst.Q):
        if len(row) != n:
            raise DimensionError(
                f"dimension mismatch: Q row {i} has {len(row)} entries, expected {n}")
    if not inst.exact:
        for v in (*inst.q, *inst.lower, *inst.upper, *(x for row in inst.Q for x in row)):
            if not math.isfinite(v):
                raise InstanceError("non-finite value in float instance")
    for i, (lo, hi) in enumerate(zip(inst.lower, inst.upper)):
        if lo > hi:
            raise BoundViolation(i)
    return inst


def evaluate(inst: QpInstance, x: Sequence):
    """Objective value x'Qx + q'x in the instance's arithmetic."""
    n = inst.n
    if len(x) != n:
        raise DimensionError(f"dimension mismatch: point has length {len(x)}, expected {n}")
    x = to_vector(x, inst.exact)
    total = 0 if inst.exact else 0.0
    for i in range(n):
        xi = x[i]
        if xi == 0:
            continue
        row = inst.Q[i]
        acc = inst.q[i]
        for j in range(n):
            if row[j] != 0:
                acc += row[j] * x[j]
        total += xi * acc
    return Fraction(total) if inst.exact else float(total)


def is_feasible(inst: QpInstance, x: Sequence, tol: float = 0.0) -> bool:
    return all(lo - tol <= xi <= hi + tol for lo, xi, hi in zip(inst.lower, x, inst.upper))
