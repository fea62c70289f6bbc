"""Small dense linear algebra on lists of rows, exact or float.

Exact mode (``tol == 0``) pivots on the first nonzero entry; float mode
pivots on the largest magnitude and treats ``|v| <= tol`` as zero.
"""

from __future__ import annotations

from ._kernels import rref as _rref_kernel
from .numeric import const, to_rational

RANK_RTOL = 1e-9


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def max_abs(M) -> float:
    return max((abs(float(v)) for row in M for v in row), default=0.0)


def rank_tol(M, exact: bool) -> float:
    """Absolute zero threshold: 0 in exact mode, 1e-9 * max|entry| otherwise."""
    if exact:
        return 0
    scale = max_abs(M)
    return RANK_RTOL * (scale if scale > 0 else 1.0)


def rref(M, exact: bool, tol=None, col_order=None):
    """Return ``(R, pivots)``; ``R`` is a fresh reduced row echelon copy of ``M``."""
    R = [list(row) for row in M]
    if not R:
        return R, []
    if tol is None:
        tol = rank_tol(M, exact)
    conv = to_rational if exact else float
    R = [[conv(v) for v in row] for row in R]
    if col_order is None:
        col_order = range(len(R[0]))
    pivots = _rref_kernel(R, list(col_order), tol)
    return R, pivots


def rank(M, exact: bool, tol=None) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M, exact, tol)[1])


def nullspace(M, exact: bool, ncols=None, tol=None):
    """Basis of ``{x : M x = 0}`` as a list of vectors (one per free column)."""
    zero, one = const(0, exact), const(1, exact)
    if not M:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    ncols = len(M[0])
    R, pivots = rref(M, exact, tol)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for k, c in enumerate(pivots):
            v[c] = -R[k][f]
        basis.append(v)
    return basis
