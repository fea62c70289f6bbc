"""Per-face stationarity test.

For a sign vector ``sigma`` the coordinates with ``sigma_i = +1`` are fixed
at their upper bound, ``-1`` at the lower bound, and the rest (``free_idx``)
stay in their box.  A point of the face is stationary for ``y^T W y`` when
``2W y`` is orthogonal to the face directions, i.e. ``2W y = A^T lam`` for
the matrix ``A`` whose rows span the orthogonal complement of the free
columns of ``G``.  With ``y = G_A x_A + b`` this becomes the linear system

    A^T lam - 2 W G_A x_A = 2 W b,   lower_A <= x_A <= upper_A,

solved as a phase-1 LP.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homogenize import InternalSolverError
from .linalg import nullspace
from .lp import LP_TOL, lp_feasible
from .model import QpInstance, evaluate
from .numeric import const


@dataclass(frozen=True)
class FaceSystem:
    sigma: tuple
    free_idx: tuple
    fixed_idx: tuple
    fixed_part: tuple
    G_A: tuple
    A: tuple
    b: tuple
    lower_free: tuple
    upper_free: tuple

    @property
    def k(self) -> int:
        return len(self.free_idx)

    @property
    def ell(self) -> int:
        return len(self.A)


@dataclass(frozen=True)
class StationaryCandidate:
    x: tuple
    value: object
    sigma: tuple


def build_face_system(G, lower, upper, sigma, exact: bool = True) -> FaceSystem:
    d = len(G)
    n = len(sigma)
    free = tuple(i for i in range(n) if sigma[i] == 0)
    fixed = tuple(i for i in range(n) if sigma[i] != 0)
    x_b = tuple(upper[i] if sigma[i] > 0 else lower[i] for i in fixed)
    G_A = tuple(tuple(G[k][i] for i in free) for k in range(d))
    # rows of A: basis of {a : a^T G_A = 0}
    G_At = [[G[k][i] for k in range(d)] for i in free]
    A = tuple(tuple(v) for v in nullspace(G_At, exact, ncols=d))
    zero = const(0, exact)
    b = tuple(sum((G[k][i] * xi for i, xi in zip(fixed, x_b)), zero) for k in range(d))
    return FaceSystem(
        tuple(sigma), free, fixed, x_b, G_A, A, b,
        tuple(lower[i] for i in free), tuple(upper[i] for i in free),
    )


def stationary_point(fs: FaceSystem, W, exact: bool = True, rule: str = "bland"):
    """Return ``x_A`` from a feasible point of the face LP, or None if infeasible."""
    d = len(W)
    ell, k = fs.ell, fs.k
    two = 2 if exact else 2.0
    W2 = [[two * v for v in row] for row in W]
    lhs = []
    rhs = []
    for r in range(d):
        row = [fs.A[l][r] for l in range(ell)]
        w = W2[r]
        for c in range(k):
            row.append(-sum(w[t] * fs.G_A[t][c] for t in range(d) if w[t] != 0))
        lhs.append(row)
        rhs.append(sum(w[t] * fs.b[t] for t in range(d) if w[t] != 0))
    lower = [None] * ell + list(fs.lower_free)
    upper = [None] * ell + list(fs.upper_free)
    sol = lp_feasible(lhs, rhs, lower, upper, exact=exact, rule=rule)
    if sol is None:
        return None
    return tuple(sol[ell:])


def reduced_value(G, W, x, exact: bool = True):
    """``(Gx)^T W (Gx)``, equal to ``x^T Q x`` for the factored ``Q`` at O(n r) cost."""
    zero = const(0, exact)
    d = len(G)
    y = [sum((G[k][i] * xi for i, xi in enumerate(x) if xi != 0), zero) for k in range(d)]
    return sum((y[a] * W[a][b] * y[b] for a in range(d) for b in range(d) if W[a][b] != 0), zero)


def assemble_candidate(fs: FaceSystem, x_A, inst: QpInstance, sigma=None,
                       reduction=None) -> StationaryCandidate:
    """Interleave ``x_A`` and the fixed coordinates back into original order.

    With ``reduction=(G, W)`` for a linear-term-free ``inst`` the value is
    computed in the reduced space instead of by ``evaluate``.
    """
    n = len(fs.free_idx) + len(fs.fixed_idx)
    if len(x_A) != fs.k:
        raise ValueError("x_A does not match the free index set")
    x = [None] * n
    for i, v in zip(fs.free_idx, x_A):
        x[i] = v
    for i, v in zip(fs.fixed_idx, fs.fixed_part):
        x[i] = v
    tol = 0 if inst.exact else LP_TOL
    for i in range(n):
        lo, hi = inst.lower[i], inst.upper[i]
        if x[i] < lo - tol or x[i] > hi + tol:
            raise InternalSolverError(f"candidate violates the bounds at index {i}")
        if not inst.exact:
            x[i] = min(max(x[i], lo), hi)
    x = tuple(x)
    if reduction is not None:
        value = reduced_value(*reduction, x, inst.exact)
    else:
        value = evaluate(inst, x)
    return StationaryCandidate(x, value, tuple(sigma if sigma is not None else fs.sigma))
