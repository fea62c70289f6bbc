"""Phase-1 linear programming: find a point of ``{x : Ax = b, lo <= x <= hi}``."""

from __future__ import annotations

import math

from . import _kernels
from .linalg import rank_tol, rref
from .numeric import const, converter, to_rational

LP_TOL = 1e-8

_RULES = {"bland": _kernels.BLAND, "dantzig": _kernels.DANTZIG}
# Bland's rule with the variable priority reversed
REVERSED = "bland-reversed"
RULES = (*_RULES, REVERSED)


def _bound(v, exact):
    if v is None:
        return None
    if isinstance(v, float) and math.isinf(v):
        return None
    return to_rational(v) if exact else float(v)


def lp_feasible(eq_lhs, eq_rhs, var_lower, var_upper, *, exact: bool = True,
                rule: str = "bland", tol: float = LP_TOL):
    """Return a point satisfying ``eq_lhs @ x == eq_rhs`` and the bounds, or None.

    Bounds may be ``None`` or ``+-inf``.  Free variables are pivoted into
    the basis during presolve and never leave it, so they need no split.
    The result is deterministic for a given input and ``rule``: one of
    ``"bland"``, ``"dantzig"`` (largest reduced cost, falling back to Bland
    on long degenerate runs) or ``"bland-reversed"``.
    """
    if rule == REVERSED:
        sol = lp_feasible([row[::-1] for row in eq_lhs], eq_rhs, var_lower[::-1],
                          var_upper[::-1], exact=exact, rule="bland", tol=tol)
        return None if sol is None else sol[::-1]
    if rule not in _RULES:
        raise ValueError(f"unknown pivot rule {rule!r}")
    d = len(var_lower)
    if len(var_upper) != d:
        raise ValueError("bound vectors differ in length")
    m = len(eq_rhs)
    if len(eq_lhs) != m or any(len(row) != d for row in eq_lhs):
        raise ValueError("constraint matrix shape does not match")
    ftol = 0 if exact else tol
    zero = const(0, exact)

    lo = [_bound(v, exact) for v in var_lower]
    hi = [_bound(v, exact) for v in var_upper]
    for j in range(d):
        if lo[j] is not None and hi[j] is not None and lo[j] > hi[j] + ftol:
            return None

    # column transforms: x_j = shift + sign * y_j with y_j >= 0
    kind = []  # 'free' | 'fixed' | 'pos'
    shift = [zero] * d
    sign = [1] * d
    ub = [None] * d
    for j in range(d):
        if lo[j] is None and hi[j] is None:
            kind.append("free")
        elif lo[j] is not None and hi[j] is not None and hi[j] - lo[j] <= ftol:
            kind.append("fixed")
            shift[j] = lo[j]
        elif lo[j] is not None:
            kind.append("pos")
            shift[j] = lo[j]
            ub[j] = None if hi[j] is None else hi[j] - lo[j]
        else:
            kind.append("pos")
            shift[j] = hi[j]
            sign[j] = -1

    conv = converter(exact)
    active = [j for j in range(d) if kind[j] != "fixed"]
    aug = []
    for i in range(m):
        row = [conv(v) for v in eq_lhs[i]]
        rhs = conv(eq_rhs[i])
        for j in range(d):
            if shift[j] != 0 and row[j] != 0:
                rhs -= row[j] * shift[j]
        aug.append([row[j] * sign[j] for j in active] + [rhs])

    x = list(shift)
    if not active:
        for row in aug:
            if abs(row[-1]) > ftol * (1 + _row_scale(row)):
                return None
        return x

    ncol = len(active)
    free_cols = [c for c, j in enumerate(active) if kind[j] == "free"]
    pos_cols = [c for c, j in enumerate(active) if kind[j] != "free"]
    if aug:
        etol = 0 if exact else rank_tol(aug, False)
        R, piv = rref(aug, exact, etol, free_cols + pos_cols)
    else:
        R, piv = [], []

    for k in range(len(piv), len(R)):
        if abs(R[k][-1]) > ftol * (1 + _row_scale(R[k])):
            return None

    is_free_col = [False] * ncol
    for c in free_cols:
        is_free_col[c] = True

    # tableau over the bounded columns
    tcols = pos_cols
    tindex = {c: t for t, c in enumerate(tcols)}
    kept = [k for k, c in enumerate(piv) if not is_free_col[c]]
    K = len(tcols)
    T, beta, basis = [], [], []
    at_upper = [False] * K
    tub = [ub[active[c]] for c in tcols]
    n_art = 0
    art_rows = []
    for k in kept:
        c = piv[k]
        b = R[k][-1]
        coeffs = [R[k][c2] for c2 in tcols]
        u = tub[tindex[c]]
        if b < -ftol:
            T.append([-v for v in coeffs])
            beta.append(-b)
            art_rows.append(len(T) - 1)
            basis.append(None)
        elif u is not None and b > u + ftol:
            T.append(coeffs)
            at_upper[tindex[c]] = True
            beta.append(b - u)
            art_rows.append(len(T) - 1)
            basis.append(None)
        else:
            if not exact:
                b = min(max(b, 0.0), u) if u is not None else max(b, 0.0)
            T.append(coeffs)
            beta.append(b)
            basis.append(tindex[c])
    n_art = len(art_rows)
    one = const(1, exact)
    for row in T:
        row.extend([zero] * n_art)
    for a, r in enumerate(art_rows):
        T[r][K + a] = one
        basis[r] = K + a
    is_art = [False] * K + [True] * n_art
    all_ub = tub + [None] * n_art
    all_upper = at_upper + [False] * n_art

    if n_art:
        _kernels.phase1(T, beta, basis, all_upper, all_ub, is_art, _RULES[rule], ftol)
        infeas = sum((beta[i] for i in range(len(basis)) if is_art[basis[i]]), zero)
        if infeas > ftol:
            return None

    yval = [zero] * K
    for t in range(K):
        if all_upper[t]:
            yval[t] = all_ub[t]
    for i, bvar in enumerate(basis):
        if bvar < K:
            yval[bvar] = beta[i]

    colval = [zero] * ncol
    for t, c in enumerate(tcols):
        colval[c] = yval[t]
    for k, c in enumerate(piv):
        if not is_free_col[c]:
            continue
        v = R[k][-1]
        for c2 in range(ncol):
            if c2 != c and R[k][c2] != 0:
                v -= R[k][c2] * colval[c2]
        colval[c] = v
    for c, j in enumerate(active):
        x[j] = shift[j] + sign[j] * colval[c]
    if not exact:
        for j in range(d):
            if lo[j] is not None and x[j] < lo[j]:
                x[j] = lo[j]
            if hi[j] is not None and x[j] > hi[j]:
                x[j] = hi[j]
    return x


def _row_scale(row) -> float:
    return max((abs(float(v)) for v in row[:-1]), default=0.0)
