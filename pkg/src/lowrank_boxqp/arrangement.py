"""Covectors of the central arrangement ``{y : g_i^T y = 0}`` (faces of the zonotope).

Enumeration works in the row space of ``G``: pick a basis of rows, compute
the cocircuits (sign vectors of the one-dimensional cells), then close the
set under composition ``(s o t)_i = s_i if s_i != 0 else t_i``.  For a
realizable oriented matroid every covector is a composition of cocircuits,
so the closure is exactly the set of realizable sign vectors.  Each cell
carries a witness point built alongside the composition
(``y_s + eps * y_t`` with ``eps`` small enough to keep the signs of ``y_s``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .linalg import nullspace, rref, transpose
from .lp import lp_feasible
from .numeric import const, converter

SIGN_TOL = 1e-9

# +1 < 0 < -1 on the first differing index
_ORDER_KEY = {1: 0, 0: 1, -1: 2}


@dataclass(frozen=True)
class Cell:
    sigma: tuple
    witness: tuple


def mirror(sigma: Iterable[int]) -> tuple:
    return tuple(-s for s in sigma)


def order_key(sigma) -> tuple:
    return tuple(_ORDER_KEY[s] for s in sigma)


def sign_vector(G, y, exact: bool = True, tol: float = SIGN_TOL) -> tuple:
    """Sign of ``g_i^T y`` for every column; float mode uses a relative threshold."""
    d = len(G)
    n = len(G[0]) if d else 0
    out = []
    ynorm = max((abs(float(v)) for v in y), default=0.0)
    for i in range(n):
        v = sum(G[k][i] * y[k] for k in range(d))
        if exact:
            out.append((v > 0) - (v < 0))
        else:
            gnorm = max(abs(float(G[k][i])) for k in range(d))
            out.append(0 if abs(v) <= tol * gnorm * ynorm else (1 if v > 0 else -1))
    return tuple(out)


def realizable(G, sigma, exact: bool = True, rule: str = "bland"):
    """LP certificate: a ``y`` with the prescribed signs, or None.

    Strict signs are normalised to ``g_i^T y >= 1`` / ``<= -1``, which is
    no loss of generality because the arrangement is central.
    """
    d = len(G)
    n = len(sigma)
    zero = const(0, exact)
    if d == 0:
        return () if all(s == 0 for s in sigma) else None
    if all(s == 0 for s in sigma):
        return tuple([zero] * d)
    strict = [i for i in range(n) if sigma[i] != 0]
    nvar = d + len(strict)
    rows, rhs = [], []
    slack = {i: d + k for k, i in enumerate(strict)}
    for i in range(n):
        row = [zero] * nvar
        s = sigma[i]
        for k in range(d):
            row[k] = G[k][i] * s if s else G[k][i]
        if s:
            row[slack[i]] = -1
            rhs.append(1)
        else:
            rhs.append(0)
        rows.append(row)
    lower = [None] * d + [0] * len(strict)
    upper = [None] * nvar
    sol = lp_feasible(rows, rhs, lower, upper, exact=exact, rule=rule)
    if sol is None:
        return None
    return tuple(sol[:d])


def _canonical(sigma: np.ndarray) -> tuple[np.ndarray, bool]:
    nz = np.flatnonzero(sigma)
    if len(nz) and sigma[nz[0]] < 0:
        return -sigma, True
    return sigma, False


class _Arrangement:
    """Row-space coordinates of the arrangement."""

    def __init__(self, G, exact: bool, tol: float):
        self.exact = exact
        self.tol = tol
        self.d = len(G)
        self.n = len(G[0]) if self.d else 0
        conv = converter(exact)
        G = [[conv(v) for v in row] for row in G]
        if not exact:
            scale = max((abs(v) for row in G for v in row), default=0.0)
            for i in range(self.n):
                if max(abs(G[k][i]) for k in range(self.d)) <= tol * scale:
                    for k in range(self.d):
                        G[k][i] = 0.0
        self.G = G
        if self.d and self.n:
            _, piv = rref(transpose(G), exact)
        else:
            piv = []
        self.rows = piv
        self.rk = len(piv)
        self.Ghat = [G[k] for k in piv]
        self.gnorm = [max((abs(float(G[k][i])) for k in range(self.d)), default=0.0)
                      for i in range(self.n)]

    def values(self, z):
        """``g_i^T y`` for all columns, ``y`` given in basis-row coordinates."""
        Gh = self.Ghat
        return [sum(Gh[k][i] * z[k] for k in range(self.rk)) for i in range(self.n)]

    def signs(self, vals):
        return np.array([(v > 0) - (v < 0) for v in vals], dtype=np.int8)

    def clean(self, z, vals):
        """Float mode: zero out ``|g_i^T y| <= tol * |g_i| * |y|``."""
        ynorm = max(abs(v) for v in z)
        return [0.0 if abs(v) <= self.tol * g * ynorm else v
                for v, g in zip(vals, self.gnorm)]

    def lift(self, z) -> tuple:
        zero = const(0, self.exact)
        y = [zero] * self.d
        for k, row in enumerate(self.rows):
            y[row] = z[k]
        return tuple(y)

    def hyperplane_reps(self):
        """One column index per distinct nonzero hyperplane (exact dedupe only)."""
        seen = {}
        for i in range(self.n):
            col = [self.Ghat[k][i] for k in range(self.rk)]
            lead = next((v for v in col if v != 0), None)
            if lead is None:
                continue
            if self.exact:
                key = tuple(v / lead for v in col)
            else:
                key = tuple(round(v / lead, 12) for v in col)
            seen.setdefault(key, i)
        return sorted(seen.values())

    def cocircuits(self):
        """List of ``(sign array, z, values)`` for the rays of the arrangement."""
        out = {}
        one = const(1, self.exact)
        if self.rk == 1:
            candidates = [[one]]
        else:
            reps = self.hyperplane_reps()
            candidates = []
            for S in combinations(reps, self.rk - 1):
                M = [[self.Ghat[k][i] for k in range(self.rk)] for i in S]
                ns = nullspace(M, self.exact)
                if len(ns) == 1:
                    candidates.append(ns[0])
        for z in candidates:
            vals = self.values(z)
            if not self.exact:
                vals = self.clean(z, vals)
            sg = self.signs(vals)
            key = sg.tobytes()
            if key in out:
                continue
            out[key] = (sg, z, vals)
            neg = (-sg).astype(np.int8)
            out[neg.tobytes()] = (neg, [-v for v in z], [-v for v in vals])
        return list(out.values())


def _compose_witness(z_s, v_s, z_t, v_t, exact):
    """Witness for ``s o t``: ``z_s + eps z_t`` with signs of ``z_s`` preserved."""
    ratio = None
    for a, b in zip(v_s, v_t):
        if a != 0 and b != 0:
            r = abs(a) / abs(b)
            if ratio is None or r < ratio:
                ratio = r
    half = const(0.5, exact)
    eps = half if ratio is None else min(half, ratio * half)
    z = [a + eps * b for a, b in zip(z_s, z_t)]
    v = [a + eps * b for a, b in zip(v_s, v_t)]
    return z, v


def enumerate_covectors(G, exact: bool = True, tol: float = SIGN_TOL) -> list[Cell]:
    """All realizable sign vectors of the central arrangement of ``G``'s columns.

    Returned in the deterministic order ``+1 < 0 < -1`` (lexicographic on
    the first differing index).  Zero columns get sign 0 in every cell.
    """
    arr = _Arrangement(G, exact, tol)
    n = arr.n
    zero = const(0, exact)
    origin = Cell((0,) * n, tuple([zero] * arr.d))
    if arr.rk == 0:
        return [origin]

    cocirc = arr.cocircuits()
    C = np.array([c[0] for c in cocirc], dtype=np.int8)
    known: dict[bytes, tuple] = {}
    frontier = []
    for sg, z, vals in cocirc:
        canon, flipped = _canonical(sg)
        if flipped:
            continue
        known[canon.tobytes()] = (canon, z, vals)
        frontier.append(canon.tobytes())

    while frontier:
        nxt = []
        for key in frontier:
            sg, z_s, v_s = known[key]
            comps = np.where(sg != 0, sg, C)
            # first index where each composition first becomes nonzero
            nzmask = comps != 0
            first = nzmask.argmax(axis=1)
            flip = comps[np.arange(len(comps)), first] < 0
            canon = np.where(flip[:, None], -comps, comps).astype(np.int8)
            _, idx = np.unique(canon, axis=0, return_index=True)
            for t in sorted(idx):
                ck = canon[t].tobytes()
                if ck in known:
                    continue
                _, z_t, v_t = cocirc[t]
                z, v = _compose_witness(z_s, v_s, z_t, v_t, exact)
                if flip[t]:
                    z = [-a for a in z]
                    v = [-a for a in v]
                known[ck] = (canon[t], z, v)
                nxt.append(ck)
        frontier = nxt

    cells = [origin]
    for sg, z, _ in known.values():
        sigma = tuple(int(s) for s in sg)
        y = arr.lift(z)
        cells.append(Cell(sigma, y))
        cells.append(Cell(mirror(sigma), tuple(-a for a in y)))
    cells.sort(key=lambda c: order_key(c.sigma))
    return cells


def face_dimension(G, sigma, exact: bool = True) -> int:
    """Dimension of the zonotope face: rank of the columns where ``sigma`` is 0."""
    from .linalg import rank
    Z = [i for i, s in enumerate(sigma) if s == 0]
    if not Z or not G:
        return 0
    return rank([[G[k][i] for i in Z] for k in range(len(G))], exact)
