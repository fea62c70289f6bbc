"""Rank factorization, the lifted quadratic form, and minimal-rank representations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .linalg import rank, rref, transpose
from .numeric import const, converter, to_fraction


@dataclass(frozen=True)
class Factorization:
    """``Q = U^T V`` with ``G = [U; V]`` and ``W = 1/2 [[0, I], [I, 0]]``."""

    r: int
    U: tuple
    V: tuple
    G: tuple
    W: tuple


@dataclass(frozen=True)
class Signature:
    p: int
    q_neg: int
    s: int


def _rows(M):
    return tuple(tuple(row) for row in M)


def _is_exact(M) -> bool:
    return not any(isinstance(v, float) for row in M for v in row)


def rank_factorize(Q, exact: bool | None = None) -> Factorization:
    """Factor ``Q`` as ``U^T V`` with ``r = rank(Q)`` rows each.

    Uses the column-row decomposition from Gauss-Jordan elimination:
    ``V`` is the nonzero part of the reduced row echelon form and the rows
    of ``U`` are the pivot columns of ``Q``.
    """
    if exact is None:
        exact = _is_exact(Q)
    n = len(Q)
    R, piv = rref(Q, exact)
    r = len(piv)
    V = [R[k] for k in range(r)]
    conv = converter(exact)
    U = [[conv(Q[i][c]) for i in range(n)] for c in piv]
    G = U + V
    return Factorization(r, _rows(U), _rows(V), _rows(G), _rows(lifted_form(r, exact)))


def lifted_form(r: int, exact: bool = True):
    """The 2r x 2r matrix W with ``y^T W y = u^T v`` for ``y = (u; v)``."""
    half = const(0.5, exact)
    zero = const(0, exact)
    W = [[zero] * (2 * r) for _ in range(2 * r)]
    for k in range(r):
        W[k][r + k] = half
        W[r + k][k] = half
    return W


def build_reduction(f: Factorization):
    """Return ``(G, W)`` so that ``x^T Q x == (Gx)^T W (Gx)``."""
    if f.r == 0:
        raise ValueError("rank-zero factorization has no reduction; short-circuit the caller")
    return f.G, f.W


def symmetric_part(Q, exact: bool):
    half = Fraction(1, 2) if exact else 0.5
    n = len(Q)
    return [[half * (Q[i][j] + Q[j][i]) for j in range(n)] for i in range(n)]


def congruence_diagonalize(S):
    """Exact symmetric elimination: returns ``(D, P)`` with ``P^T S P = diag(D)``.

    A zero diagonal with a nonzero off-diagonal entry ``S[i][j]`` is repaired by
    the congruence ``x_i += x_j`` which puts ``2 S[i][j]`` on the diagonal.
    """
    n = len(S)
    S = [[Fraction(v) for v in row] for row in S]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def add_col(dst, src, f):
        # S <- E^T S E, P <- P E for E = I + f e_src e_dst^T
        for i in range(n):
            S[i][dst] += f * S[i][src]
        for j in range(n):
            S[dst][j] += f * S[src][j]
        for i in range(n):
            P[i][dst] += f * P[i][src]

    def swap(a, b):
        for row in S:
            row[a], row[b] = row[b], row[a]
        S[a], S[b] = S[b], S[a]
        for row in P:
            row[a], row[b] = row[b], row[a]

    for k in range(n):
        piv = next((i for i in range(k, n) if S[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                         if S[i][j] != 0), None)
            if pair is None:
                break
            add_col(pair[0], pair[1], Fraction(1))
            piv = pair[0]
        if piv != k:
            swap(piv, k)
        d = S[k][k]
        for t in range(k + 1, n):
            if S[k][t] != 0:
                add_col(t, k, -S[k][t] / d)
    return [S[i][i] for i in range(n)], P


def signature(Q, exact: bool | None = None) -> Signature:
    """Inertia ``(p, q_neg, s)`` of the symmetric part of ``Q``."""
    if exact is None:
        exact = _is_exact(Q)
    n = len(Q)
    S = symmetric_part(Q, exact)
    if exact:
        D, _ = congruence_diagonalize(S)
        p = sum(1 for v in D if v > 0)
        qn = sum(1 for v in D if v < 0)
    else:
        arr = np.array(S, dtype=float)
        scale = np.abs(arr).max() if n else 0.0
        tol = 1e-9 * (scale if scale > 0 else 1.0)
        ev = np.linalg.eigvalsh(arr) if n else np.zeros(0)
        p = int((ev > tol).sum())
        qn = int((ev < -tol).sum())
    return Signature(p, qn, n - p - qn)


def _invert(P):
    n = len(P)
    aug = [list(P[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, piv = rref(aug, True, 0, list(range(n)))
    if len(piv) != n:
        raise ArithmeticError("congruence transform is singular")
    return [row[n:] for row in R]


def _square_class(v: Fraction) -> int:
    from sympy.ntheory.factor_ import core
    return int(core(abs(v.numerator) * v.denominator))


def _pairing(D, rational_only: bool):
    """Pair positive with negative diagonal entries, same square class first.

    Pairs whose product is a rational square give rational rank-one blocks;
    with ``rational_only`` the remaining entries stay unpaired.
    """
    pos = [i for i, v in enumerate(D) if v > 0]
    neg = [i for i, v in enumerate(D) if v < 0]
    pairs = []
    by_class: dict[int, list[int]] = {}
    for j in neg:
        by_class.setdefault(_square_class(D[j]), []).append(j)
    leftover_pos = []
    for i in pos:
        bucket = by_class.get(_square_class(D[i]))
        if bucket:
            pairs.append((i, bucket.pop(0)))
        else:
            leftover_pos.append(i)
    if not rational_only:
        leftover_neg = sorted(j for bucket in by_class.values() for j in bucket)
        pairs.extend(zip(leftover_pos, leftover_neg))
    return pairs


def _skew_terms(D, P, pairs):
    """For each pair (i, j): the rational matrix P^-T (E_ij - E_ji) P^-1 and |d_i d_j|."""
    Pinv = _invert(P)
    n = len(D)
    out = []
    for i, j in pairs:
        ri, rj = Pinv[i], Pinv[j]
        K = [[ri[a] * rj[b] - rj[a] * ri[b] for b in range(n)] for a in range(n)]
        out.append((K, abs(D[i] * D[j])))
    return out


def minimal_rank_matrix(Q, exact: bool | None = None):
    """A matrix with the same quadratic form as ``Q`` and rank ``max(p, q_neg)``.

    The symmetric part ``S`` is diagonalised by congruence and each
    (positive, negative) pair of diagonal entries ``(a, -b)`` is turned into
    the rank-one block ``[[a, c], [-c, -b]]`` with ``c = sqrt(ab)``.

    Exact input returns a ``sympy.Matrix``: the entries live in a real
    quadratic extension of the rationals because ``c`` need not be rational
    (``x^2 - 2y^2`` has no rational rank-one matrix).  Float input returns a
    ``numpy`` array.
    """
    if exact is None:
        exact = _is_exact(Q)
    n = len(Q)
    if not exact:
        return _minimal_rank_float(np.array(Q, dtype=float))
    import sympy

    S = symmetric_part(Q, True)
    D, P = congruence_diagonalize(S)
    pairs = _pairing(D, rational_only=False)
    out = sympy.Matrix(n, n, lambda a, b: sympy.Rational(S[a][b].numerator, S[a][b].denominator))
    for K, prod in _skew_terms(D, P, pairs):
        c = sympy.sqrt(sympy.Rational(prod.numerator, prod.denominator))
        out += c * sympy.Matrix(n, n, lambda a, b: sympy.Rational(K[a][b].numerator,
                                                                    K[a][b].denominator))
    return out


def rational_low_rank_matrix(Q):
    """Rational matrix with the same quadratic form as ``Q`` and rank at most rank(S).

    Only pairs whose diagonal product is a rational square are merged, so the
    rank lies between ``max(p, q_neg)`` and ``p + q_neg``.  This is what the
    exact-mode solver uses for its optional preprocessing.
    """
    n = len(Q)
    S = symmetric_part(Q, True)
    D, P = congruence_diagonalize(S)
    out = [list(row) for row in S]
    for K, prod in _skew_terms(D, P, _pairing(D, rational_only=True)):
        c = _rational_sqrt(prod)
        for a in range(n):
            for b in range(n):
                if K[a][b] != 0:
                    out[a][b] += c * K[a][b]
    return tuple(tuple(to_fraction(v) for v in row) for row in out)


def _rational_sqrt(v: Fraction) -> Fraction:
    from math import isqrt
    a, b = isqrt(v.numerator), isqrt(v.denominator)
    if a * a != v.numerator or b * b != v.denominator:
        raise ArithmeticError(f"{v} is not a rational square")
    return Fraction(a, b)


def _minimal_rank_float(Q):
    S = 0.5 * (Q + Q.T)
    if S.size == 0:
        return S
    ev, vecs = np.linalg.eigh(S)
    scale = np.abs(S).max()
    tol = 1e-9 * (scale if scale > 0 else 1.0)
    pos = [k for k in range(len(ev)) if ev[k] > tol]
    neg = [k for k in range(len(ev)) if ev[k] < -tol]
    out = S.copy()
    for i, j in zip(pos, neg):
        c = np.sqrt(ev[i] * -ev[j])
        vi, vj = vecs[:, i], vecs[:, j]
        out += c * (np.outer(vi, vj) - np.outer(vj, vi))
    return out


def symmetrization_rank_gap(Q) -> tuple[int, int]:
    """``(rank(Q), rank(Q + Q^T))``; the second never exceeds twice the first."""
    exact = _is_exact(Q)
    n = len(Q)
    QT = transpose(Q, n)
    S2 = [[Q[i][j] + QT[i][j] for j in range(n)] for i in range(n)]
    return rank(Q, exact), rank(S2, exact)

