"""Brute-force reference solver over all 3^n faces of the box, and instance generation.

The reference solver shares only the LP routine and the objective with the
main pipeline; it never touches the factorization or the arrangement.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

from .linalg import rank
from .lp import LP_TOL, lp_feasible
from .model import InstanceError, QpInstance, evaluate, validate
from .numeric import to_fraction
from .solver import Solution, SolveStats

ORACLE_CAP = 10


class OracleCapExceeded(ValueError):
    pass


def _gradient_matrix(inst: QpInstance):
    n = inst.n
    return [[inst.Q[i][j] + inst.Q[j][i] for j in range(n)] for i in range(n)]


def box_faces(n: int):
    """All sign patterns over the box coordinates, +1 before 0 before -1."""
    return product((1, 0, -1), repeat=n)


def brute_force_solve(inst: QpInstance, cap: int = ORACLE_CAP, rule: str = "bland") -> Solution:
    """Maximum over the stationary points of all box faces."""
    inst = validate(inst)
    n = inst.n
    if n > cap:
        raise OracleCapExceeded(f"n={n} exceeds the oracle cap of {cap}")
    t0 = time.perf_counter()
    M = _gradient_matrix(inst)
    best_x, best_val = None, None
    faces = lps = feasible = 0
    for sigma in box_faces(n):
        faces += 1
        free = [i for i in range(n) if sigma[i] == 0]
        x = [inst.upper[i] if sigma[i] > 0 else inst.lower[i] for i in range(n)]
        if free:
            # ((Q + Q^T) x + q)_i = 0 for free i, split into free and fixed parts
            rows, rhs = [], []
            for i in free:
                rows.append([M[i][j] for j in free])
                rhs.append(-(inst.q[i] + sum(M[i][j] * x[j] for j in range(n)
                                             if sigma[j] != 0)))
            lps += 1
            sol = lp_feasible(rows, rhs, [inst.lower[i] for i in free],
                              [inst.upper[i] for i in free], exact=inst.exact, rule=rule)
            if sol is None:
                continue
            for i, v in zip(free, sol):
                x[i] = v
        feasible += 1
        if inst.exact:
            x = [to_fraction(v) for v in x]
        val = evaluate(inst, x)
        if best_val is None or val > best_val:
            best_x, best_val = tuple(x), val
    stats = SolveStats(faces_enumerated=faces, lps_solved=lps, lps_feasible=feasible,
                       rank_used=rank([list(r) for r in inst.Q], inst.exact),
                       wall_time=time.perf_counter() - t0)
    return Solution(best_val, best_x, stats)


def stationarity_check(inst: QpInstance, x, tol: float = LP_TOL) -> bool:
    """Does the gradient vanish along the minimal face of the box containing ``x``?"""
    n = inst.n
    if len(x) != n:
        raise InstanceError("point has the wrong length")
    t = 0 if inst.exact else tol
    for i in range(n):
        if x[i] < inst.lower[i] - t or x[i] > inst.upper[i] + t:
            raise InstanceError(f"point is infeasible at index {i}")
    M = _gradient_matrix(inst)
    for i in range(n):
        if x[i] == inst.lower[i] or x[i] == inst.upper[i]:
            continue
        if not inst.exact and (abs(x[i] - inst.lower[i]) <= t or abs(x[i] - inst.upper[i]) <= t):
            continue
        g = inst.q[i] + sum(M[i][j] * x[j] for j in range(n))
        if abs(g) > t * (1 + max(abs(float(v)) for v in M[i])):
            return False
    return True


def generate_instance(n: int, target_rank: int, seed: int, coeff_range: int = 5,
                      bound_range: int = 5, *, linear: bool = True, degenerate: int = 0,
                      factor_range: int = 2, exact: bool = True) -> QpInstance:
    """Random integer instance with ``rank(Q) == target_rank``; reproducible per seed.

    ``Q = U^T V`` for random integer factors, resampled until the rank is
    right and every entry of ``Q`` lies in ``[-coeff_range, coeff_range]``.
    ``degenerate`` coordinates get ``lower == upper``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= target_rank <= n:
        raise ValueError(f"impossible rank request: rank {target_rank} for n={n}")
    if degenerate > n:
        raise ValueError("more degenerate coordinates than variables")
    rng = random.Random(seed)
    if target_rank == 0:
        Q = [[0] * n for _ in range(n)]
    else:
        for _ in range(100000):
            U = [[rng.randint(-factor_range, factor_range) for _ in range(n)]
                 for _ in range(target_rank)]
            V = [[rng.randint(-factor_range, factor_range) for _ in range(n)]
                 for _ in range(target_rank)]
            Q = [[sum(U[k][i] * V[k][j] for k in range(target_rank)) for j in range(n)]
                 for i in range(n)]
            if max(abs(v) for row in Q for v in row) > coeff_range:
                continue
            if rank([[Fraction(v) for v in row] for row in Q], True) == target_rank:
                break
        else:
            raise ValueError("could not sample a matrix with the requested rank")
    q = [rng.randint(-coeff_range, coeff_range) for _ in range(n)] if linear else [0] * n
    lower, upper = [], []
    for _ in range(n):
        a = rng.randint(-bound_range, bound_range)
        b = rng.randint(-bound_range, bound_range)
        if a == b:
            b = a + 1
        lower.append(min(a, b))
        upper.append(max(a, b))
    for i in rng.sample(range(n), degenerate):
        upper[i] = lower[i]
    return QpInstance.from_data(Q, q, lower, upper, exact=exact)


def random_corpus(count: int, seed: int, n_values=range(1, 7), ranks=range(0, 4), *,
                  degenerate_every: int = 10, exact: bool = True):
    """Deterministic mixed corpus: sizes, ranks, with/without linear term, some degenerate boxes.

    Every ``degenerate_every``-th instance gets one zero-width coordinate.
    """
    rng = random.Random(seed)
    n_values = list(n_values)
    ranks = list(ranks)
    out = []
    for k in range(count):
        n = n_values[k % len(n_values)]
        r = min(ranks[(k // len(n_values)) % len(ranks)], n)
        linear = (k // 2) % 2 == 0
        deg = 1 if degenerate_every and k % degenerate_every == degenerate_every - 1 else 0
        out.append(generate_instance(n, r, rng.randrange(2 ** 31), linear=linear,
                                     degenerate=deg, exact=exact))
    return out
