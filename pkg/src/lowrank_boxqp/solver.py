"""Global maximisation of a box QP by face enumeration of a low-dimensional zonotope."""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .arrangement import SIGN_TOL, enumerate_covectors
from .face_lp import assemble_candidate, build_face_system, stationary_point
from .factorize import build_reduction, minimal_rank_matrix, rank_factorize, rational_low_rank_matrix
from .homogenize import hide_linear_term, project_solution
from .linalg import rank
from .lp import LP_TOL
from .model import QpInstance, evaluate, validate
from .numeric import to_fraction

# cells handed to the worker pool per batch
_BATCH = 256


@dataclass(frozen=True)
class SolverOptions:
    mode: str | None = None  # "exact" | "float" | None (instance's own mode)
    use_minimal_rank: bool = False
    parallel_faces: bool = False
    workers: int | None = None
    sign_tol: float = SIGN_TOL
    lp_tol: float = LP_TOL
    lp_rule: str | None = None  # default: bland (exact), dantzig (float)

    def __post_init__(self):
        if self.sign_tol <= 0 or self.lp_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.mode not in (None, "exact", "float"):
            raise ValueError(f"unknown arithmetic mode {self.mode!r}")


@dataclass(frozen=True)
class SolveStats:
    faces_enumerated: int = 0
    lps_solved: int = 0
    lps_feasible: int = 0
    rank_used: int = 0
    wall_time: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class Solution:
    f_star: object
    x_star: tuple
    stats: SolveStats


def _prepare(inst: QpInstance, opts: SolverOptions) -> QpInstance:
    if opts.mode is not None:
        inst = inst.with_mode(opts.mode == "exact")
    return validate(inst)


def handle_rank_zero(inst: QpInstance, stats: SolveStats | None = None) -> Solution:
    """Constant objective: every point is optimal, report the lower corner."""
    x = tuple(inst.lower)
    return Solution(evaluate(inst, x), x, stats or SolveStats())


def solve(inst: QpInstance, opts: SolverOptions | None = None) -> Solution:
    opts = opts or SolverOptions()
    t0 = time.perf_counter()
    inst = _prepare(inst, opts)
    exact = inst.exact
    rule = opts.lp_rule or ("bland" if exact else "dantzig")

    work = inst
    if opts.use_minimal_rank and not inst.has_linear_term:
        if exact:
            Q2 = rational_low_rank_matrix(inst.Q)
        else:
            Q2 = tuple(tuple(float(v) for v in row) for row in minimal_rank_matrix(inst.Q, False))
        # the rational representative can be worse than Q itself; keep whichever is smaller
        if rank([list(r) for r in Q2], exact) < rank([list(r) for r in inst.Q], exact):
            work = replace(inst, Q=Q2)

    h = hide_linear_term(work)
    inner = h.inner
    fac = rank_factorize(inner.Q, exact)
    if fac.r == 0:
        stats = SolveStats(wall_time=time.perf_counter() - t0)
        return handle_rank_zero(inst, stats)

    G, W = build_reduction(fac)
    cells = enumerate_covectors(G, exact, opts.sign_tol)

    def handle(cell):
        fs = build_face_system(G, inner.lower, inner.upper, cell.sigma, exact)
        x_A = stationary_point(fs, W, exact, rule)
        if x_A is None:
            return None
        return assemble_candidate(fs, x_A, inner, cell.sigma, reduction=(G, W))

    if opts.parallel_faces:
        workers = opts.workers or min(8, (os.cpu_count() or 1) + 1)
        candidates = []
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(cells), _BATCH):
                candidates.extend(pool.map(handle, cells[start:start + _BATCH]))
    else:
        candidates = [handle(c) for c in cells]

    # first strictly better candidate in enumeration order wins
    best = None
    feasible = 0
    for cand in candidates:
        if cand is None:
            continue
        feasible += 1
        if best is None or cand.value > best.value:
            best = cand
    if best is None:
        raise RuntimeError("no stationary point found; every vertex face should be feasible")

    x_star = project_solution(h, best.x)
    x_star = tuple(to_fraction(v) for v in x_star) if exact else tuple(float(v) for v in x_star)
    stats = SolveStats(
        faces_enumerated=len(cells),
        lps_solved=len(cells),
        lps_feasible=feasible,
        rank_used=fac.r,
        wall_time=time.perf_counter() - t0,
    )
    return Solution(evaluate(inst, x_star), x_star, stats)
