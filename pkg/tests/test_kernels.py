import copy
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from lowrank_boxqp import _kernels
from lowrank_boxqp._kernels import _pykernels

BACKENDS = _kernels.backends()
compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled kernels not built")


def _matrix(rng, m, n, exact):
    conv = (lambda v: Fraction(v, rng.randint(1, 3))) if exact else float
    return [[conv(rng.randint(-4, 4)) if rng.random() < 0.7 else conv(0) for _ in range(n)]
            for _ in range(m)]


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("exact", [True, False])
def test_rref_properties(name, exact):
    k = BACKENDS[name]
    rng = random.Random(1)
    for _ in range(100):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        rows = _matrix(rng, m, n, exact)
        piv = k.rref(rows, list(range(n)), 0 if exact else 1e-12)
        for r, c in enumerate(piv):
            assert rows[r][c] == 1
            assert all(rows[i][c] == 0 for i in range(m) if i != r)
        assert all(all(v == 0 for v in rows[i]) for i in range(len(piv), m))


@compiled
@pytest.mark.parametrize("exact", [True, False])
def test_rref_backends_identical(exact):
    rng = random.Random(2)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(200):
        m, n = rng.randint(1, 6), rng.randint(1, 7)
        rows = _matrix(rng, m, n, exact)
        order = list(range(n))
        rng.shuffle(order)
        a, b = copy.deepcopy(rows), copy.deepcopy(rows)
        tol = 0 if exact else 1e-9
        assert py.rref(a, order, tol) == cy.rref(b, order, tol)
        assert a == b


def _phase1_problem(rng, exact):
    """Random tableau with an all-artificial starting basis."""
    m, nx = rng.randint(1, 4), rng.randint(1, 5)
    conv = Fraction if exact else float
    A = [[conv(rng.randint(-3, 3)) for _ in range(nx)] for _ in range(m)]
    beta = [conv(rng.randint(0, 6)) for _ in range(m)]
    ub = [conv(rng.randint(1, 4)) if rng.random() < 0.6 else None for _ in range(nx)]
    T = [row + [conv(int(i == j)) for j in range(m)] for i, row in enumerate(A)]
    ub = ub + [None] * m
    is_art = [False] * nx + [True] * m
    basis = list(range(nx, nx + m))
    return T, beta, basis, [False] * (nx + m), ub, is_art


@compiled
@pytest.mark.parametrize("exact", [True, False])
@pytest.mark.parametrize("rule", [_pykernels.BLAND, _pykernels.DANTZIG])
def test_phase1_backends_identical(exact, rule):
    rng = random.Random(3)
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for _ in range(200):
        prob = _phase1_problem(rng, exact)
        a, b = copy.deepcopy(prob), copy.deepcopy(prob)
        tol = 0 if exact else 1e-9
        pa = py.phase1(*a, rule, tol)
        pb = cy.phase1(*b, rule, tol)
        assert pa == pb
        assert a == b


def test_env_var_forces_fallback():
    code = "from lowrank_boxqp._kernels import BACKEND; print(BACKEND)"
    env = dict(os.environ, LOWRANK_BOXQP_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@compiled
def test_compiled_is_default():
    assert _kernels.BACKEND == "cython" or os.environ.get("LOWRANK_BOXQP_PURE")


def test_benchmark_helpers_run():
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "benchmarks"))
    try:
        import bench_kernels
    finally:
        sys.path.pop(0)
    for name, mod in BACKENDS.items():
        inputs = [(r, list(range(len(r[0]))), 0) for r in bench_kernels.rref_inputs(True, count=2)]
        assert bench_kernels.time_kernel(mod.rref, inputs, 1) >= 0
        p = [(*args, _pykernels.BLAND, 0) for args in bench_kernels.phase1_inputs(True, count=2)]
        assert bench_kernels.time_kernel(mod.phase1, p, 1) >= 0
