"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times the two hot kernels on random inputs in both arithmetic modes, then a
full solve on a rank-1 family (one subprocess per backend so that the
import-time backend selection is exercised as users see it).
"""

from __future__ import annotations

import argparse
import copy
import json
import os
import random
import subprocess
import sys
import timeit

from lowrank_boxqp._kernels import BLAND, DANTZIG, backends
from lowrank_boxqp.numeric import rational


def rref_inputs(exact, count=40, m=12, n=16, seed=0):
    rng = random.Random(seed)
    conv = (lambda v: rational(v, rng.randint(1, 5))) if exact else float
    return [[[conv(rng.randint(-9, 9)) for _ in range(n)] for _ in range(m)] for _ in range(count)]


def phase1_inputs(exact, count=40, m=10, nx=20, seed=1):
    rng = random.Random(seed)
    conv = rational if exact else float
    out = []
    for _ in range(count):
        A = [[conv(rng.randint(-5, 5)) for _ in range(nx)] for _ in range(m)]
        beta = [conv(rng.randint(0, 9)) for _ in range(m)]
        T = [row + [conv(int(i == j)) for j in range(m)] for i, row in enumerate(A)]
        ub = [conv(rng.randint(1, 5)) for _ in range(nx)] + [None] * m
        out.append((T, beta, list(range(nx, nx + m)), [False] * (nx + m), ub,
                    [False] * nx + [True] * m))
    return out


def time_kernel(fn, inputs, repeat):
    def run():
        for args in copy.deepcopy(inputs):
            fn(*args)
    return min(timeit.repeat(run, number=1, repeat=repeat))


SOLVE_SNIPPET = """
import json, random, time
from lowrank_boxqp._kernels import BACKEND
from lowrank_boxqp.model import QpInstance
from lowrank_boxqp.solver import SolverOptions, solve
rng = random.Random(0)
out = {"backend": BACKEND}
for mode in ("exact", "float"):
    for n in (20, 40, 80):
        u = [rng.choice([-1, 1]) * rng.randint(1, 50) for _ in range(n)]
        v = [rng.randint(1, 50) for _ in range(n)]
        Q = [[u[i] * v[j] for j in range(n)] for i in range(n)]
        inst = QpInstance.from_data(Q, [0] * n, [-1] * n, [1] * n)
        t = min(solve(inst, SolverOptions(mode=mode)).stats.wall_time for _ in range(3))
        out[f"solve {mode} n={n}"] = t
print(json.dumps(out))
"""


def time_solves(pure: bool):
    env = dict(os.environ, LOWRANK_BOXQP_PURE="1" if pure else "0")
    res = subprocess.run([sys.executable, "-c", SOLVE_SNIPPET], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    found = backends()
    if "cython" not in found:
        print("compiled kernels are not built; only the pure-Python backend is available")
    rows = []
    for exact in (True, False):
        tol = 0 if exact else 1e-9
        mode = "exact" if exact else "float"
        r_in = [(rows_, list(range(len(rows_[0]))), tol) for rows_ in rref_inputs(exact)]
        p_in = phase1_inputs(exact)
        for label, rule in (("rref", None), ("phase1 bland", BLAND), ("phase1 dantzig", DANTZIG)):
            times = {}
            for name, mod in found.items():
                if rule is None:
                    times[name] = time_kernel(mod.rref, r_in, args.repeat)
                else:
                    inputs = [(*p, rule, tol) for p in p_in]
                    times[name] = time_kernel(mod.phase1, inputs, args.repeat)
            rows.append((f"{label} ({mode})", times))

    solve_py = time_solves(pure=True)
    solve_c = time_solves(pure=False) if "cython" in found else None
    for key in (k for k in solve_py if k != "backend"):
        times = {"python": solve_py[key]}
        if solve_c and solve_c["backend"] == "cython":
            times["cython"] = solve_c[key]
        rows.append((key, times))

    print(f"{'benchmark':<28}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for label, t in rows:
        py, cy = t.get("python"), t.get("cython")
        cy_s = f"{cy:12.4f}" if cy is not None else f"{'-':>12}"
        sp = f"{py / cy:9.1f}x" if cy else f"{'-':>10}"
        print(f"{label:<28}{py:12.4f}{cy_s}{sp}")


if __name__ == "__main__":
    main()
