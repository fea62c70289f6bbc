"""Command-line front end.

Exit codes: 0 success, 1 solver/oracle disagreement, 2 parse or
validation error, 3 instance too large for the brute-force oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from .arrangement import enumerate_covectors
from .factorize import build_reduction, rank_factorize
from .homogenize import hide_linear_term
from .model import InstanceError
from .oracle import ORACLE_CAP, OracleCapExceeded, brute_force_solve, generate_instance
from .serialize import (ParseError, dumps_instance, format_number, load_instance,
                        loads_matrix, solution_to_dict)
from .solver import SolverOptions, solve

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

DEFAULT_TOL = 1e-6


def _options(args) -> SolverOptions:
    return SolverOptions(mode=args.mode, use_minimal_rank=args.min_rank,
                         parallel_faces=args.parallel)


def _print_solution(sol, args, out, label=None):
    if args.format == "structured":
        doc = solution_to_dict(sol)
        if label:
            doc["backend"] = label
        out.write(json.dumps(doc) + "\n")
        return
    s = sol.stats
    if label:
        out.write(f"[{label}]\n")
    out.write(f"f* = {format_number(sol.f_star)}\n")
    out.write("x* = (" + ", ".join(format_number(v) for v in sol.x_star) + ")\n")
    out.write(f"rank used: {s.rank_used}\n")
    out.write(f"faces enumerated: {s.faces_enumerated}\n")
    out.write(f"LPs solved: {s.lps_solved} ({s.lps_feasible} feasible)\n")
    out.write(f"wall time: {s.wall_time:.6f} s\n")


def _agree(a, b, exact: bool, tol: float) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def cmd_solve(args, ctx) -> int:
    inst = load_instance(args.instance, args.mode == "exact")
    _print_solution(ctx["solve"](inst, _options(args)), args, ctx["out"])
    return EXIT_OK


def cmd_oracle(args, ctx) -> int:
    inst = load_instance(args.instance, args.mode == "exact")
    _print_solution(brute_force_solve(inst, cap=args.cap), args, ctx["out"])
    return EXIT_OK


def _parse_random(tokens):
    names = ("n", "rank", "count", "seed")
    values = {}
    for pos, tok in enumerate(tokens):
        key, sep, val = tok.partition("=")
        if not sep:
            key, val = names[pos], tok
        if key not in names:
            raise ParseError(f"unknown --random field {key!r}")
        try:
            values[key] = int(val)
        except ValueError:
            raise ParseError(f"--random {key} must be an integer") from None
    missing = [k for k in names if k not in values]
    if missing:
        raise ParseError("--random needs " + ", ".join(missing))
    return values


def cmd_compare(args, ctx) -> int:
    out = ctx["out"]
    exact = args.mode == "exact"
    if args.random:
        params = _parse_random(args.random)
        if params["count"] < 1:
            raise ParseError("--random count must be positive")
        instances = [generate_instance(params["n"], params["rank"], params["seed"] + k,
                                       exact=exact)
                     for k in range(params["count"])]
    elif args.instance:
        instances = [load_instance(args.instance, exact)]
    else:
        raise ParseError("compare needs an instance file or --random")
    for inst in instances:
        if inst.n > args.cap:
            raise OracleCapExceeded(f"n={inst.n} exceeds the oracle cap of {args.cap}")
    opts = _options(args)
    agreed = 0
    for k, inst in enumerate(instances):
        a = ctx["solve"](inst, opts)
        b = brute_force_solve(inst, cap=args.cap)
        if _agree(a.f_star, b.f_star, exact, args.tol):
            agreed += 1
            if len(instances) == 1:
                if args.format == "structured":
                    out.write(json.dumps({"agree": True, "solver": solution_to_dict(a),
                                          "oracle": solution_to_dict(b)}) + "\n")
                else:
                    out.write(f"AGREE f*={format_number(a.f_star)}\n")
            continue
        if args.format == "structured":
            out.write(json.dumps({"agree": False, "index": k, "solver": solution_to_dict(a),
                                  "oracle": solution_to_dict(b)}) + "\n")
        else:
            out.write(f"DISAGREE on instance {k}\n")
            _print_solution(a, args, out, "solver")
            _print_solution(b, args, out, "oracle")
    if len(instances) > 1:
        if args.format == "structured":
            out.write(json.dumps({"agreements": agreed, "total": len(instances)}) + "\n")
        else:
            out.write(f"{agreed}/{len(instances)} agreements\n")
    return EXIT_OK if agreed == len(instances) else EXIT_DISAGREE


def face_counts(G, exact: bool = True):
    """Cells of the arrangement grouped by the number of zero signs."""
    cells = enumerate_covectors(G, exact)
    by_zeros = Counter(sum(1 for s in c.sigma if s == 0) for c in cells)
    return dict(sorted(by_zeros.items())), len(cells)


def cmd_count_faces(args, ctx) -> int:
    exact = args.mode == "exact"
    if args.G is not None:
        G = loads_matrix(args.G, exact)
    elif args.instance:
        inst = load_instance(args.instance, exact)
        fac = rank_factorize(hide_linear_term(inst).inner.Q, exact)
        if fac.r == 0:
            raise ParseError("objective is constant; there is no arrangement to count")
        G, _ = build_reduction(fac)
    else:
        raise ParseError("count-faces needs an instance file or -G")
    by_zeros, total = face_counts(G, exact)
    out = ctx["out"]
    if args.format == "structured":
        out.write(json.dumps({"by_zero_count": {str(k): v for k, v in by_zeros.items()},
                              "total": total}) + "\n")
    else:
        for k, v in by_zeros.items():
            out.write(f"zeros={k}: {v}\n")
        out.write(f"total: {total}\n")
    return EXIT_OK


def cmd_gen(args, ctx) -> int:
    try:
        inst = generate_instance(args.n, args.rank, args.seed, args.coeff_range,
                                 args.bound_range, linear=not args.no_linear,
                                 degenerate=args.degenerate)
    except ValueError as e:
        raise ParseError(str(e)) from None
    text = dumps_instance(inst) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        ctx["out"].write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float"), default="exact")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="float-mode agreement tolerance for compare")
    common.add_argument("--min-rank", action="store_true",
                        help="replace Q by a minimal-rank matrix with the same quadratic form")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", action="store_true")
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--cap", type=int, default=ORACLE_CAP, help="largest n for the oracle")

    p = argparse.ArgumentParser(prog="lowrank-boxqp",
                                description="Global maximisation of low-rank box QPs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve an instance file")
    s.add_argument("instance")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", parents=[common], help="brute-force over all box faces")
    s.add_argument("instance")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("compare", parents=[common], help="check the solver against the oracle")
    s.add_argument("instance", nargs="?")
    s.add_argument("--random", nargs=4, metavar=("N", "RANK", "COUNT", "SEED"),
                   help="random instances, e.g. --random n=4 rank=2 count=50 seed=1")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("count-faces", parents=[common], help="count arrangement cells")
    s.add_argument("instance", nargs="?")
    s.add_argument("-G", help="matrix as JSON, e.g. '[[1,0],[0,1]]'")
    s.set_defaults(func=cmd_count_faces)

    s = sub.add_parser("gen", parents=[common], help="write a random instance")
    s.add_argument("n", type=int)
    s.add_argument("rank", type=int)
    s.add_argument("gen_seed", type=int, nargs="?", metavar="seed")
    s.add_argument("-o", "--out")
    s.add_argument("--coeff-range", type=int, default=5)
    s.add_argument("--bound-range", type=int, default=5)
    s.add_argument("--degenerate", type=int, default=0)
    s.add_argument("--no-linear", action="store_true")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None, *, solver=None, out=None, err=None) -> int:
    """Run the CLI; ``solver`` replaces ``solve`` (used by tests)."""
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if getattr(args, "gen_seed", None) is not None:
        args.seed = args.gen_seed
    ctx = {"solve": solver or solve, "out": out}
    try:
        return args.func(args, ctx)
    except OracleCapExceeded as e:
        err.write(f"error: {e}\n")
        return EXIT_CAP
    except InstanceError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
