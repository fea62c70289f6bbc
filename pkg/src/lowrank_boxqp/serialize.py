"""JSON instance files and result documents.

An instance file is a JSON object with keys ``n``, ``Q``, ``q`` (optional,
zeros by default), ``lower`` and ``upper``.  Numbers are JSON integers,
JSON decimals, or strings ``"p/d"``.  In exact mode a decimal literal is
read by its written expansion (``0.1`` is exactly 1/10); in float mode
``"p/d"`` strings are rejected.
"""

from __future__ import annotations

import json
import math
import re
from decimal import Decimal
from fractions import Fraction

from .model import InstanceError, QpInstance

_RATIO = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_INTEGER = re.compile(r"^\s*[+-]?\d+\s*$")


class ParseError(InstanceError):
    pass


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def _load(text: str):
    try:
        return json.loads(text, parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed instance file: {e}") from None


def parse_number(v, exact: bool, where: str = "value"):
    if isinstance(v, bool):
        raise ParseError(f"{where}: booleans are not numbers")
    if isinstance(v, int):
        return Fraction(v) if exact else float(v)
    if isinstance(v, Decimal):
        if not v.is_finite():
            raise ParseError(f"{where}: non-finite number")
        return Fraction(v) if exact else float(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ParseError(f"{where}: non-finite number")
        return Fraction(repr(v)) if exact else v
    if isinstance(v, str):
        m = _RATIO.match(v)
        if m:
            if not exact:
                raise ParseError(f"{where}: rational string {v!r} needs exact mode")
            p, d = int(m.group(1)), int(m.group(2))
            if d == 0:
                raise ParseError(f"{where}: zero denominator in {v!r}")
            return Fraction(p, d)
        if _INTEGER.match(v):
            return Fraction(int(v)) if exact else float(int(v))
        raise ParseError(f"{where}: cannot read {v!r} as a number")
    raise ParseError(f"{where}: expected a number, got {type(v).__name__}")


def _vector(data, key, n, exact):
    v = data[key]
    if not isinstance(v, list):
        raise ParseError(f"{key} must be an array")
    if len(v) != n:
        raise ParseError(f"dimension mismatch: {key} has length {len(v)}, expected {n}")
    return [parse_number(x, exact, f"{key}[{i}]") for i, x in enumerate(v)]


def instance_from_dict(data, exact: bool = True) -> QpInstance:
    if not isinstance(data, dict):
        raise ParseError("instance file must hold a JSON object")
    for key in ("n", "Q", "lower", "upper"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("n must be a positive integer")
    Q = data["Q"]
    if not isinstance(Q, list) or len(Q) != n:
        raise ParseError(f"dimension mismatch: Q must have {n} rows")
    rows = []
    for i, row in enumerate(Q):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"dimension mismatch: Q row {i} must have {n} entries")
        rows.append([parse_number(x, exact, f"Q[{i}][{j}]") for j, x in enumerate(row)])
    q = _vector(data, "q", n, exact) if data.get("q") is not None else [0] * n
    lower = _vector(data, "lower", n, exact)
    upper = _vector(data, "upper", n, exact)
    return QpInstance.from_data(rows, q, lower, upper, exact=exact)


def loads_instance(text: str, exact: bool = True) -> QpInstance:
    return instance_from_dict(_load(text), exact)


def load_instance(path, exact: bool = True) -> QpInstance:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads_instance(text, exact)


def loads_matrix(text: str, exact: bool = True):
    data = _load(text)
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ParseError("matrix must be a non-empty array of arrays")
    width = len(data[0])
    if width == 0 or any(len(r) != width for r in data):
        raise ParseError("dimension mismatch: ragged matrix")
    return [[parse_number(x, exact, f"G[{i}][{j}]") for j, x in enumerate(r)]
            for i, r in enumerate(data)]


def number_to_json(v):
    """Integers stay integers, other rationals become ``"p/d"``, floats stay floats."""
    if isinstance(v, float):
        return v
    if isinstance(v, int):
        return v
    v = Fraction(v)
    if v.denominator == 1:
        return v.numerator
    return f"{v.numerator}/{v.denominator}"


def instance_to_dict(inst: QpInstance) -> dict:
    return {
        "n": inst.n,
        "Q": [[number_to_json(v) for v in row] for row in inst.Q],
        "q": [number_to_json(v) for v in inst.q],
        "lower": [number_to_json(v) for v in inst.lower],
        "upper": [number_to_json(v) for v in inst.upper],
    }


def dumps_instance(inst: QpInstance) -> str:
    return json.dumps(instance_to_dict(inst))


def format_number(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(number_to_json(v))


def solution_to_dict(sol) -> dict:
    s = sol.stats
    return {
        "f_star": number_to_json(sol.f_star),
        "x_star": [number_to_json(v) for v in sol.x_star],
        "stats": {
            "faces_enumerated": s.faces_enumerated,
            "lps_solved": s.lps_solved,
            "lps_feasible": s.lps_feasible,
            "rank_used": s.rank_used,
            "wall_time": s.wall_time,
        },
    }
