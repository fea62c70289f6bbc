from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lowrank_boxqp.model import QpInstance

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def make(Q, q=None, lower=None, upper=None, exact=True):
    n = len(Q)
    return QpInstance.from_data(Q, q if q is not None else [0] * n,
                                lower if lower is not None else [-1] * n,
                                upper if upper is not None else [1] * n, exact=exact)


def numeric_rank(M, digits=60):
    """Rank from a high-precision SVD; entries may be sympy expressions."""
    with mpmath.workdps(digits):
        A = mpmath.matrix([[mpmath.mpf(str(v.evalf(digits + 10))) if hasattr(v, "evalf")
                            else mpmath.mpf(Fraction(v).numerator) / Fraction(v).denominator
                            for v in row] for row in M])
        if A.rows == 0:
            return 0
        sv = mpmath.svd_r(A, compute_uv=False)
        big = max(abs(s) for s in sv)
        if big == 0:
            return 0
        return sum(1 for s in sv if abs(s) > big * mpmath.mpf(10) ** (-digits // 2))


small_int = st.integers(min_value=-5, max_value=5)


@st.composite
def int_matrices(draw, max_n=5, min_n=1):
    n = draw(st.integers(min_n, max_n))
    return [[draw(small_int) for _ in range(n)] for _ in range(n)]


@st.composite
def instances(draw, max_n=4, exact=True):
    Q = draw(int_matrices(max_n=max_n))
    n = len(Q)
    q = [draw(small_int) for _ in range(n)]
    lo, hi = [], []
    for _ in range(n):
        a, b = draw(small_int), draw(small_int)
        lo.append(min(a, b))
        hi.append(max(a, b))
    return make(Q, q, lo, hi, exact=exact)


@pytest.fixture
def xy_instance():
    return make([[0, 1], [0, 0]])
