from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowrank_boxqp.homogenize import InternalSolverError, hide_linear_term, project_solution
from lowrank_boxqp.linalg import rank
from lowrank_boxqp.model import evaluate
from lowrank_boxqp.oracle import generate_instance

from conftest import instances, make


def test_block_form():
    inst = make([[2]], [3], [0], [1])
    h = hide_linear_term(inst)
    assert h.was_homogenized and h.original_n == 1
    assert h.inner.Q == ((2, Fraction(3, 2)), (Fraction(3, 2), 0))
    assert h.inner.lower == (0, 1) and h.inner.upper == (1, 1)
    assert h.inner.q == (0, 0)


def test_zero_linear_term_passes_through():
    inst = make([[1, 2], [3, 4]])
    h = hide_linear_term(inst)
    assert not h.was_homogenized
    assert h.inner is inst


def test_rank_bound_attained_at_zero_q():
    inst = make([[0, 0], [0, 0]], [1, 1])
    h = hide_linear_term(inst)
    assert rank([list(r) for r in h.inner.Q], True) == 2


def test_project_drops_auxiliary():
    h = hide_linear_term(make([[1]], [1], [0], [1]))
    assert project_solution(h, (Fraction(2, 5), 1)) == (Fraction(2, 5),)


def test_project_identity_without_homogenization():
    h = hide_linear_term(make([[1, 0], [0, 1]]))
    assert project_solution(h, (1, -1)) == (1, -1)


def test_project_rejects_bad_auxiliary():
    h = hide_linear_term(make([[1]], [1], [0], [1]))
    with pytest.raises(InternalSolverError):
        project_solution(h, (Fraction(2, 5), Fraction(9, 10)))


def test_project_float_tolerance():
    h = hide_linear_term(make([[1]], [1], [0], [1], exact=False))
    assert project_solution(h, (0.4, 1.0 + 1e-12)) == (0.4,)
    with pytest.raises(InternalSolverError):
        project_solution(h, (0.4, 0.9))


@given(instances(max_n=4), st.data())
def test_objective_preserved(inst, data):
    x = [data.draw(st.fractions(lo, hi, max_denominator=5)) for lo, hi in zip(inst.lower, inst.upper)]
    h = hide_linear_term(inst)
    xp = x + [1] if h.was_homogenized else x
    assert evaluate(h.inner, xp) == evaluate(inst, x)


@pytest.mark.parametrize("seed", range(40))
def test_rank_grows_by_at_most_two(seed):
    inst = generate_instance(1 + seed % 6, seed % 4 if seed % 4 <= 1 + seed % 6 else 0, seed)
    h = hide_linear_term(inst)
    before = rank([list(r) for r in inst.Q], True)
    after = rank([list(r) for r in h.inner.Q], True)
    assert after <= before + 2
