from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowrank_boxqp.model import (BoundViolation, DimensionError, InstanceError, QpInstance,
                                 evaluate, is_feasible, validate)

from conftest import instances, make


def test_valid_instance_accepted():
    inst = make([[0, 1], [0, 0]])
    assert validate(inst) is inst
    assert inst.n == 2 and inst.mode == "exact"


def test_bound_violation_names_index():
    with pytest.raises(BoundViolation, match="bound violation at index 0"):
        QpInstance.from_data([[1]], [0], [2], [1])


def test_bound_violation_later_index():
    with pytest.raises(BoundViolation) as e:
        QpInstance.from_data([[1, 0], [0, 1]], [0, 0], [0, 3], [1, 2])
    assert e.value.index == 1


def test_nonsquare_q_rejected():
    with pytest.raises(DimensionError, match="dimension mismatch"):
        QpInstance.from_data([[1, 0, 0], [0, 1, 0]], [0, 0], [0, 0], [1, 1])


def test_vector_length_mismatch():
    with pytest.raises(DimensionError, match="dimension mismatch"):
        QpInstance.from_data([[1, 0], [0, 1]], [0], [0, 0], [1, 1])


def test_float_mode_rejects_nan():
    with pytest.raises(InstanceError):
        QpInstance.from_data([[float("nan")]], [0], [0], [1], exact=False)


def test_scalars_are_canonical_fractions():
    inst = QpInstance.from_data([["2/4"]], ["0.1"], [0.25], [1])
    assert inst.Q[0][0] == Fraction(1, 2)
    assert inst.q[0] == Fraction(1, 10)
    assert inst.lower[0] == Fraction(1, 4)
    assert all(isinstance(v, Fraction) for v in (inst.Q[0][0], inst.q[0], inst.lower[0]))


@pytest.mark.parametrize("Q,q,x,expected", [
    ([[1, 0], [0, -1]], [0, 0], [1, 0], 1),
    ([[0, 1], [0, 0]], [0, 0], [2, 3], 6),
    ([[2]], [3], [Fraction(1, 2)], 2),
])
def test_evaluate_examples(Q, q, x, expected):
    n = len(Q)
    inst = QpInstance.from_data(Q, q, [-10] * n, [10] * n)
    assert evaluate(inst, x) == expected


def test_evaluate_length_mismatch(xy_instance):
    with pytest.raises(DimensionError):
        evaluate(xy_instance, [1])


def test_q_not_symmetrised():
    inst = make([[0, 1], [0, 0]])
    assert inst.Q == ((0, 1), (0, 0))


@given(instances(max_n=4), st.data())
def test_evaluate_depends_on_symmetric_part_only(inst, data):
    n = inst.n
    x = [data.draw(st.fractions(inst.lower[i], inst.upper[i], max_denominator=7)) for i in range(n)]
    S = [[(inst.Q[i][j] + inst.Q[j][i]) / 2 for j in range(n)] for i in range(n)]
    sym = QpInstance.from_data(S, inst.q, inst.lower, inst.upper)
    assert evaluate(inst, x) == evaluate(sym, x)


@given(instances(max_n=4), st.data())
def test_float_mode_agrees_with_exact(inst, data):
    n = inst.n
    x = [data.draw(st.fractions(inst.lower[i], inst.upper[i], max_denominator=9)) for i in range(n)]
    exact = evaluate(inst, x)
    approx = evaluate(inst.with_mode(False), [float(v) for v in x])
    assert abs(approx - float(exact)) <= 1e-9 * max(1.0, abs(float(exact)))


def test_is_feasible():
    inst = make([[1]], lower=[0], upper=[1])
    assert is_feasible(inst, [Fraction(1, 2)])
    assert not is_feasible(inst, [2])
