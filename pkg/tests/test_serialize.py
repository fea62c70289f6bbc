from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given

from lowrank_boxqp.serialize import (ParseError, dumps_instance, loads_instance, loads_matrix,
                                     parse_number)

from conftest import instances


def test_decimal_read_literally_in_exact_mode():
    assert parse_number(Decimal("0.1"), True) == Fraction(1, 10)
    inst = loads_instance('{"n":1,"Q":[[0.1]],"lower":[0],"upper":[1]}')
    assert inst.Q[0][0] == Fraction(1, 10)
    assert inst.q == (0,)


def test_rational_strings():
    inst = loads_instance('{"n":1,"Q":[["-3/4"]],"q":["1/3"],"lower":["-1"],"upper":[1]}')
    assert inst.Q[0][0] == Fraction(-3, 4) and inst.q[0] == Fraction(1, 3)


def test_rational_string_rejected_in_float_mode():
    with pytest.raises(ParseError, match="exact mode"):
        loads_instance('{"n":1,"Q":[["1/2"]],"lower":[0],"upper":[1]}', exact=False)


@pytest.mark.parametrize("text", [
    '{"n":1,"Q":[[1]],"lower":[0]}',
    '{"n":2,"Q":[[1,0]],"lower":[0,0],"upper":[1,1]}',
    '{"n":1,"Q":[["x"]],"lower":[0],"upper":[1]}',
    '{"n":1,"Q":[[NaN]],"lower":[0],"upper":[1]}',
    '{"n":1,"Q":[["1/0"]],"lower":[0],"upper":[1]}',
    '[1, 2]',
    '{"n":1,',
])
def test_malformed(text):
    with pytest.raises(ParseError):
        loads_instance(text)


def test_bound_violation_from_file():
    from lowrank_boxqp.model import BoundViolation
    with pytest.raises(BoundViolation):
        loads_instance('{"n":1,"Q":[[1]],"lower":[2],"upper":[1]}')


@given(instances(max_n=4))
def test_round_trip_exact(inst):
    inst2 = loads_instance(dumps_instance(inst))
    assert inst2 == inst


def test_round_trip_non_integer():
    inst = loads_instance('{"n":1,"Q":[["7/3"]],"q":[0.25],"lower":["-1/7"],"upper":[1]}')
    assert loads_instance(dumps_instance(inst)) == inst


def test_round_trip_float():
    inst = loads_instance('{"n":1,"Q":[[0.1]],"q":[1e-7],"lower":[-0.3],"upper":[1]}', exact=False)
    assert loads_instance(dumps_instance(inst), exact=False) == inst


def test_matrix_parse():
    assert loads_matrix("[[1,0],[0,1]]") == [[1, 0], [0, 1]]
    with pytest.raises(ParseError):
        loads_matrix("[[1,0],[0]]")
