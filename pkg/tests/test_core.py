from fractions import Fraction

import pytest

from qgenocchi.algebra import PolyXY, RatFuncQ
from qgenocchi.core import (
    addition_expand,
    genocchi_number,
    genocchi_numbers_at,
    genocchi_poly,
    genocchi_poly_at,
    genocchi_table,
    reflection_pair,
)
from qgenocchi.series import classical_genocchi

q = RatFuncQ.q()
x = PolyXY.x()


def test_number_examples():
    assert genocchi_number(0) == RatFuncQ()
    assert genocchi_number(1) == 2 / (1 + q)
    assert genocchi_number(2) == -4 * q / (1 + q) ** 2
    assert genocchi_number(3) == -6 * q * (1 - q) / (1 + q) ** 3


def test_poly_examples():
    assert genocchi_poly(0) == PolyXY()
    assert genocchi_poly(1) == PolyXY.constant(2 / (1 + q))
    assert genocchi_poly(2) == x * (4 / (1 + q)) - PolyXY.constant(4 * q / (1 + q) ** 2)


def test_negative_index():
    with pytest.raises(ValueError):
        genocchi_number(-1)
    with pytest.raises(ValueError):
        genocchi_poly(-3)


def test_table_invariants():
    t = genocchi_table(20)
    assert t.numbers[0] == RatFuncQ()
    for n in range(21):
        assert t.polys[n].evaluate(0) == t.numbers[n]
    for n in range(1, 21):
        assert t.polys[n].x_degree == n - 1


def test_q1_is_classical():
    classical = classical_genocchi(20)
    assert [genocchi_number(n)(1) for n in range(21)] == classical


def test_addition_expand():
    y = PolyXY.y()
    assert addition_expand(1)[0] == addition_expand(1)[1] == PolyXY.constant(2 / (1 + q))
    lhs, rhs = addition_expand(2)
    assert lhs == rhs == (x + y) * (4 / (1 + q)) - PolyXY.constant(4 * q / (1 + q) ** 2)
    for n in range(11):
        lhs, rhs = addition_expand(n)
        assert lhs == rhs
        assert lhs.substitute_y(0) == genocchi_poly(n)


def test_reflection_pair():
    assert reflection_pair(0)[0] == PolyXY.constant(2)
    lhs, rhs = reflection_pair(1)
    assert lhs == rhs == 4 * x
    lhs, rhs = reflection_pair(2)
    assert lhs.specialize_q(1) == 6 * x * x
    for n in range(21):
        lhs, rhs = reflection_pair(n)
        assert lhs == rhs


def test_specialized_recurrence():
    q0 = Fraction(1, 2)
    assert genocchi_numbers_at(q0, 10) == [genocchi_number(n)(q0) for n in range(11)]
    assert genocchi_poly_at(4, 0, q0) == Fraction(16, 27)
    assert genocchi_poly_at(5, 3, Fraction(2)) == genocchi_poly(5).evaluate(3, 0, 2)
