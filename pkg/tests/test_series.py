from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgenocchi.algebra import PolyXY, RatFuncQ
from qgenocchi.series import TruncSeries, classical_genocchi, exp_xt, genocchi_from_series

q = RatFuncQ.q()
x = PolyXY.x()


def test_exp_xt():
    assert exp_xt(0).coeffs == (PolyXY.constant(1),)
    assert list(exp_xt(2).coeffs) == [PolyXY.constant(1), x, x * x / 2]
    assert [c.evaluate(0) for c in exp_xt(3).coeffs] == [1, 0, 0, 0]
    with pytest.raises(ValueError):
        exp_xt(-1)


def test_first_entries():
    e = genocchi_from_series(2)
    assert isinstance(e[0], PolyXY) and e[0].is_zero()
    assert e[1] == PolyXY.constant(2 / (1 + q))
    assert e[2].evaluate(0) == -4 * q / (1 + q) ** 2


def test_classical_values():
    assert classical_genocchi(8) == [0, 1, -1, 0, 1, 0, -3, 0, 17]
    g = classical_genocchi(21)
    assert all(g[2 * k + 1] == 0 for k in range(1, 11))


def test_specialized_paths_agree():
    sym = genocchi_from_series(6)
    num = genocchi_from_series(6, q0=Fraction(1, 2), x0=Fraction(3))
    assert [p.evaluate(3, 0, Fraction(1, 2)) for p in sym] == num


def test_reciprocal_needs_unit():
    with pytest.raises(ZeroDivisionError):
        TruncSeries([0, 1]).reciprocal()


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=10).filter(
        lambda cs: cs[0] != 0
    )
)
def test_reciprocal_property(cs):
    s = TruncSeries(cs)
    prod = s * s.reciprocal()
    assert prod.coeffs == (1,) + (0,) * s.order


def test_order_truncation():
    a = TruncSeries([1, 2, 3], 2)
    b = TruncSeries([1, 1], 1)
    assert (a * b).order == 1
    assert (a * b).coeffs == (1, 3)
