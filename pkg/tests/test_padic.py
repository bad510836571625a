import math
from fractions import Fraction

import pytest

from qgenocchi.core import genocchi_poly
from qgenocchi.padic import (
    EXPECTED_SLACK,
    PadicContext,
    convergence_table,
    fermionic_partial_sum,
    functional_equation_check,
    genocchi_integrand,
    integral_partial_sum,
    integral_vs_recurrence,
    padic_abs,
    vp,
)

CTX3 = PadicContext(3, Fraction(4))


def test_vp():
    assert vp(Fraction(9, 2), 3) == 2
    assert vp(Fraction(1, 3), 3) == -1
    assert vp(0, 5) == math.inf
    assert padic_abs(Fraction(9, 2), 3) == Fraction(1, 9)
    with pytest.raises(ValueError):
        vp(3, 4)


def test_context_validation():
    with pytest.raises(ValueError):
        PadicContext(2, Fraction(3))
    with pytest.raises(ValueError):
        PadicContext(9, Fraction(10))
    with pytest.raises(ValueError):
        PadicContext(3, Fraction(2))


def test_partial_sum_examples():
    for N in range(4):
        assert fermionic_partial_sum(lambda xi: 1, N, CTX3) == 1
    assert fermionic_partial_sum(lambda xi: xi, 1, CTX3) == 1
    assert fermionic_partial_sum(lambda xi: Fraction(4) ** xi, 2, CTX3) == 52429


def test_level_guard():
    with pytest.raises(ValueError):
        fermionic_partial_sum(lambda xi: 1, 7, CTX3)


def test_functional_equation():
    for f in (lambda xi: 5, lambda xi: Fraction(4) ** xi * xi, genocchi_integrand(4, Fraction(1, 2), 4)):
        for N in range(5):
            assert functional_equation_check(f, N, CTX3) == 0
    f = lambda xi: Fraction(4) ** xi * xi
    for N in range(1, 6):
        assert vp(f(3 ** N) - f(0), 3) >= N


def test_fast_sum_matches_generic():
    for n in (1, 2, 5):
        for x0 in (Fraction(0), Fraction(1), Fraction(2, 5)):
            for N in range(1, 4):
                generic = n * fermionic_partial_sum(genocchi_integrand(n, x0, CTX3.q0), N, CTX3)
                assert integral_partial_sum(n, x0, N, CTX3) == generic


def test_g2_targets():
    assert genocchi_poly(2).evaluate(0, 0, 4) == Fraction(-16, 25)
    assert genocchi_poly(2).evaluate(1, 0, 4) == Fraction(4, 25)
    vals = [integral_vs_recurrence(2, 0, N, CTX3) for N in range(1, 7)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_n1_geometric():
    for N in range(1, 6):
        assert integral_vs_recurrence(1, 0, N, CTX3) >= N


def test_valuation_can_drop():
    # a frozen counterexample to "monotone in N": the level-4 error is less divisible by 3 than level 3
    vals = [row.valuation for row in convergence_table(6, 0, 6, CTX3)]
    assert vals == [3, 5, 9, 8, 9, 10]
    assert all(v >= N for N, v in enumerate(vals, start=1))


def test_slack_table_contexts():
    assert set(EXPECTED_SLACK) == {(3, Fraction(4)), (5, Fraction(6))}
