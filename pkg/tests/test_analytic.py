import math
import warnings
from fractions import Fraction

import mpmath
import pytest

from qgenocchi.algebra import RatFuncQ
from qgenocchi.analytic import (
    CONTOUR_DPS,
    CancellationWarning,
    ConvergenceError,
    ZetaParams,
    cauchy_contour,
    cauchy_contour_detail,
    derivative_limit,
    exact_value,
    hurwitz_neg_exact,
    interpolation_residual,
    polylog_neg_at,
    polylog_neg_coeffs,
    singularity_distance,
    zeta_neg_exact,
    zeta_series,
    zeta_series_detail,
)
from qgenocchi.core import genocchi_number, genocchi_poly

q = RatFuncQ.q()


def test_zeta_printed_s1():
    value = zeta_series(1, ZetaParams(0.5))
    assert abs(value - (-2 * math.log(1.5))) < 1e-14


def test_zeta_large_s():
    value = zeta_series(40, ZetaParams(0.3))
    assert abs(value - (-0.6)) < 1e-10


def test_zeta_hurwitz_s0():
    value = zeta_series(0, ZetaParams(0.5, 1.0), "hurwitz")
    assert abs(value - 4 / 3) < 1e-14


def test_zeta_params_guard():
    with pytest.raises(ValueError):
        ZetaParams(1.0)
    with pytest.raises(ValueError):
        zeta_series(2, ZetaParams(0.5), "other")


def test_zeta_nonconvergence():
    with pytest.raises(ConvergenceError):
        zeta_series_detail(2, ZetaParams(0.5, tail_terms=3))


def test_euler_path_used_near_one():
    res = zeta_series_detail(2, ZetaParams(0.999))
    assert res.method == "euler"
    assert abs(res.value - (-math.pi ** 2 / 6)) < 3e-3


def test_neg_exact_examples():
    assert zeta_neg_exact(1) == -2 * q / (1 + q) ** 2
    assert zeta_neg_exact(1) == genocchi_number(2) / 2
    assert zeta_neg_exact(0) == -2 * q / (1 + q)
    assert zeta_neg_exact(0) != genocchi_number(1)
    assert zeta_neg_exact(2, with_x=True) == genocchi_poly(3) / 3


def test_polylog_two_routes():
    for m in range(9):
        for z in (Fraction(-1, 2), Fraction(-3), Fraction(1, 3)):
            assert polylog_neg_coeffs(m)(-z) == polylog_neg_at(m, z)


def test_interpolation():
    for m in range(1, 13):
        assert interpolation_residual(m).is_zero()
    assert not interpolation_residual(1, "bracket").is_zero()
    with pytest.raises(ValueError):
        interpolation_residual(0)


def test_hurwitz_numeric_matches_exact():
    for m in range(7):
        exact = hurwitz_neg_exact(m).evaluate(1, 0, Fraction(1, 2))
        value = zeta_series(-m, ZetaParams(0.5, 1.0), "hurwitz")
        assert abs(value - float(exact)) < 1e-9


def test_cauchy_examples():
    assert abs(cauchy_contour(4, 0.0, 0.5) - 16 / 27) < 1e-10
    assert abs(cauchy_contour(1, 0.0, 0.5) - 4 / 3) < 1e-10
    assert abs(cauchy_contour(0, 0.3, 0.7)) < 1e-12


def test_cauchy_guards():
    with pytest.raises(ValueError):
        cauchy_contour(3, 0.0, 0.5, radius=0.95 * singularity_distance(0.5))
    with pytest.raises(ValueError):
        cauchy_contour(3, 0.0, 0.5, nodes=8)


@pytest.mark.parametrize("q0", [0.5, 0.75])
def test_cauchy_spectral_convergence(q0):
    for n in (2, 6, 10):
        ref = exact_value(n, 0, q0)
        with mpmath.workdps(CONTOUR_DPS):
            ref_mp = mpmath.mpf(ref.numerator) / ref.denominator
            errs = [abs(cauchy_contour_detail(n, 0.0, q0, 1.0, m) - ref_mp) for m in (16, 32, 64, 128)]
        assert all(b <= a / 2 for a, b in zip(errs, errs[1:]))


def test_cauchy_double_path():
    value = cauchy_contour(4, 0.0, 0.5, dps=None)
    assert abs(value - 16 / 27) < 1e-9


def test_derivative_limit():
    assert abs(derivative_limit(1, 0.0, 0.5) - 4 / 3) < 1e-6
    assert abs(derivative_limit(2, 0.0, 0.5) - (-8 / 9)) < 1e-5
    assert derivative_limit(0, 0.0, 0.5) == 0


def test_derivative_schedule_guard():
    with pytest.raises(ValueError):
        derivative_limit(2, 0.0, 0.5, (0.1, 0.2))


def test_derivative_cancellation_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        derivative_limit(8, 0.0, 0.5, (1e-2, 5e-3, 2.5e-3, 1.25e-3))
    assert any(issubclass(w.category, CancellationWarning) for w in caught)
