"""Floating-point and exact checks of the analytic representations.

* the alternating q-zeta series, in the x-free form and in the Hurwitz form
  ``2 sum_{n>=0} (-q)^n (n + x)^(-s)``;
* exact values at ``s = -m`` in Q(q) and Q(q)[x], built with ``q d/dq``;
* the Cauchy coefficient formula evaluated by the trapezoidal rule on a circle;
* the derivative-at-zero formula by central differences and Richardson
  extrapolation.

Exact and floating values meet only in explicit comparisons.
"""

from __future__ import annotations

import cmath
import math
import threading
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .algebra import PolyQ, PolyXY, RatFuncQ, binomial, qbracket
from .core import genocchi_poly, genocchi_poly_at

__all__ = [
    "ConvergenceError",
    "CancellationWarning",
    "ZetaParams",
    "ZetaResult",
    "zeta_series",
    "zeta_series_detail",
    "polylog_neg_coeffs",
    "polylog_neg_at",
    "zeta_neg_exact",
    "hurwitz_neg_exact",
    "interpolation_residual",
    "generating_function",
    "singularity_distance",
    "cauchy_contour",
    "cauchy_contour_detail",
    "exact_value",
    "derivative_limit",
]

EULER_THRESHOLD = 0.6
CONTOUR_DPS = 50


class ConvergenceError(ArithmeticError):
    """A numeric series or quadrature did not reach its tolerance."""


class CancellationWarning(RuntimeWarning):
    """Successive Richardson extrapolants moved apart instead of settling."""


@dataclass(frozen=True)
class ZetaParams:
    q0: float
    x0: float = 0.0
    tail_terms: int = 200_000
    tolerance: float = 1e-15

    def __post_init__(self):
        if not 0.0 < self.q0 < 1.0:
            raise ValueError(f"q0 must lie in (0, 1), got {self.q0}")
        if self.x0 < 0:
            raise ValueError("x0 must be nonnegative")


@dataclass(frozen=True)
class ZetaResult:
    value: complex
    terms: int
    tail_bound: float
    method: str


def _csum(values: Sequence[complex]) -> complex:
    # fsum is exactly rounded, so the result does not depend on term order
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _term(n: int, s: complex, q0: float, x0: float) -> complex:
    base = n + x0
    mag = q0 ** n
    if s == 0:
        return complex(mag)
    if s.imag == 0 and s.real == int(s.real) and s.real <= 0:
        return complex(mag * base ** int(-s.real))
    return mag * cmath.exp(-s * math.log(base))


def zeta_series_detail(s: complex, params: ZetaParams, variant: str = "printed") -> ZetaResult:
    """Sum ``2 sum (-1)^n q^n (n + x)^(-s)`` and report a bound on what was left out.

    ``printed`` ignores ``x`` and starts at ``n = 1``.  ``hurwitz`` starts at
    ``n = 0`` (or 1 when ``x0 == 0``).  Above ``q0 = 0.6`` the tail is summed
    with the Euler transformation.
    """
    if variant not in ("printed", "hurwitz"):
        raise ValueError(f"unknown variant {variant!r}")
    s = complex(s)
    q0 = float(params.q0)
    x0 = 0.0 if variant == "printed" else float(params.x0)
    start = 1 if variant == "printed" or x0 == 0 else 0
    if q0 > EULER_THRESHOLD:
        value, terms, bound = _euler_sum(s, q0, x0, start, params)
        method = "euler"
    else:
        value, terms, bound = _plain_sum(s, q0, x0, start, params)
        method = "plain"
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConvergenceError("zeta series produced a non-finite value")
    return ZetaResult(2 * value, terms, 2 * bound, method)


def zeta_series(s: complex, params: ZetaParams, variant: str = "printed") -> complex:
    return zeta_series_detail(s, params, variant).value


def _plain_sum(s, q0, x0, start, params):
    neg_sigma = max(0.0, -s.real)
    terms: list[complex] = []
    n = start
    while True:
        a = _term(n, s, q0, x0)
        # terms beyond n shrink at least by ratio r from here on
        r = q0 * (1.0 + 1.0 / (n + x0)) ** neg_sigma if n + x0 > 0 else 1.0
        if r < 1.0:
            bound = abs(a) / (1.0 - r)
            if bound < params.tolerance:
                return _csum(terms), len(terms), bound
        if len(terms) >= params.tail_terms:
            raise ConvergenceError(
                f"tail bound {abs(a):.3e} still above tolerance after {params.tail_terms} terms"
            )
        terms.append(a if n % 2 == 0 else -a)
        n += 1


def _euler_sum(s, q0, x0, start, params, head: int = 10, max_diffs: int = 400):
    """Direct head, then ``sum_k (-1)^k Delta^k b_0 / 2^(k+1)`` for the tail."""
    head_terms = [_term(n, s, q0, x0) * (1 if n % 2 == 0 else -1) for n in range(start, start + head)]
    first = start + head
    row = [_term(first + j, s, q0, x0) for j in range(max_diffs + 1)]
    pieces: list[complex] = []
    small = 0
    rising = 0
    best = math.inf
    for k in range(max_diffs):
        piece = row[0] / 2 ** (k + 1) * (1 if k % 2 == 0 else -1)
        pieces.append(piece)
        size = abs(piece)
        scale = max(1.0, abs(_csum(head_terms)), abs(_csum(pieces)))
        best = min(best, size)
        if size < params.tolerance * scale:
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        # past the roundoff floor the differences only grow again
        rising = rising + 1 if size > best else 0
        if rising >= 5:
            pieces = pieces[: len(pieces) - rising]
            break
        row = [row[j + 1] - row[j] for j in range(len(row) - 1)]
    bound = best
    if bound > 1e-6 * max(1.0, abs(_csum(pieces))):
        raise ConvergenceError(f"Euler transformation did not settle (last correction {bound:.3e})")
    sign = 1 if first % 2 == 0 else -1
    tail = _csum(pieces) * sign
    return _csum(head_terms + [tail]), head + len(pieces), bound


# ---------------------------------------------------------------------------
# exact values at negative integers


class _PolylogMemo:
    def __init__(self):
        self._lock = threading.Lock()
        q = PolyQ.monomial(1)
        self._a = [-RatFuncQ(q, PolyQ([1, 1]))]

    def get(self, m: int) -> RatFuncQ:
        with self._lock:
            while len(self._a) <= m:
                self._a.append(self._a[-1].derivative() * RatFuncQ.q())
            return self._a[m]


_POLYLOG = _PolylogMemo()


def polylog_neg_coeffs(m: int) -> RatFuncQ:
    """``A_m(q) = sum_{n>=1} (-q)^n n^m`` as a rational function.

    ``A_0 = -q/(1+q)`` and ``A_m = q d/dq A_{m-1}``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _POLYLOG.get(m)


def polylog_neg_at(m: int, z: Fraction) -> Fraction:
    """``sum_{n>=1} n^m z^n`` at a rational ``z`` through Eulerian numbers.

    Uses ``z E_m(z) / (1 - z)^(m+1)`` with ``E_m`` the Eulerian polynomial;
    this shares no code with :func:`polylog_neg_coeffs`.
    """
    z = Fraction(z)
    if z == 1:
        raise ZeroDivisionError("pole at z = 1")
    if m == 0:
        return z / (1 - z)
    euler_poly = Fraction(0)
    for k in range(m):
        a_mk = sum((-1) ** j * math.comb(m + 1, j) * (k + 1 - j) ** m for j in range(k + 1))
        euler_poly += a_mk * z ** k
    return z * euler_poly / (1 - z) ** (m + 1)


def zeta_neg_exact(m: int, with_x: bool = False):
    """Exact ``zeta(-m)``: ``2 A_m`` in Q(q), or the Hurwitz form in Q(q)[x]."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if not with_x:
        return polylog_neg_coeffs(m) * 2
    return hurwitz_neg_exact(m)


def hurwitz_neg_exact(m: int, prefactor=2) -> PolyXY:
    """``prefactor * sum_j C(m, j) x^(m-j) (A_j + [j = 0])``.

    This is ``prefactor * sum_{n>=0} (-q)^n (n + x)^m`` summed in Q(q)[x].
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    coeffs = [Fraction(0)] * (m + 1)
    for j in range(m + 1):
        a = polylog_neg_coeffs(j)
        if j == 0:
            a = a + 1
        coeffs[m - j] = a * binomial(m, j) * prefactor
    return PolyXY.from_x_coeffs(coeffs)


def interpolation_residual(m: int, prefactor: str = "2") -> PolyXY:
    """``zeta(-m, x : q) - G_{m+1,q}(x)/(m+1)`` (zero when interpolation holds).

    ``prefactor="bracket"`` uses ``[2]_q = 1 + q`` in place of 2.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if prefactor == "2":
        pref = 2
    elif prefactor == "bracket":
        pref = RatFuncQ.coerce(qbracket(2))
    else:
        raise ValueError(f"unknown prefactor {prefactor!r}")
    return hurwitz_neg_exact(m, pref) - genocchi_poly(m + 1) / (m + 1)


# ---------------------------------------------------------------------------
# contour integral and derivative formula


def generating_function(t: complex, x0: float, q0: float) -> complex:
    """``2t e^{xt} / (q e^t + 1)``."""
    return 2 * t * cmath.exp(x0 * t) / (q0 * cmath.exp(t) + 1)


def singularity_distance(q0: float) -> float:
    """Distance from 0 to the nearest zero of ``q e^t + 1`` for real ``q > 0``."""
    if q0 <= 0:
        raise ValueError("q0 must be positive")
    return math.hypot(math.log(q0), math.pi)


def cauchy_contour_detail(
    n: int, x0: float, q0: float, radius: float = 1.0, nodes: int = 64, dps: int | None = CONTOUR_DPS
):
    """Trapezoidal sum for ``n!/(2 pi i) * contour integral F(x, t) t^(-n-1) dt``.

    Returns the unrounded sum: an ``mpmath.mpc`` when ``dps`` is set, else a
    ``complex`` computed in double precision.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if nodes < 16:
        raise ValueError("at least 16 nodes are required")
    if radius <= 0:
        raise ValueError("radius must be positive")
    limit = 0.9 * singularity_distance(q0)
    if radius > limit:
        raise ValueError(
            f"radius {radius} exceeds 0.9 x distance to the nearest singularity ({limit:.6f})"
        )
    if dps is None:
        values = []
        for k in range(nodes):
            theta = 2 * math.pi * k / nodes
            t = radius * complex(math.cos(theta), math.sin(theta))
            w = radius ** (-n) * complex(math.cos(n * theta), -math.sin(n * theta))
            v = generating_function(t, x0, q0) * w
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ConvergenceError(f"non-finite integrand at node {k}")
            values.append(v)
        return _csum(values) * (math.factorial(n) / nodes)
    with mpmath.workdps(dps):
        r = mpmath.mpf(radius)
        x = mpmath.mpf(x0)
        q = mpmath.mpf(q0)
        values = []
        for k in range(nodes):
            theta = 2 * mpmath.pi * k / nodes
            t = r * mpmath.expj(theta)
            f = 2 * t * mpmath.exp(x * t) / (q * mpmath.exp(t) + 1)
            values.append(f * r ** (-n) * mpmath.expj(-n * theta))
        total = mpmath.fsum(values) * mpmath.factorial(n) / nodes
        if not mpmath.isfinite(total):
            raise ConvergenceError("non-finite contour sum")
        return +total


def cauchy_contour(
    n: int, x0: float, q0: float, radius: float = 1.0, nodes: int = 64, dps: int | None = CONTOUR_DPS
) -> complex:
    """Trapezoidal rule on ``t = radius * e^(i theta)``, rounded to a complex double.

    The integrand is O(1) on the circle while the wanted coefficient is tiny,
    so the node values are computed with ``dps`` significant digits; pass
    ``dps=None`` for a pure double-precision evaluation.
    """
    value = cauchy_contour_detail(n, x0, q0, radius, nodes, dps)
    return complex(value)


def _central_difference(f, order: int, h: float) -> float:
    total = math.fsum(
        (-1) ** j * math.comb(order, j) * f((order / 2 - j) * h) for j in range(order + 1)
    )
    return total / h ** order


def derivative_limit(n: int, x0: float, q0: float, h_schedule: Sequence[float] = (0.5, 0.25, 0.125, 0.0625)) -> float:
    """n-th t-derivative of ``2t e^{xt}/(q e^t + 1)`` at ``t = 0``.

    Central differences on each step of ``h_schedule`` are extrapolated to
    ``h = 0`` with Neville's scheme in ``h^2``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    hs = [float(h) for h in h_schedule]
    if not hs or any(h <= 0 for h in hs) or any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("h_schedule must be strictly decreasing positive steps")

    def f(t: float) -> float:
        return generating_function(complex(t), x0, q0).real

    if n == 0:
        return f(0.0)
    table: list[list[float]] = []
    diag: list[float] = []
    for i, h in enumerate(hs):
        row = [_central_difference(f, n, h)]
        for k in range(1, i + 1):
            hk2, hi2 = hs[i - k] ** 2, h ** 2
            row.append((hk2 * row[k - 1] - hi2 * table[i - 1][k - 1]) / (hk2 - hi2))
        table.append(row)
        diag.append(row[-1])
    if len(diag) >= 3:
        last, prev = abs(diag[-1] - diag[-2]), abs(diag[-2] - diag[-3])
        if last > prev and last > 1e-12 * max(1.0, abs(diag[-1])):
            warnings.warn(
                f"Richardson extrapolants diverge ({prev:.3e} -> {last:.3e}); "
                "steps may be too small for the derivative order",
                CancellationWarning,
                stacklevel=2,
            )
    return diag[-1]


def exact_value(n: int, x0, q0) -> Fraction:
    """Reference ``G_{n,q0}(x0)`` in exact arithmetic (floats converted exactly)."""
    return genocchi_poly_at(n, Fraction(x0), Fraction(q0))
