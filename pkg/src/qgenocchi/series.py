"""Truncated power series in ``t`` and the generating-function oracle.

The oracle expands ``2t e^{xt} / (q e^t + 1)`` directly and never calls the
recurrence in :mod:`qgenocchi.core`; agreement between the two is therefore
an independent check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebra import PolyXY, RatFuncQ, Scalar

__all__ = ["TruncSeries", "exp_xt", "genocchi_from_series", "classical_genocchi"]


def _add(a, b):
    if a is None:
        return b
    return a + b


class TruncSeries:
    """Power series known modulo ``t^(order+1)``.

    Coefficients may be ``Fraction``, ``RatFuncQ`` or ``PolyXY``; only ring
    operations are used, plus division by the constant term in
    :meth:`reciprocal`.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("series order must be nonnegative")
        cs = list(coeffs[: order + 1])
        cs.extend([Fraction(0)] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    def __repr__(self) -> str:
        return f"TruncSeries(order={self.order}, coeffs={list(self.coeffs)!r})"

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def _match(self, other: TruncSeries) -> int:
        return min(self.order, other.order)

    def __add__(self, other: TruncSeries) -> TruncSeries:
        n = self._match(other)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        n = self._match(other)
        return TruncSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> TruncSeries:
        return TruncSeries([-c for c in self.coeffs], self.order)

    def scale(self, c) -> TruncSeries:
        return TruncSeries([a * c for a in self.coeffs], self.order)

    def __mul__(self, other) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        n = self._match(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for m in range(n + 1):
            acc = None
            for k in range(m + 1):
                if not a[k] or not b[m - k]:
                    continue
                acc = _add(acc, a[k] * b[m - k])
            out.append(Fraction(0) if acc is None else acc)
        return TruncSeries(out, n)

    def reciprocal(self) -> TruncSeries:
        """``b_0 = 1/a_0``, ``b_n = -b_0 * sum_{k=1..n} a_k b_{n-k}``."""
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        b0 = 1 / a[0]
        b = [b0]
        for m in range(1, self.order + 1):
            acc = None
            for k in range(1, m + 1):
                if not a[k] or not b[m - k]:
                    continue
                acc = _add(acc, a[k] * b[m - k])
            b.append(Fraction(0) if acc is None else -(acc * b0))
        return TruncSeries(b, self.order)


def exp_xt(order: int) -> TruncSeries:
    """``e^{xt}`` with coefficients ``x^n / n!`` in Q[x]."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncSeries(
        [PolyXY.from_x_coeffs([0] * n + [Fraction(1, math.factorial(n))]) for n in range(order + 1)],
        order,
    )


def _exp_scalar(c, order: int) -> TruncSeries:
    """``e^{ct}`` for a scalar ``c``."""
    return TruncSeries([c ** n / math.factorial(n) for n in range(order + 1)], order)


def _x_free_part(n_max: int, q) -> TruncSeries:
    """``2t / (q e^t + 1)`` to order ``n_max``."""
    denom = TruncSeries(
        [q + 1] + [q / math.factorial(n) for n in range(1, n_max + 1)], n_max
    )
    two_t = TruncSeries([0, 2] if n_max >= 1 else [0], n_max)
    return two_t * denom.reciprocal()


def genocchi_from_series(n_max: int, q0: Scalar | None = None, x0: Scalar | None = None) -> list:
    """``[n! * [t^n] 2t e^{xt} / (q e^t + 1) for n = 0..n_max]``.

    With ``x0`` omitted the entries are ``PolyXY`` in ``x``; with ``x0`` given
    they are scalars.  ``q`` stays symbolic unless ``q0`` is given.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    q = RatFuncQ.q() if q0 is None else Fraction(q0)
    head = _x_free_part(n_max, q)
    if x0 is None:
        series = TruncSeries([PolyXY.constant(c) for c in head.coeffs], n_max) * exp_xt(n_max)
        return [PolyXY.coerce(c * math.factorial(n)) for n, c in enumerate(series.coeffs)]
    series = head * _exp_scalar(Fraction(x0), n_max)
    return [c * math.factorial(n) for n, c in enumerate(series.coeffs)]


def classical_genocchi(n_max: int) -> list[Fraction]:
    """Classical Genocchi numbers, from ``2t / (e^t + 1)``."""
    return [Fraction(c) for c in genocchi_from_series(n_max, q0=1, x0=0)]
