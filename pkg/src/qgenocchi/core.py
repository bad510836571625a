"""q-Genocchi numbers and polynomials from the umbral recurrence.

The numbers satisfy ``G_0 = 0`` and ``q (G + 1)^n + G_n = 2 [n = 1]`` where
``(G + 1)^n`` expands to ``sum_k C(n, k) G_k`` (the ``k = 0`` term is ``G_0``,
not 1).  Solving for ``G_n``::

    G_1 = 2 / (1 + q)
    G_n = -q / (1 + q) * sum_{k < n} C(n, k) G_k        (n >= 2)

The polynomials are ``G_n(x) = sum_l C(n, l) x^l G_{n-l}``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PolyQ, PolyXY, RatFuncQ, Scalar, binomial

__all__ = [
    "GenocchiTable",
    "genocchi_number",
    "genocchi_poly",
    "genocchi_table",
    "genocchi_numbers_at",
    "genocchi_poly_at",
    "addition_expand",
    "reflection_pair",
]


def _check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an integer")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")


@dataclass(frozen=True)
class GenocchiTable:
    max_n: int
    numbers: tuple[RatFuncQ, ...]
    polys: tuple[PolyXY, ...]


class _Memo:
    """Incrementally extended cache of symbolic numbers (single writer)."""

    def __init__(self):
        self._lock = threading.Lock()
        self._numbers: list[RatFuncQ] = [RatFuncQ()]
        self._polys: dict[int, PolyXY] = {}
        q = PolyQ.monomial(1)
        one_plus_q = PolyQ([1, 1])
        self._g1 = RatFuncQ(2, one_plus_q)
        self._factor = -RatFuncQ(q, one_plus_q)

    def numbers(self, n: int) -> list[RatFuncQ]:
        with self._lock:
            nums = self._numbers
            while len(nums) <= n:
                m = len(nums)
                if m == 1:
                    nums.append(self._g1)
                    continue
                s = RatFuncQ.sum(nums[k] * binomial(m, k) for k in range(1, m))
                nums.append(self._factor * s)
            return nums[: n + 1]

    def poly(self, n: int) -> PolyXY:
        with self._lock:
            cached = self._polys.get(n)
        if cached is not None:
            return cached
        nums = self.numbers(n)
        p = PolyXY.from_x_coeffs([nums[n - l] * binomial(n, l) for l in range(n + 1)])
        with self._lock:
            self._polys[n] = p
        return p


_MEMO = _Memo()


def genocchi_number(n: int) -> RatFuncQ:
    """Symbolic ``G_{n,q}`` in Q(q)."""
    _check_n(n)
    return _MEMO.numbers(n)[n]


def genocchi_poly(n: int) -> PolyXY:
    """Symbolic ``G_{n,q}(x)`` in Q(q)[x]."""
    _check_n(n)
    return _MEMO.poly(n)


def genocchi_table(max_n: int) -> GenocchiTable:
    _check_n(max_n)
    return GenocchiTable(
        max_n=max_n,
        numbers=tuple(_MEMO.numbers(max_n)),
        polys=tuple(genocchi_poly(n) for n in range(max_n + 1)),
    )


def genocchi_numbers_at(q0: Scalar, n_max: int, base_power: int = 1) -> list[Fraction]:
    """``G_{n,q0^d}`` for ``n <= n_max`` by the recurrence run in Q.

    This path never touches rational functions; it is the purely numeric
    counterpart of :func:`genocchi_number`.
    """
    _check_n(n_max)
    q = Fraction(q0) ** base_power
    if q == -1:
        raise ZeroDivisionError("q = -1 is a pole of every G_n with n >= 1")
    nums = [Fraction(0)]
    factor = -q / (1 + q)
    for m in range(1, n_max + 1):
        if m == 1:
            nums.append(2 / (1 + q))
        else:
            nums.append(factor * sum(binomial(m, k) * nums[k] for k in range(1, m)))
    return nums


def genocchi_poly_at(n: int, x0: Scalar, q0: Scalar, base_power: int = 1) -> Fraction:
    """``G_{n,q0^d}(x0)`` evaluated entirely in Q."""
    _check_n(n)
    nums = genocchi_numbers_at(q0, n, base_power)
    x0 = Fraction(x0)
    return sum((binomial(n, l) * x0 ** l * nums[n - l] for l in range(n + 1)), Fraction(0))


def addition_expand(n: int) -> tuple[PolyXY, PolyXY]:
    """Both sides of ``G_n(x + y) = sum_k C(n, k) G_k(x) y^(n-k)``."""
    _check_n(n)
    x, y = PolyXY.x(), PolyXY.y()
    lhs = genocchi_poly(n).compose_x(x + y)
    rhs = PolyXY()
    for k in range(n + 1):
        rhs = rhs + genocchi_poly(k) * (y ** (n - k)) * binomial(n, k)
    return lhs, rhs


def reflection_pair(n: int) -> tuple[PolyXY, PolyXY]:
    """Both sides of ``q G_{n+1}(x + 1) + G_{n+1}(x) = 2 (n + 1) x^n``."""
    _check_n(n)
    x = PolyXY.x()
    g = genocchi_poly(n + 1)
    lhs = g.compose_x(x + 1) * RatFuncQ.q() + g
    rhs = (x ** n) * (2 * (n + 1))
    return lhs, rhs
