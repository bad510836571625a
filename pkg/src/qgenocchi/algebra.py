"""Exact scalar, polynomial and rational-function arithmetic.

Scalars are :class:`fractions.Fraction`.  On top of them live

* :class:`PolyQ`    -- dense univariate polynomials in ``q`` over Q,
* :class:`RatFuncQ` -- reduced quotients of two ``PolyQ`` (monic denominator),
* :class:`PolyXY`   -- dense polynomials in ``x`` and ``y`` whose coefficients
  are field elements (``RatFuncQ`` for symbolic ``q``, ``Fraction`` once ``q``
  has been specialized).

Every value is immutable.  Canonical forms are maintained on construction so
structural equality coincides with mathematical equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "PoleError",
    "PolyQ",
    "RatFuncQ",
    "PolyXY",
    "Scalar",
    "qbracket",
    "binomial",
    "ratfunc_arith",
    "ratfunc_derivative",
    "specialize_q",
    "parse_rational",
    "render_rational",
]

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PoleError(ZeroDivisionError):
    """A denominator vanished at the requested specialization point."""


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def render_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``a/b`` or an integer.  Decimal and float syntax is rejected."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r} (expected 'a/b' or an integer)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Fraction(num, den)


def _primitive_int(coeffs) -> list[int]:
    """Scale to integer coefficients with content 1 and positive lead."""
    cs = list(coeffs)
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        return []
    lcm = 1
    for c in cs:
        d = c.denominator if isinstance(c, Fraction) else 1
        lcm = lcm * d // math.gcd(lcm, d)
    ints = [int(c * lcm) for c in cs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
        if g == 1:
            break
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _to_ints(coeffs) -> tuple[list[int], int]:
    """Write Fraction coefficients as ``ints / den`` with one common ``den``."""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_ints(ints: list[int], den: int) -> list[Fraction]:
    if den == 1:
        return [Fraction(c) for c in ints]
    return [Fraction(c, den) for c in ints]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (``lc(b)^k * a mod b``)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        while r and not r[-1]:
            r.pop()
    return r


# ---------------------------------------------------------------------------
# PolyQ


class PolyQ:
    """Dense polynomial in ``q``; ``coeffs[i]`` multiplies ``q**i``.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree ``-1``.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, cs: list[Fraction]) -> PolyQ:
        # cs must already hold Fractions; trailing zeros are stripped here
        while cs and not cs[-1]:
            cs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(cs)
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: Scalar) -> PolyQ:
        return cls._raw([_frac(c)])

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> PolyQ:
        return cls._raw([_ZERO] * k + [_frac(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((_frac(other),) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"PolyQ({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def __neg__(self) -> PolyQ:
        return PolyQ._raw([-c for c in self.coeffs])

    def __add__(self, other) -> PolyQ:
        if not isinstance(other, PolyQ):
            other = PolyQ.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> PolyQ:
        if not isinstance(other, PolyQ):
            other = PolyQ.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> PolyQ:
        return PolyQ.constant(other) - self

    def scale(self, c: Scalar) -> PolyQ:
        c = _frac(c)
        if not c:
            return PolyQ()
        return PolyQ._raw([c * a for a in self.coeffs])

    def __mul__(self, other) -> PolyQ:
        if not isinstance(other, PolyQ):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        if len(a) == 1:
            return other.scale(a[0])
        if len(b) == 1:
            return self.scale(b[0])
        ia, da = _to_ints(a)
        ib, db = _to_ints(b)
        out = [0] * (len(ia) + len(ib) - 1)
        for i, ca in enumerate(ia):
            if not ca:
                continue
            for j, cb in enumerate(ib):
                out[i + j] += ca * cb
        return PolyQ._raw(_from_ints(out, da * db))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyQ:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyQ.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, other: PolyQ) -> tuple[PolyQ, PolyQ]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return PolyQ(), self
        b = other.coeffs
        if other.lead in (1, -1) and all(c.denominator == 1 for c in b) and all(
            c.denominator == 1 for c in rem
        ):
            return self._int_divmod(other)
        inv_lead = 1 / other.lead
        quot = [_ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            quot[k] = c
            if c:
                for j in range(db):
                    rem[k + j] -= c * b[j]
            rem[k + db] = _ZERO
        return PolyQ._raw(quot), PolyQ._raw(rem[:db] if db > 0 else [])

    def _int_divmod(self, other: PolyQ) -> tuple[PolyQ, PolyQ]:
        rem = [c.numerator for c in self.coeffs]
        b = [c.numerator for c in other.coeffs]
        db = len(b) - 1
        sign = b[-1]
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * sign
            quot[k] = c
            if c:
                for j in range(db):
                    rem[k + j] -= c * b[j]
            rem[k + db] = 0
        return PolyQ._raw(_from_ints(quot, 1)), PolyQ._raw(_from_ints(rem[:db] if db > 0 else [], 1))

    def __floordiv__(self, other: PolyQ) -> PolyQ:
        return self.divmod(other)[0]

    def __mod__(self, other: PolyQ) -> PolyQ:
        return self.divmod(other)[1]

    def exact_div(self, other: PolyQ) -> PolyQ:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> PolyQ:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def gcd(self, other: PolyQ) -> PolyQ:
        """Monic gcd by Euclid over Q (gcd(0, 0) = 0)."""
        a, b = self, other
        if a.degree < b.degree:
            a, b = b, a
        if not b:
            return a.monic()
        if b.degree == 0:
            return PolyQ.constant(1)
        # primitive remainder sequence over Z avoids Fraction overhead
        ia, ib = _primitive_int(a.coeffs), _primitive_int(b.coeffs)
        while ib:
            if len(ib) == 1:
                return PolyQ.constant(1)
            ia, ib = ib, _primitive_int(_int_prem(ia, ib))
        return PolyQ(ia).monic()

    def __call__(self, q0):
        """Horner evaluation at any value supporting ``+`` and ``*``."""
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * q0 + c
        return acc

    def derivative(self) -> PolyQ:
        return PolyQ._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose_power(self, d: int) -> PolyQ:
        """Substitute ``q -> q**d``."""
        if d < 1:
            raise ValueError("power must be positive")
        if d == 1 or len(self.coeffs) <= 1:
            return self
        out = [_ZERO] * ((len(self.coeffs) - 1) * d + 1)
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return PolyQ._raw(out)

    def render(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = render_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{render_rational(a)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)


# ---------------------------------------------------------------------------
# RatFuncQ


class RatFuncQ:
    """Element of Q(q) stored as ``num/den`` with gcd 1 and ``den`` monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if not isinstance(num, PolyQ):
            num = PolyQ.constant(num)
        if not isinstance(den, PolyQ):
            den = PolyQ.constant(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self._set(PolyQ(), PolyQ.constant(1))
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.lead
        if lc != 1:
            num = num.scale(1 / lc)
            den = den.scale(1 / lc)
        self._set(num, den)

    def _set(self, num: PolyQ, den: PolyQ) -> None:
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: PolyQ, den: PolyQ) -> RatFuncQ:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def q(cls) -> RatFuncQ:
        return cls._raw(PolyQ.monomial(1), PolyQ.constant(1))

    @classmethod
    def coerce(cls, value) -> RatFuncQ:
        if isinstance(value, RatFuncQ):
            return value
        if isinstance(value, PolyQ):
            return cls._raw(value, PolyQ.constant(1))
        return cls._raw(PolyQ.constant(_frac(value)), PolyQ.constant(1))

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.degree == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.lead

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFuncQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, PolyQ)):
            return self == RatFuncQ.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.num.lead)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"RatFuncQ({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def render(self) -> str:
        if self.den.degree == 0:
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __neg__(self) -> RatFuncQ:
        return RatFuncQ._raw(-self.num, self.den)

    def __add__(self, other) -> RatFuncQ:
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction, PolyQ)):
                other = RatFuncQ.coerce(other)
            else:
                return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            t = a + c
            if not t:
                return RatFuncQ()
            if b.degree == 0:
                return RatFuncQ._raw(t, b)
            g = t.gcd(b)
            if g.degree == 0:
                return RatFuncQ._raw(t, b)
            return RatFuncQ._raw(t.exact_div(g), b.exact_div(g))
        if b.degree == 0:
            return RatFuncQ._raw(a * d + c, d)
        if d.degree == 0:
            return RatFuncQ._raw(a + c * b, b)
        # Henrici: with g = gcd(b, d) only gcd(t, g) can survive
        g = b.gcd(d)
        if g.degree == 0:
            return RatFuncQ._raw(a * d + b * c, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        t = a * d1 + c * b1
        if not t:
            return RatFuncQ()
        g2 = t.gcd(g)
        if g2.degree > 0:
            t = t.exact_div(g2)
            g = g.exact_div(g2)
        return RatFuncQ._raw(t, b1 * d1 * g)

    __radd__ = __add__

    def __sub__(self, other) -> RatFuncQ:
        if not isinstance(other, RatFuncQ):
            if isinstance(other, (int, Fraction, PolyQ)):
                other = RatFuncQ.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFuncQ:
        return RatFuncQ.coerce(other) - self

    def __mul__(self, other) -> RatFuncQ:
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                return RatFuncQ()
            return RatFuncQ._raw(self.num.scale(other), self.den)
        if isinstance(other, PolyQ):
            other = RatFuncQ.coerce(other)
        if not isinstance(other, RatFuncQ):
            return NotImplemented
        if not self.num or not other.num:
            return RatFuncQ()
        if other.is_constant():
            return RatFuncQ._raw(self.num.scale(other.num.lead), self.den)
        if self.is_constant():
            return RatFuncQ._raw(other.num.scale(self.num.lead), other.den)
        a, b, c, d = self.num, self.den, other.num, other.den
        g1 = a.gcd(d) if d.degree > 0 else PolyQ.constant(1)
        g2 = c.gcd(b) if b.degree > 0 else PolyQ.constant(1)
        if g1.degree > 0:
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2.degree > 0:
            c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lc = den.lead
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return RatFuncQ._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFuncQ:
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        lc = self.num.lead
        return RatFuncQ._raw(self.den.scale(1 / lc), self.num.scale(1 / lc))

    def __truediv__(self, other) -> RatFuncQ:
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                raise ZeroDivisionError("division of a rational function by zero")
            return RatFuncQ._raw(self.num.scale(1 / other), self.den)
        if isinstance(other, PolyQ):
            other = RatFuncQ.coerce(other)
        if not isinstance(other, RatFuncQ):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> RatFuncQ:
        return RatFuncQ.coerce(other) / self

    def __pow__(self, k: int) -> RatFuncQ:
        if k < 0:
            return self.inverse() ** (-k)
        # numerator and denominator powers stay coprime
        return RatFuncQ._raw(self.num ** k, self.den ** k)

    def derivative(self) -> RatFuncQ:
        """Formal d/dq by the quotient rule."""
        if self.den.degree == 0:
            return RatFuncQ._raw(self.num.derivative(), self.den)
        top = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFuncQ(top, self.den * self.den)

    def compose_power(self, d: int) -> RatFuncQ:
        """Substitute ``q -> q**d`` (coprimality is preserved)."""
        return RatFuncQ._raw(self.num.compose_power(d), self.den.compose_power(d))

    def __call__(self, q0: Scalar) -> Fraction:
        q0 = _frac(q0)
        d = self.den(q0)
        if not d:
            raise PoleError(f"pole at q = {render_rational(q0)} in {self.render()}")
        return self.num(q0) / d

    @staticmethod
    def sum(terms: Iterable[RatFuncQ]) -> RatFuncQ:
        """Sum many terms, merging numerators over identical denominators first."""
        groups: dict[PolyQ, PolyQ] = {}
        for t in terms:
            if not isinstance(t, RatFuncQ):
                t = RatFuncQ.coerce(t)
            if not t.num:
                continue
            if t.den in groups:
                groups[t.den] = groups[t.den] + t.num
            else:
                groups[t.den] = t.num
        groups = {d: n for d, n in groups.items() if n}
        if not groups:
            return RatFuncQ()
        if len(groups) == 1:
            (den, num), = groups.items()
            return RatFuncQ(num, den)
        # one common denominator, one final reduction
        dens = sorted(groups, key=lambda p: (p.degree, p.coeffs))
        lcm = dens[0]
        for d in dens[1:]:
            g = lcm.gcd(d)
            lcm = lcm * (d if g.degree == 0 else d.exact_div(g))
        total = PolyQ()
        for d in dens:
            total = total + groups[d] * lcm.exact_div(d)
        return RatFuncQ(total, lcm)


def qbracket(n: int) -> PolyQ:
    """``[n]_q = 1 + q + ... + q^(n-1)``, the cleared form of (1-q^n)/(1-q)."""
    if n < 0:
        raise ValueError("qbracket is defined here for n >= 0")
    return PolyQ._raw([_ONE] * n)


def binomial(n: int, k: int) -> Fraction:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return _ZERO
    return Fraction(math.comb(n, k))


def ratfunc_arith(a: RatFuncQ, b: RatFuncQ, op: str) -> RatFuncQ:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def ratfunc_derivative(f: RatFuncQ) -> RatFuncQ:
    return RatFuncQ.coerce(f).derivative()


# ---------------------------------------------------------------------------
# PolyXY


def _is_zero(c) -> bool:
    return not c


def _coef_render(c) -> str:
    if isinstance(c, RatFuncQ):
        return c.render()
    return render_rational(_frac(c))


def _is_scalar(c) -> bool:
    return not isinstance(c, RatFuncQ) or c.is_constant()


def _coef_is_atomic(c) -> bool:
    """True when the rendered coefficient needs no parentheses before ``*``."""
    if isinstance(c, RatFuncQ):
        if c.den.degree > 0:
            return False
        nonzero = sum(1 for a in c.num.coeffs if a)
        if nonzero != 1:
            return False
        return c.num.lead.denominator == 1 or c.num.degree == 0
    return _frac(c).denominator == 1


class PolyXY:
    """Dense polynomial in ``x`` and ``y`` over a coefficient field.

    ``rows[i][j]`` multiplies ``x**i * y**j``.  Rows carry no trailing zero
    coefficients and the row list carries no trailing empty row, so the zero
    polynomial is ``rows == ()``.  Coefficients are ``RatFuncQ`` or ``Fraction``.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable] = ()):
        trimmed = []
        for row in rows:
            r = list(row)
            while r and _is_zero(r[-1]):
                r.pop()
            trimmed.append(tuple(r))
        while trimmed and not trimmed[-1]:
            trimmed.pop()
        self.rows: tuple[tuple, ...] = tuple(trimmed)

    @classmethod
    def constant(cls, c) -> PolyXY:
        return cls([[c]])

    @classmethod
    def x(cls) -> PolyXY:
        return cls([[], [_ONE]])

    @classmethod
    def y(cls) -> PolyXY:
        return cls([[_ZERO, _ONE]])

    @classmethod
    def from_x_coeffs(cls, coeffs: Sequence) -> PolyXY:
        """Univariate ``sum coeffs[i] * x**i``."""
        return cls([[c] for c in coeffs])

    @classmethod
    def coerce(cls, value) -> PolyXY:
        if isinstance(value, PolyXY):
            return value
        if isinstance(value, (int, Fraction, RatFuncQ)):
            return cls.constant(value)
        if isinstance(value, PolyQ):
            return cls.constant(RatFuncQ.coerce(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to PolyXY")

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.rows

    def __bool__(self) -> bool:
        return bool(self.rows)

    @property
    def x_degree(self) -> int:
        return len(self.rows) - 1

    @property
    def y_degree(self) -> int:
        return max((len(r) for r in self.rows), default=0) - 1

    def coeff(self, i: int, j: int = 0):
        if i < len(self.rows) and j < len(self.rows[i]):
            return self.rows[i][j]
        return _ZERO

    def terms(self):
        """Yield ``(i, j, coefficient)`` for nonzero coefficients."""
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if not _is_zero(c):
                    yield i, j, c

    def is_constant(self) -> bool:
        return len(self.rows) <= 1 and all(len(r) <= 1 for r in self.rows)

    def constant_term(self):
        return self.coeff(0, 0)

    def x_coeffs(self) -> list:
        """Coefficient list in ``x`` of a polynomial free of ``y``."""
        if self.y_degree > 0:
            raise ValueError("polynomial depends on y")
        return [r[0] if r else _ZERO for r in self.rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyXY):
            if isinstance(other, (int, Fraction, RatFuncQ, PolyQ)):
                other = PolyXY.coerce(other)
            else:
                return NotImplemented
        if len(self.rows) != len(other.rows):
            return False
        for r1, r2 in zip(self.rows, other.rows):
            if len(r1) != len(r2):
                return False
            for a, b in zip(r1, r2):
                if not (a == b):
                    return False
        return True

    def __hash__(self) -> int:
        return hash(tuple(tuple(hash(c) for c in r) for r in self.rows))

    def __repr__(self) -> str:
        return f"PolyXY({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def render(self) -> str:
        """Deterministic text: terms by descending x-degree, then y-degree."""
        parts: list[str] = []
        for i in range(len(self.rows) - 1, -1, -1):
            row = self.rows[i]
            for j in range(len(row) - 1, -1, -1):
                c = row[j]
                if _is_zero(c):
                    continue
                mono = "*".join(
                    m
                    for m in (
                        "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                        "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                    )
                    if m
                )
                text = _coef_render(c)
                neg = text.startswith("-") and (_coef_is_atomic(c) or (not mono and _is_scalar(c)))
                if neg:
                    text = text[1:]
                if mono:
                    if text == "1":
                        body = mono
                    elif _coef_is_atomic(c):
                        body = f"{text}*{mono}"
                    else:
                        body = f"({text})*{mono}"
                else:
                    body = text
                if not parts:
                    parts.append(f"-{body}" if neg else body)
                else:
                    parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts) if parts else "0"

    # -- arithmetic --------------------------------------------------------

    def __neg__(self) -> PolyXY:
        return PolyXY([[-c for c in r] for r in self.rows])

    def __add__(self, other) -> PolyXY:
        if not isinstance(other, PolyXY):
            if isinstance(other, (int, Fraction, RatFuncQ, PolyQ)):
                other = PolyXY.coerce(other)
            else:
                return NotImplemented
        a, b = self.rows, other.rows
        if len(a) < len(b):
            a, b = b, a
        out = [list(r) for r in a]
        for i, rb in enumerate(b):
            ra = out[i]
            if len(ra) < len(rb):
                ra.extend([_ZERO] * (len(rb) - len(ra)))
            for j, c in enumerate(rb):
                ra[j] = ra[j] + c
        return PolyXY(out)

    __radd__ = __add__

    def __sub__(self, other) -> PolyXY:
        if not isinstance(other, PolyXY):
            if isinstance(other, (int, Fraction, RatFuncQ, PolyQ)):
                other = PolyXY.coerce(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PolyXY:
        return PolyXY.coerce(other) - self

    def scale(self, c) -> PolyXY:
        if _is_zero(c):
            return PolyXY()
        return PolyXY([[a * c for a in r] for r in self.rows])

    def __mul__(self, other) -> PolyXY:
        if isinstance(other, (int, Fraction, RatFuncQ)):
            return self.scale(other)
        if isinstance(other, PolyQ):
            return self.scale(RatFuncQ.coerce(other))
        if not isinstance(other, PolyXY):
            return NotImplemented
        if not self.rows or not other.rows:
            return PolyXY()
        if other.is_constant():
            return self.scale(other.constant_term())
        if self.is_constant():
            return other.scale(self.constant_term())
        # accumulate term lists so each output coefficient is summed once
        acc: dict[tuple[int, int], list] = {}
        b_terms = list(other.terms())
        for i, j, ca in self.terms():
            for k, l, cb in b_terms:
                acc.setdefault((i + k, j + l), []).append(ca * cb)
        return PolyXY._from_term_lists(acc)

    __rmul__ = __mul__

    @staticmethod
    def _from_term_lists(acc: dict) -> PolyXY:
        if not acc:
            return PolyXY()
        nx = max(i for i, _ in acc) + 1
        ny = max(j for _, j in acc) + 1
        grid = [[_ZERO] * ny for _ in range(nx)]
        for (i, j), vals in acc.items():
            grid[i][j] = _sum_coeffs(vals)
        return PolyXY(grid)

    def __truediv__(self, other) -> PolyXY:
        if isinstance(other, PolyXY):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("PolyXY division requires a nonzero constant divisor")
            other = other.constant_term()
        if isinstance(other, PolyQ):
            other = RatFuncQ.coerce(other)
        if isinstance(other, (int, Fraction)):
            other = _frac(other)
            if not other:
                raise ZeroDivisionError("PolyXY division by zero")
            return self.scale(1 / other)
        if isinstance(other, RatFuncQ):
            return self.scale(other.inverse())
        return NotImplemented

    def __rtruediv__(self, other) -> PolyXY:
        if not self.is_constant() or self.is_zero():
            raise ZeroDivisionError("PolyXY division requires a nonzero constant divisor")
        c = self.constant_term()
        return PolyXY.coerce(other).scale(1 / c if not isinstance(c, RatFuncQ) else c.inverse())

    def __pow__(self, k: int) -> PolyXY:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = PolyXY.constant(_ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- substitution ------------------------------------------------------

    def _affine_parts(self):
        """Return Fractions (a, b, c) if self == a*x + b*y + c, else None."""
        if self.x_degree > 1 or self.y_degree > 1:
            return None
        if self.coeff(1, 1):
            return None
        parts = []
        for i, j in ((1, 0), (0, 1), (0, 0)):
            c = self.coeff(i, j)
            if isinstance(c, RatFuncQ):
                if not c.is_constant() and c:
                    return None
                c = c.constant_value() if c else _ZERO
            parts.append(_frac(c))
        return tuple(parts)

    def compose_x(self, arg) -> PolyXY:
        """Substitute ``x -> arg`` in a polynomial free of ``y``.

        ``arg`` may be a scalar or a PolyXY; affine arguments with rational
        coefficients use a direct trinomial expansion.
        """
        coeffs = self.x_coeffs()
        if not isinstance(arg, PolyXY):
            arg = PolyXY.coerce(arg)
        affine = arg._affine_parts()
        if affine is None:
            acc = PolyXY()
            for c in reversed(coeffs):
                acc = acc * arg + PolyXY.constant(c)
            return acc
        a, b, c0 = affine
        terms: dict[tuple[int, int], list] = {}
        for n, cn in enumerate(coeffs):
            if _is_zero(cn):
                continue
            for u in range(n + 1):
                au = a ** u
                if u and not au:
                    continue
                for v in range(n - u + 1):
                    w = n - u - v
                    bv = b ** v
                    if v and not bv:
                        continue
                    cw = c0 ** w  # 0**0 == 1
                    if w and not cw:
                        continue
                    mult = Fraction(math.factorial(n), math.factorial(u) * math.factorial(v) * math.factorial(w))
                    terms.setdefault((u, v), []).append(cn * (mult * au * bv * cw))
        return PolyXY._from_term_lists(terms)

    def map_coeffs(self, fn) -> PolyXY:
        return PolyXY([[fn(c) for c in r] for r in self.rows])

    def compose_q_power(self, d: int) -> PolyXY:
        """Substitute ``q -> q**d`` in every coefficient."""
        return self.map_coeffs(lambda c: c.compose_power(d) if isinstance(c, RatFuncQ) else c)

    def specialize_q(self, q0: Scalar) -> PolyXY:
        q0 = _frac(q0)
        return self.map_coeffs(lambda c: c(q0) if isinstance(c, RatFuncQ) else _frac(c))

    def evaluate(self, x0, y0=_ZERO, q0=None):
        """Evaluate at ``x = x0, y = y0`` (and ``q = q0`` when given)."""
        p = self.specialize_q(q0) if q0 is not None else self
        total = _ZERO
        for i, j, c in p.terms():
            total = total + c * (_frac(x0) ** i) * (_frac(y0) ** j)
        return total

    def substitute_y(self, y0) -> PolyXY:
        """Set ``y = y0`` (a scalar), leaving a polynomial in ``x``."""
        y0 = _frac(y0)
        return PolyXY(
            [[_sum_coeffs([c * y0 ** j for j, c in enumerate(r) if not _is_zero(c)])] for r in self.rows]
        )


def _sum_coeffs(vals: list):
    if not vals:
        return _ZERO
    if any(isinstance(v, RatFuncQ) for v in vals):
        return RatFuncQ.sum(vals)
    return sum(vals, _ZERO)


def specialize_q(f, q0: Scalar):
    """Exact substitution ``q = q0``; raises :class:`PoleError` at poles."""
    if isinstance(f, PolyXY):
        return f.specialize_q(q0)
    if isinstance(f, PolyQ):
        return f(_frac(q0))
    if isinstance(f, RatFuncQ):
        return f(q0)
    return _frac(f)
